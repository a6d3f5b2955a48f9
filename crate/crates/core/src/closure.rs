//! Commutator and product closure of operator sets.
//!
//! Operators are vectorized row-major and accumulated in a canonical
//! [`Subspace`]. The Lie closure only brackets worklist elements against
//! the generators: by the Jacobi identity every iterated commutator is a
//! combination of left-normed ones `[g_k, [..., [g_2, g_1]]]`, so the span
//! of the worklist closed under `ad(g)` for every generator is the whole
//! Lie ring. [`pairwise_lie_closure`] computes the same span by brute
//! force and serves as its oracle.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{Field, OperatorMatrix, Scalar, Subspace};

/// Worklist elements expanded per parallel step. Fixed so the insertion
/// order, and with it the final basis, never depends on the thread count.
const CHUNK: usize = 16;

/// A tuple of square operators, one per summand of a direct sum. Brackets
/// and products act componentwise; coordinates are the concatenated
/// row-major entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectSum(Vec<OperatorMatrix>);

impl DirectSum {
    pub fn new(parts: Vec<OperatorMatrix>) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::Shape(
                "a direct sum needs at least one summand".into(),
            ));
        };
        let field = first.field();
        for p in &parts {
            if !p.is_square() {
                return Err(Error::Shape(format!(
                    "operators must be square, got {}x{}",
                    p.rows(),
                    p.cols()
                )));
            }
            if p.field() != field {
                return Err(Error::MixedField {
                    expected: field,
                    found: p.field(),
                });
            }
        }
        Ok(DirectSum(parts))
    }

    pub fn single(op: OperatorMatrix) -> Result<Self> {
        Self::new(vec![op])
    }

    pub fn parts(&self) -> &[OperatorMatrix] {
        &self.0
    }

    pub fn field(&self) -> Field {
        self.0[0].field()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.0.iter().map(OperatorMatrix::rows).collect()
    }

    pub fn coords(&self) -> Vec<Scalar> {
        self.0
            .iter()
            .flat_map(|p| p.entries().iter().cloned())
            .collect()
    }

    pub fn from_coords(field: Field, sizes: &[usize], coords: &[Scalar]) -> Result<Self> {
        let total: usize = sizes.iter().map(|n| n * n).sum();
        if coords.len() != total {
            return Err(Error::DimensionMismatch {
                expected: total,
                found: coords.len(),
            });
        }
        let mut parts = Vec::with_capacity(sizes.len());
        let mut offset = 0;
        for &n in sizes {
            let entries = coords[offset..offset + n * n].to_vec();
            parts.push(OperatorMatrix::new(field, n, n, entries)?);
            offset += n * n;
        }
        DirectSum::new(parts)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(OperatorMatrix::is_zero)
    }

    pub fn bracket(&self, other: &DirectSum) -> DirectSum {
        DirectSum(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| &(a * b) - &(b * a))
                .collect(),
        )
    }

    pub fn product(&self, other: &DirectSum) -> DirectSum {
        DirectSum(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect())
    }

    pub fn add(&self, other: &DirectSum) -> DirectSum {
        DirectSum(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// `ab - ba`.
pub fn bracket(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::Shape(format!(
            "cannot bracket {}x{} with {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    if a.field() != b.field() {
        return Err(Error::MixedField {
            expected: a.field(),
            found: b.field(),
        });
    }
    Ok(&(a * b) - &(b * a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureOptions {
    /// Worker threads for candidate generation; 1 runs inline.
    pub threads: usize,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions { threads: 1 }
    }
}

impl ClosureOptions {
    pub fn with_threads(threads: usize) -> Self {
        ClosureOptions {
            threads: threads.max(1),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClosureStats {
    /// Worklist generations (depth of the deepest expanded element, plus one).
    pub iterations: usize,
    /// Candidates computed (brackets or products).
    pub brackets: usize,
    /// Largest numerator/denominator bit length seen in an inserted vector
    /// or the final basis.
    pub peak_bits: u64,
}

/// Result of a closure run.
#[derive(Clone, Debug)]
pub struct Closure {
    pub span: Subspace,
    pub stats: ClosureStats,
    sizes: Vec<usize>,
}

impl Closure {
    /// Wraps a span obtained elsewhere, such as a cache. Stats record only
    /// the peak coefficient size.
    pub fn from_span(span: Subspace, sizes: Vec<usize>) -> Result<Self> {
        let ambient: usize = sizes.iter().map(|n| n * n).sum();
        if ambient != span.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: span.ambient_dim(),
            });
        }
        let stats = ClosureStats {
            peak_bits: span.peak_bits(),
            ..ClosureStats::default()
        };
        Ok(Closure { span, stats, sizes })
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// Sizes of the direct summands the span lives in.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// The canonical basis as direct-sum elements.
    pub fn basis_elements(&self) -> Vec<DirectSum> {
        self.span
            .basis()
            .iter()
            .map(|v| {
                DirectSum::from_coords(self.span.field(), &self.sizes, v)
                    .expect("basis vectors match the recorded sizes")
            })
            .collect()
    }

    /// The canonical basis as operator matrices. Only meaningful for a
    /// single summand; for direct sums the first summand is returned.
    pub fn basis_ops(&self) -> Vec<OperatorMatrix> {
        self.basis_elements()
            .into_iter()
            .map(|d| d.0.into_iter().next().expect("nonempty"))
            .collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Lie,
    Associative,
}

fn common_shape(gens: &[DirectSum]) -> Result<Option<(Field, Vec<usize>)>> {
    let Some(first) = gens.first() else {
        return Ok(None);
    };
    let (field, sizes) = (first.field(), first.sizes());
    for g in gens {
        if g.field() != field {
            return Err(Error::MixedField {
                expected: field,
                found: g.field(),
            });
        }
        if g.sizes() != sizes {
            return Err(Error::Shape(format!(
                "generator shapes differ: {:?} vs {:?}",
                sizes,
                g.sizes()
            )));
        }
    }
    Ok(Some((field, sizes)))
}

fn expand(kind: Kind, elem: &DirectSum, gens: &[DirectSum]) -> Vec<DirectSum> {
    match kind {
        Kind::Lie => gens.iter().map(|g| elem.bracket(g)).collect(),
        Kind::Associative => gens
            .iter()
            .flat_map(|g| [elem.product(g), g.product(elem)])
            .collect(),
    }
}

fn max_bits(v: &[Scalar]) -> u64 {
    v.iter().map(Scalar::bits).max().unwrap_or(0)
}

fn run(kind: Kind, gens: &[DirectSum], opts: ClosureOptions) -> Result<Closure> {
    let Some((field, sizes)) = common_shape(gens)? else {
        return Ok(Closure {
            span: Subspace::new(Field::Rational, 0),
            stats: ClosureStats::default(),
            sizes: Vec::new(),
        });
    };
    let ambient: usize = sizes.iter().map(|n| n * n).sum();
    let pool = if opts.threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.threads)
                .build()
                .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?,
        )
    } else {
        None
    };

    let mut span = Subspace::new(field, ambient);
    let mut stats = ClosureStats::default();
    let mut queue: VecDeque<(DirectSum, usize)> = VecDeque::new();
    for g in gens {
        let v = g.coords();
        stats.peak_bits = stats.peak_bits.max(max_bits(&v));
        if span.insert(v)? {
            queue.push_back((g.clone(), 0));
        }
    }

    while !queue.is_empty() {
        let take = queue.len().min(CHUNK);
        let batch: Vec<(DirectSum, usize)> = queue.drain(..take).collect();
        let candidates: Vec<Vec<DirectSum>> = match &pool {
            Some(pool) => pool.install(|| {
                batch
                    .par_iter()
                    .map(|(e, _)| expand(kind, e, gens))
                    .collect()
            }),
            None => batch.iter().map(|(e, _)| expand(kind, e, gens)).collect(),
        };
        for ((_, depth), cands) in batch.iter().zip(candidates) {
            stats.iterations = stats.iterations.max(depth + 1);
            for c in cands {
                stats.brackets += 1;
                if c.is_zero() {
                    continue;
                }
                let v = c.coords();
                let bits = max_bits(&v);
                if span.insert(v)? {
                    stats.peak_bits = stats.peak_bits.max(bits);
                    queue.push_back((c, depth + 1));
                }
            }
        }
    }
    stats.peak_bits = stats.peak_bits.max(span.peak_bits());
    Ok(Closure { span, stats, sizes })
}

fn singles(gens: &[OperatorMatrix]) -> Result<Vec<DirectSum>> {
    gens.iter().cloned().map(DirectSum::single).collect()
}

/// Smallest subspace containing `generators` and closed under `[a, b]`.
/// An empty generator list gives the zero subspace of a 0-dimensional
/// ambient space.
pub fn lie_closure(generators: &[OperatorMatrix], opts: ClosureOptions) -> Result<Closure> {
    run(Kind::Lie, &singles(generators)?, opts)
}

/// [`lie_closure`] for tuples of operators on a direct sum, bracketed
/// componentwise. Used for graphs of representations.
pub fn lie_closure_direct_sum(generators: &[DirectSum], opts: ClosureOptions) -> Result<Closure> {
    run(Kind::Lie, generators, opts)
}

/// Smallest subspace containing `generators` and closed under products.
/// No identity is adjoined.
pub fn assoc_closure(generators: &[OperatorMatrix], opts: ClosureOptions) -> Result<Closure> {
    run(Kind::Associative, &singles(generators)?, opts)
}

fn side_of(s: &Subspace) -> Result<usize> {
    let n = (s.ambient_dim() as f64).sqrt().round() as usize;
    if n * n != s.ambient_dim() {
        return Err(Error::Shape(format!(
            "ambient dimension {} is not a square",
            s.ambient_dim()
        )));
    }
    Ok(n)
}

/// Basis of a subspace of `n x n` operators as matrices.
pub fn subspace_ops(s: &Subspace) -> Result<Vec<OperatorMatrix>> {
    let n = side_of(s)?;
    s.basis()
        .iter()
        .map(|v| OperatorMatrix::new(s.field(), n, n, v.clone()))
        .collect()
}

/// `[S, S]`: the span of commutators of pairs of basis elements.
pub fn derived_span(s: &Subspace) -> Result<Subspace> {
    let ops = subspace_ops(s)?;
    let mut out = Subspace::new(s.field(), s.ambient_dim());
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            out.insert(bracket(&ops[i], &ops[j])?.into_entries())?;
        }
    }
    Ok(out)
}

/// Brute-force Lie closure: bracket every pair of basis elements until
/// nothing new appears. Quadratic in the dimension per round; meant for
/// small instances only.
pub fn pairwise_lie_closure(generators: &[DirectSum]) -> Result<Subspace> {
    let Some((field, sizes)) = common_shape(generators)? else {
        return Ok(Subspace::new(Field::Rational, 0));
    };
    let ambient: usize = sizes.iter().map(|n| n * n).sum();
    let mut span = Subspace::spanned_by(field, ambient, generators.iter().map(DirectSum::coords))?;
    loop {
        let basis: Vec<DirectSum> = span
            .basis()
            .iter()
            .map(|v| DirectSum::from_coords(field, &sizes, v))
            .collect::<Result<_>>()?;
        let mut grew = false;
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                grew |= span.insert(basis[i].bracket(&basis[j]).coords())?;
            }
        }
        if !grew {
            return Ok(span);
        }
    }
}

/// Whether `[b, g]` lies in the span for every basis element `b` and
/// generator `g`.
pub fn is_closed_under_generators(closure: &Closure, generators: &[DirectSum]) -> Result<bool> {
    for b in closure.basis_elements() {
        for g in generators {
            if !closure.span.contains(&b.bracket(g).coords())? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `b g` and `g b` lie in the span for every basis element `b` and
/// generator `g`.
pub fn is_closed_under_products(closure: &Closure, generators: &[DirectSum]) -> Result<bool> {
    for b in closure.basis_elements() {
        for g in generators {
            if !closure.span.contains(&b.product(g).coords())?
                || !closure.span.contains(&g.product(&b).coords())?
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Brackets `samples` random pairs of basis elements (all pairs when there
/// are fewer) and checks each lands in the span.
pub fn spot_check_pairs(closure: &Closure, samples: usize, seed: u64) -> Result<bool> {
    let basis = closure.basis_elements();
    let n = basis.len();
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    if pairs.len() > samples {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        pairs.shuffle(&mut rng);
        pairs.truncate(samples);
        // Keep at least one pair touching the last basis element.
        if n >= 2 {
            let i = rng.gen_range(0..n - 1);
            pairs.push((i, n - 1));
        }
    }
    for (i, j) in pairs {
        if !closure
            .span
            .contains(&basis[i].bracket(&basis[j]).coords())?
        {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn unit(n: usize, r: usize, c: usize) -> OperatorMatrix {
        let mut m = OperatorMatrix::zeros(Q, n, n);
        m.set(r, c, Scalar::one(Q));
        m
    }

    #[test]
    fn bracket_basics() {
        let m = OperatorMatrix::from_i64(Q, &[&[1, 2], &[3, 4]]);
        assert!(bracket(&m, &m).unwrap().is_zero());
        let h = bracket(&unit(2, 0, 1), &unit(2, 1, 0)).unwrap();
        assert_eq!(h, OperatorMatrix::from_i64(Q, &[&[1, 0], &[0, -1]]));
        assert!(bracket(&m, &OperatorMatrix::identity(Q, 3)).is_err());
        assert!(bracket(&m, &OperatorMatrix::identity(Field::Gaussian, 2)).is_err());
    }

    #[test]
    fn sl2_from_elementary_matrices() {
        let c = lie_closure(&[unit(2, 0, 1), unit(2, 1, 0)], ClosureOptions::default()).unwrap();
        assert_eq!(c.dim(), 3);
        let h = OperatorMatrix::from_i64(Q, &[&[1, 0], &[0, -1]]);
        assert!(c.span.contains(h.entries()).unwrap());
    }

    #[test]
    fn closed_generators_stop_after_one_generation() {
        let gens = [unit(3, 0, 0), unit(3, 1, 1)];
        let c = lie_closure(&gens, ClosureOptions::default()).unwrap();
        assert_eq!(c.dim(), 2);
        assert_eq!(c.stats.iterations, 1);
        assert_eq!(c.stats.brackets, 4);
    }

    #[test]
    fn empty_generators_give_zero_subspace() {
        let c = lie_closure(&[], ClosureOptions::default()).unwrap();
        assert_eq!(c.dim(), 0);
        assert_eq!(c.span.ambient_dim(), 0);
    }

    #[test]
    fn mismatched_generators_are_rejected() {
        let gens = [unit(2, 0, 1), unit(3, 0, 1)];
        assert!(matches!(
            lie_closure(&gens, ClosureOptions::default()),
            Err(Error::Shape(_))
        ));
        assert!(lie_closure(&[OperatorMatrix::zeros(Q, 2, 3)], ClosureOptions::default()).is_err());
    }

    #[test]
    fn nilpotent_associative_closure() {
        let c = assoc_closure(&[unit(2, 0, 1)], ClosureOptions::default()).unwrap();
        assert_eq!(c.dim(), 1);
    }

    #[test]
    fn derived_span_of_full_matrices_is_traceless() {
        let full = Subspace::full(Q, 4);
        let d = derived_span(&full).unwrap();
        assert_eq!(d.dim(), 3);
        for v in d.basis() {
            assert!((&v[0] + &v[3]).is_zero());
        }
        // Commutative: diagonal matrices.
        let diag = Subspace::spanned_by(
            Q,
            4,
            [unit(2, 0, 0).into_entries(), unit(2, 1, 1).into_entries()],
        )
        .unwrap();
        assert_eq!(derived_span(&diag).unwrap().dim(), 0);
        assert!(derived_span(&Subspace::full(Q, 3)).is_err());
    }

    #[test]
    fn thread_count_does_not_change_the_basis() {
        let gens = [unit(4, 0, 1), unit(4, 1, 2), unit(4, 2, 3), unit(4, 3, 0)];
        let one = lie_closure(&gens, ClosureOptions::with_threads(1)).unwrap();
        let four = lie_closure(&gens, ClosureOptions::with_threads(4)).unwrap();
        assert_eq!(one.span, four.span);
        assert_eq!(one.stats, four.stats);
        assert_eq!(one.dim(), 15);
    }
}
