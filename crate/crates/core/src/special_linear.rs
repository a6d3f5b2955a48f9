//! Special linear rings `sl_m(A)` as operator rings on `A^m`, and the two
//! oracle descriptions they are checked against.
//!
//! `L_{a E_ij}` acts on column vectors `v in A^m` by `(L v)_i = a v_j`, so
//! it is the `md x md` block matrix whose only nonzero block is `L_a` at
//! block position `(i, j)`.

use std::time::Instant;

use crate::algebra::{Algebra, Element};
use crate::closure::{
    assoc_closure, derived_span, lie_closure, subspace_ops, Closure, ClosureOptions,
};
use crate::error::{Error, Result};
use crate::exact::{OperatorMatrix, Scalar, Subspace};

/// Selects the generator `L_{e_a E_ij}` of `sl_m(A)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SlGeneratorSpec {
    pub m: usize,
    pub a: usize,
    pub i: usize,
    pub j: usize,
}

impl SlGeneratorSpec {
    pub fn new(alg: &Algebra, m: usize, a: usize, i: usize, j: usize) -> Result<Self> {
        let spec = SlGeneratorSpec { m, a, i, j };
        spec.validate(alg)?;
        Ok(spec)
    }

    fn validate(&self, alg: &Algebra) -> Result<()> {
        if self.m < 2 {
            return Err(Error::InvalidIndex(format!("m = {} < 2", self.m)));
        }
        if self.i >= self.m || self.j >= self.m || self.i == self.j {
            return Err(Error::InvalidIndex(format!(
                "need 0 <= i != j < {}, got i = {}, j = {}",
                self.m, self.i, self.j
            )));
        }
        if self.a >= alg.dim() {
            return Err(Error::InvalidIndex(format!(
                "basis index {} out of range for dimension {}",
                self.a,
                alg.dim()
            )));
        }
        Ok(())
    }
}

/// Off-diagonal positions ordered `(0,1), (1,0), (0,2), (2,0), (1,2), ...`
/// so that transposed pairs are adjacent and their brackets, which fill
/// the diagonal blocks, come out early.
pub fn off_diagonal_positions(m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(m * (m - 1));
    for j in 1..m {
        for i in 0..j {
            out.push((i, j));
            out.push((j, i));
        }
    }
    out
}

/// `md x md` operator with `op` at block `(i, j)` and zeros elsewhere.
pub fn block_operator(
    alg: &Algebra,
    m: usize,
    i: usize,
    j: usize,
    op: &OperatorMatrix,
) -> OperatorMatrix {
    OperatorMatrix::from_blocks(alg.field(), m, alg.dim(), &[(i, j, op)])
}

/// `L_{x E_ij}` for an arbitrary element `x`.
pub fn sl_operator(
    alg: &Algebra,
    m: usize,
    x: &Element,
    i: usize,
    j: usize,
) -> Result<OperatorMatrix> {
    let l = alg.left_mult_matrix(x)?;
    Ok(block_operator(alg, m, i, j, &l))
}

pub fn sl_generator(alg: &Algebra, spec: SlGeneratorSpec) -> Result<OperatorMatrix> {
    spec.validate(alg)?;
    sl_operator(alg, spec.m, &alg.basis_element(spec.a), spec.i, spec.j)
}

/// All `d m (m-1)` generators, by position then basis index.
pub fn sl_generators(alg: &Algebra, m: usize) -> Result<Vec<OperatorMatrix>> {
    if m < 2 {
        return Err(Error::InvalidIndex(format!("m = {m} < 2")));
    }
    let lefts = alg.left_mult_basis();
    Ok(off_diagonal_positions(m)
        .into_iter()
        .flat_map(|(i, j)| lefts.iter().map(move |l| (i, j, l)))
        .map(|(i, j, l)| block_operator(alg, m, i, j, l))
        .collect())
}

/// The Lie ring generated by every `L_{e_a E_ij}`.
pub fn sl_ring(alg: &Algebra, m: usize, opts: ClosureOptions) -> Result<Closure> {
    lie_closure(&sl_generators(alg, m)?, opts)
}

/// `L_{I + x E_ij} = I + L_{x E_ij}`; invertible with inverse
/// `I - L_{x E_ij}` because the block is nilpotent.
pub fn group_operator(
    alg: &Algebra,
    m: usize,
    x: &Element,
    i: usize,
    j: usize,
) -> Result<OperatorMatrix> {
    if alg.unit().is_none() {
        return Err(Error::missing(alg.name(), "unit"));
    }
    let n = m * alg.dim();
    Ok(&OperatorMatrix::identity(alg.field(), n) + &sl_operator(alg, m, x, i, j)?)
}

pub fn group_generator(alg: &Algebra, spec: SlGeneratorSpec) -> Result<OperatorMatrix> {
    spec.validate(alg)?;
    group_operator(alg, spec.m, &alg.basis_element(spec.a), spec.i, spec.j)
}

/// The left multiplication algebra: products of the `L_{e_i}`, inside the
/// `d x d` operators.
pub fn mult_algebra(alg: &Algebra, opts: ClosureOptions) -> Result<Closure> {
    assoc_closure(&alg.left_mult_basis(), opts)
}

fn require_faithful_associative(alg: &Algebra) -> Result<()> {
    if !alg.is_associative() {
        return Err(Error::Precondition(format!(
            "{} is not associative",
            alg.name()
        )));
    }
    if !alg.has_faithful_left_regular_rep() {
        return Err(Error::Precondition(format!(
            "{} has no faithful left regular representation",
            alg.name()
        )));
    }
    Ok(())
}

/// Image of the matrix `x = (x_ij)` under `x -> (L_{x_ij})`.
pub fn regular_embed(alg: &Algebra, x: &[Vec<Element>]) -> Result<OperatorMatrix> {
    require_faithful_associative(alg)?;
    let m = x.len();
    if x.iter().any(|row| row.len() != m) {
        return Err(Error::Shape("block matrix must be square".into()));
    }
    let mut blocks = Vec::new();
    for (i, row) in x.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if !e.is_zero() {
                blocks.push((i, j, alg.left_mult_matrix(e)?));
            }
        }
    }
    let refs: Vec<(usize, usize, &OperatorMatrix)> =
        blocks.iter().map(|(i, j, b)| (*i, *j, b)).collect();
    Ok(OperatorMatrix::from_blocks(
        alg.field(),
        m,
        alg.dim(),
        &refs,
    ))
}

/// Spans block operators `alpha` at `(i, j)` for `i != j`,
/// `alpha (E_ii - E_jj)`, and `kappa E_00`, with `alpha` ranging over
/// `ring` and `kappa` over `derived`.
fn block_oracle(
    alg: &Algebra,
    m: usize,
    ring: &[OperatorMatrix],
    derived: &[OperatorMatrix],
) -> Result<Subspace> {
    let field = alg.field();
    let n = m * alg.dim();
    let mut s = Subspace::new(field, n * n);
    for (i, j) in off_diagonal_positions(m) {
        for alpha in ring {
            s.insert(block_operator(alg, m, i, j, alpha).into_entries())?;
        }
    }
    for j in 1..m {
        for alpha in ring {
            let minus = -alpha;
            let op =
                OperatorMatrix::from_blocks(field, m, alg.dim(), &[(0, 0, alpha), (j, j, &minus)]);
            s.insert(op.into_entries())?;
        }
    }
    for kappa in derived {
        s.insert(block_operator(alg, m, 0, 0, kappa).into_entries())?;
    }
    Ok(s)
}

/// `{x in M_m(A) : tr x in [A, A]}` embedded as operators on `A^m`, for
/// associative `A` with a faithful left regular representation.
pub fn associative_oracle(alg: &Algebra, m: usize) -> Result<Subspace> {
    require_faithful_associative(alg)?;
    if m < 2 {
        return Err(Error::InvalidIndex(format!("m = {m} < 2")));
    }
    let lefts = alg.left_mult_basis();
    let d = alg.dim();
    let regular = Subspace::spanned_by(
        alg.field(),
        d * d,
        lefts.iter().map(|l| l.entries().to_vec()),
    )?;
    let derived = subspace_ops(&derived_span(&regular)?)?;
    block_oracle(alg, m, &lefts, &derived)
}

/// `{x in M_m(M_A) : tr x in [M_A, M_A]}` as operators on `A^m`; requires
/// `m >= 3`.
pub fn mult_oracle(alg: &Algebra, m: usize, opts: ClosureOptions) -> Result<Subspace> {
    if m < 3 {
        return Err(Error::Precondition(format!(
            "the multiplication-algebra description needs m >= 3, got {m}"
        )));
    }
    let ma = mult_algebra(alg, opts)?;
    let ring = ma.basis_ops();
    let derived = subspace_ops(&derived_span(&ma.span)?)?;
    block_oracle(alg, m, &ring, &derived)
}

/// Sum of the diagonal blocks of an `md x md` operator.
pub fn block_trace(op: &OperatorMatrix, m: usize, d: usize) -> OperatorMatrix {
    let mut t = OperatorMatrix::zeros(op.field(), d, d);
    for k in 0..m {
        t = &t + &op.block(k, k, d);
    }
    t
}

/// Checks that every basis element of `span` has block trace in
/// `[M_A, M_A]`.
pub fn block_traces_in_derived(
    alg: &Algebra,
    m: usize,
    span: &Subspace,
    opts: ClosureOptions,
) -> Result<bool> {
    let d = alg.dim();
    let derived = derived_span(&mult_algebra(alg, opts)?.span)?;
    for op in subspace_ops(span)? {
        if !derived.contains(block_trace(&op, m, d).entries())? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    /// Associative rings: `tr x in [A, A]`.
    Associative,
    /// Any finite-dimensional algebra, `m >= 3`: `tr x in [M_A, M_A]`.
    Mult,
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub sl_dim: usize,
    pub oracle_dim: usize,
    pub equal: bool,
    pub closure: Closure,
    pub millis: u128,
}

/// Computes `sl_m(A)` and compares it with the chosen oracle.
pub fn verify_against_oracle(
    alg: &Algebra,
    m: usize,
    kind: OracleKind,
    opts: ClosureOptions,
) -> Result<OracleReport> {
    let start = Instant::now();
    let oracle = match kind {
        OracleKind::Associative => associative_oracle(alg, m)?,
        OracleKind::Mult => mult_oracle(alg, m, opts)?,
    };
    let closure = sl_ring(alg, m, opts)?;
    Ok(OracleReport {
        sl_dim: closure.dim(),
        oracle_dim: oracle.dim(),
        equal: closure.span.same_as(&oracle)?,
        closure,
        millis: start.elapsed().as_millis(),
    })
}

/// Expected `dim sl_m(A)` for an associative faithful `A`:
/// `(m^2 - 1) d + dim [A, A]`.
pub fn associative_dimension(alg: &Algebra, m: usize) -> Result<usize> {
    require_faithful_associative(alg)?;
    let d = alg.dim();
    let regular = Subspace::spanned_by(
        alg.field(),
        d * d,
        alg.left_mult_basis().into_iter().map(|l| l.into_entries()),
    )?;
    Ok((m * m - 1) * d + derived_span(&regular)?.dim())
}

/// `(d+1)(d+2)/2`, the dimension of `sl_2` over a composition algebra of
/// dimension `d`.
pub fn sl2_composition_dimension(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

/// Scalar `c` as the element `c * 1`.
pub(crate) fn scalar_element(alg: &Algebra, c: i64) -> Result<Element> {
    let u = alg
        .unit()
        .ok_or_else(|| Error::missing(alg.name(), "unit"))?;
    Ok(u.scale(&Scalar::from_int(alg.field(), c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::standard_algebra;
    use crate::exact::Field;

    fn opts() -> ClosureOptions {
        ClosureOptions::default()
    }

    #[test]
    fn rational_generator_is_an_elementary_matrix() {
        let r = standard_algebra("R").unwrap();
        let g = sl_generator(&r, SlGeneratorSpec::new(&r, 2, 0, 0, 1).unwrap()).unwrap();
        assert_eq!(
            g,
            OperatorMatrix::from_i64(Field::Rational, &[&[0, 1], &[0, 0]])
        );
    }

    #[test]
    fn generator_has_single_block() {
        let o = standard_algebra("O").unwrap();
        let spec = SlGeneratorSpec::new(&o, 3, 5, 2, 0).unwrap();
        let g = sl_generator(&o, spec).unwrap();
        for bi in 0..3 {
            for bj in 0..3 {
                let b = g.block(bi, bj, 8);
                if (bi, bj) == (2, 0) {
                    assert_eq!(b, o.left_mult_matrix(&o.basis_element(5)).unwrap());
                } else {
                    assert!(b.is_zero());
                }
            }
        }
    }

    #[test]
    fn invalid_specs() {
        let h = standard_algebra("H").unwrap();
        assert!(SlGeneratorSpec::new(&h, 2, 0, 1, 1).is_err());
        assert!(SlGeneratorSpec::new(&h, 2, 4, 0, 1).is_err());
        assert!(SlGeneratorSpec::new(&h, 1, 0, 0, 0).is_err());
        assert!(SlGeneratorSpec::new(&h, 3, 0, 0, 3).is_err());
    }

    #[test]
    fn associative_generators_compose_to_products() {
        let h = standard_algebra("H").unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let x = sl_generator(&h, SlGeneratorSpec::new(&h, 3, a, 0, 1).unwrap()).unwrap();
                let y = sl_generator(&h, SlGeneratorSpec::new(&h, 3, b, 1, 2).unwrap()).unwrap();
                let ab = h
                    .multiply(&h.basis_element(a), &h.basis_element(b))
                    .unwrap();
                assert_eq!(&x * &y, sl_operator(&h, 3, &ab, 0, 2).unwrap());
            }
        }
    }

    #[test]
    fn group_generators_invert() {
        let o = standard_algebra("O").unwrap();
        let zero = o.zero();
        assert_eq!(
            group_operator(&o, 2, &zero, 0, 1).unwrap(),
            OperatorMatrix::identity(Field::Rational, 16)
        );
        let x = o.element(&[1, -2, 0, 3, 0, 0, 1, 0]);
        let g = group_operator(&o, 2, &x, 1, 0).unwrap();
        let inv = group_operator(&o, 2, &x.neg(), 1, 0).unwrap();
        assert_eq!(&g * &inv, OperatorMatrix::identity(Field::Rational, 16));
        let nil = crate::algebra::Algebra::new(
            "nil",
            Field::Rational,
            1,
            vec![vec![vec![Scalar::zero(Field::Rational)]]],
            None,
            None,
            None,
        )
        .unwrap();
        assert!(group_operator(&nil, 2, &nil.zero(), 0, 1).is_err());
    }

    #[test]
    fn small_sl_dimensions() {
        let r = standard_algebra("R").unwrap();
        assert_eq!(sl_ring(&r, 2, opts()).unwrap().dim(), 3);
        assert_eq!(sl_ring(&r, 3, opts()).unwrap().dim(), 8);
    }

    #[test]
    fn multiplication_algebras() {
        let h = standard_algebra("H").unwrap();
        assert_eq!(mult_algebra(&h, opts()).unwrap().dim(), 4);
        let m = standard_algebra("M2mat").unwrap();
        assert_eq!(mult_algebra(&m, opts()).unwrap().dim(), 4);
        let o = standard_algebra("O").unwrap();
        assert_eq!(mult_algebra(&o, opts()).unwrap().dim(), 64);
    }

    #[test]
    fn regular_embedding_is_multiplicative() {
        let m2 = standard_algebra("M2mat").unwrap();
        let x = vec![
            vec![m2.element(&[1, 2, 0, -1]), m2.element(&[0, 1, 3, 0])],
            vec![m2.element(&[2, 0, 0, 1]), m2.element(&[-1, 0, 1, 1])],
        ];
        let y = vec![
            vec![m2.element(&[0, 1, 1, 0]), m2.element(&[1, 1, 1, 1])],
            vec![m2.element(&[3, 0, -2, 0]), m2.element(&[0, 0, 0, 2])],
        ];
        let mut xy = vec![vec![m2.zero(), m2.zero()], vec![m2.zero(), m2.zero()]];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let p = m2.multiply(&x[i][k], &y[k][j]).unwrap();
                    xy[i][j] = xy[i][j].add(&p);
                }
            }
        }
        let lhs = &regular_embed(&m2, &x).unwrap() * &regular_embed(&m2, &y).unwrap();
        assert_eq!(lhs, regular_embed(&m2, &xy).unwrap());

        let u = m2.unit().unwrap().clone();
        let e11 = regular_embed(&m2, &[vec![u, m2.zero()], vec![m2.zero(), m2.zero()]]).unwrap();
        let mut expected = OperatorMatrix::zeros(Field::Rational, 8, 8);
        expected.set_block(0, 0, &OperatorMatrix::identity(Field::Rational, 4));
        assert_eq!(e11, expected);
    }

    #[test]
    fn embedding_rejects_nonassociative() {
        let o = standard_algebra("O").unwrap();
        let x = vec![vec![o.zero(), o.zero()], vec![o.zero(), o.zero()]];
        assert!(matches!(regular_embed(&o, &x), Err(Error::Precondition(_))));
        assert!(associative_oracle(&o, 2).is_err());
    }

    #[test]
    fn oracle_dimensions() {
        let r = standard_algebra("R").unwrap();
        assert_eq!(associative_oracle(&r, 2).unwrap().dim(), 3);
        let m2 = standard_algebra("M2mat").unwrap();
        assert_eq!(associative_oracle(&m2, 2).unwrap().dim(), 15);
        assert_eq!(associative_dimension(&m2, 2).unwrap(), 15);
        let h = standard_algebra("H").unwrap();
        assert_eq!(associative_oracle(&h, 3).unwrap().dim(), 35);
        assert_eq!(mult_oracle(&r, 3, opts()).unwrap().dim(), 8);
        assert!(matches!(
            mult_oracle(&r, 2, opts()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn quaternion_oracles_agree() {
        let h = standard_algebra("H").unwrap();
        let a = associative_oracle(&h, 3).unwrap();
        let m = mult_oracle(&h, 3, opts()).unwrap();
        assert_eq!(a, m);
    }

    #[test]
    fn traceless_embedding_lies_in_sl() {
        let h = standard_algebra("H").unwrap();
        let sl = sl_ring(&h, 2, opts()).unwrap();
        let i = h.basis_element(1);
        let x = vec![
            vec![i.clone(), h.element(&[1, 1, 0, 2])],
            vec![h.element(&[0, 3, 1, 0]), i.neg()],
        ];
        let op = regular_embed(&h, &x).unwrap();
        assert!(sl.span.contains(op.entries()).unwrap());
    }
}
