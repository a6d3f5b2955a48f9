use super::matrix::check_field;
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// A linear subspace of `field^ambient_dim`, stored as its reduced
/// row-echelon basis.
///
/// The echelon form is unique, so two subspaces are equal exactly when
/// their stored bases are equal, and the derived `PartialEq` is subspace
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// The zero subspace.
    pub fn new(field: Field, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        let mut s = Subspace::new(field, ambient_dim);
        for i in 0..ambient_dim {
            let mut v = vec![Scalar::zero(field); ambient_dim];
            v[i] = Scalar::one(field);
            s.basis.push(v);
            s.pivots.push(i);
        }
        s
    }

    pub fn spanned_by<I>(field: Field, ambient_dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut s = Subspace::new(field, ambient_dim);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    /// Rebuilds a subspace from a stored basis, checking that it really is
    /// in reduced row-echelon form.
    pub fn from_echelon_basis(
        field: Field,
        ambient_dim: usize,
        basis: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        let mut pivots = Vec::with_capacity(basis.len());
        for row in &basis {
            if row.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: row.len(),
                });
            }
            check_field(field, row)?;
            let p = row
                .iter()
                .position(|x| !x.is_zero())
                .ok_or_else(|| Error::Precondition("zero row in echelon basis".into()))?;
            if !row[p].is_one() || pivots.last().is_some_and(|&last| last >= p) {
                return Err(Error::Precondition("basis is not in echelon form".into()));
            }
            pivots.push(p);
        }
        for (k, &p) in pivots.iter().enumerate() {
            if basis
                .iter()
                .enumerate()
                .any(|(r, row)| r != k && !row[p].is_zero())
            {
                return Err(Error::Precondition("pivot column is not reduced".into()));
            }
        }
        Ok(Subspace {
            field,
            ambient_dim,
            basis,
            pivots,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_vector(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        check_field(self.field, v)
    }

    /// Subtracts the echelon basis from `v`. Because every pivot column is
    /// zero in all other basis rows, the coefficients are just `v`'s
    /// original pivot entries.
    fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let coeff = std::mem::replace(&mut v[p], Scalar::zero(self.field));
            for (x, r) in v.iter_mut().zip(row).skip(p + 1) {
                x.sub_mul(&coeff, r);
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        self.check_vector(v)?;
        let mut w = v.to_vec();
        self.reduce(&mut w);
        Ok(w.iter().all(Scalar::is_zero))
    }

    /// Adds `v` to the span, keeping the basis canonical. Returns whether
    /// the dimension grew.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> Result<bool> {
        self.check_vector(&v)?;
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = v[p].inv().expect("nonzero leading entry");
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in &mut self.basis {
            if row[p].is_zero() {
                continue;
            }
            let coeff = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v).skip(p) {
                x.sub_mul(&coeff, y);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, v);
        Ok(true)
    }

    /// Functional form of [`Subspace::insert`].
    pub fn with_vector(&self, v: Vec<Scalar>) -> Result<(Subspace, bool)> {
        let mut s = self.clone();
        let grew = s.insert(v)?;
        Ok((s, grew))
    }

    /// Whether the two subspaces coincide. Errors on an ambient mismatch.
    pub fn same_as(&self, other: &Subspace) -> Result<bool> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(self == other)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        for v in other.basis() {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Image of the subspace under keeping coordinates `range`.
    pub fn project(&self, range: std::ops::Range<usize>) -> Subspace {
        let mut out = Subspace::new(self.field, range.len());
        for v in &self.basis {
            out.insert(v[range.clone()].to_vec())
                .expect("projection has the right length");
        }
        out
    }

    /// Largest bit length among the stored basis entries.
    pub fn peak_bits(&self) -> u64 {
        self.basis
            .iter()
            .flatten()
            .map(Scalar::bits)
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_int(Q, x)).collect()
    }

    #[test]
    fn insert_existing_vector_does_not_grow() {
        let mut s = Subspace::new(Q, 3);
        assert!(s.insert(v(&[1, 2, 3])).unwrap());
        let before = s.clone();
        assert!(!s.insert(v(&[2, 4, 6])).unwrap());
        assert_eq!(s, before);
    }

    #[test]
    fn zero_vector_never_grows() {
        let mut s = Subspace::new(Q, 2);
        assert!(!s.insert(v(&[0, 0])).unwrap());
        assert_eq!(s.dim(), 0);
        assert!(s.contains(&v(&[0, 0])).unwrap());
    }

    #[test]
    fn standard_basis_fills_space() {
        let mut s = Subspace::new(Q, 4);
        let mut growths = 0;
        for i in 0..4 {
            let mut e = v(&[0, 0, 0, 0]);
            e[i] = Scalar::one(Q);
            growths += s.insert(e).unwrap() as usize;
        }
        assert_eq!(growths, 4);
        assert_eq!(s, Subspace::full(Q, 4));
    }

    #[test]
    fn canonical_normalization() {
        let a = Subspace::spanned_by(Q, 2, [v(&[1, 0])]).unwrap();
        let b = Subspace::spanned_by(Q, 2, [v(&[2, 0])]).unwrap();
        assert!(a.same_as(&b).unwrap());
        for row in a.basis() {
            assert!(a.contains(row).unwrap());
        }
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let mut s = Subspace::new(Q, 2);
        assert!(matches!(
            s.insert(v(&[1, 2, 3])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(s.contains(&v(&[1])).is_err());
        assert!(s.same_as(&Subspace::new(Q, 3)).is_err());
    }

    #[test]
    fn echelon_round_trip() {
        let s = Subspace::spanned_by(Q, 3, [v(&[1, 2, 3]), v(&[0, 1, 5])]).unwrap();
        let t = Subspace::from_echelon_basis(Q, 3, s.basis().to_vec()).unwrap();
        assert_eq!(s, t);
        assert!(Subspace::from_echelon_basis(Q, 3, vec![v(&[2, 0, 0])]).is_err());
        assert!(Subspace::from_echelon_basis(Q, 3, vec![v(&[0, 1, 0]), v(&[1, 0, 0])]).is_err());
    }
}
