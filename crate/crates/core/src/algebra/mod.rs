//! Finite-dimensional algebras given by structure constants.
//!
//! An [`Algebra`] need not be associative or unital. Composition algebras
//! additionally carry a unit, a conjugation matrix and the polar form `B`
//! of their norm, with `B(x, x) = |x|^2`.

mod identities;
mod json;
mod standard;

pub use identities::{check_identity_suite, Check, IdentityReport};
pub use json::{algebra_from_json, algebra_to_json};
pub use standard::{
    cayley_dickson, matrix_algebra_m2, standard_algebra, standard_signature, ALGEBRA_NAMES,
};

use crate::error::{Error, Result};
use crate::exact::Subspace;
use crate::exact::{rref, Field, OperatorMatrix, Scalar};

/// Coordinates of an algebra element in the algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element(Vec<Scalar>);

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Element(coords)
    }

    pub fn zero(field: Field, dim: usize) -> Self {
        Element(vec![Scalar::zero(field); dim])
    }

    /// The `i`-th basis vector.
    pub fn basis(field: Field, dim: usize, i: usize) -> Self {
        let mut e = Self::zero(field, dim);
        e.0[i] = Scalar::one(field);
        e
    }

    pub fn from_i64(field: Field, coords: &[i64]) -> Self {
        Element(coords.iter().map(|&x| Scalar::from_int(field, x)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Element {
        Element(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        Element(self.0.iter().map(|a| a * s).collect())
    }
}

/// A finite-dimensional algebra over [`Field`], presented by its
/// multiplication table on a fixed basis `e_0, ..., e_{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    name: String,
    field: Field,
    dim: usize,
    // table[i * dim + j] = coordinates of e_i e_j
    table: Vec<Vec<Scalar>>,
    unit: Option<Element>,
    conj: Option<OperatorMatrix>,
    form: Option<OperatorMatrix>,
    associative: bool,
}

impl Algebra {
    /// Validates shapes and fields, the unit law, `conj^2 = 1`, and that the
    /// form is symmetric of full rank. Identities such as alternativity are
    /// left to [`check_identity_suite`].
    pub fn new(
        name: impl Into<String>,
        field: Field,
        dim: usize,
        table: Vec<Vec<Vec<Scalar>>>,
        unit: Option<Element>,
        conj: Option<OperatorMatrix>,
        form: Option<OperatorMatrix>,
    ) -> Result<Self> {
        let name = name.into();
        let invalid = |msg: String| Error::InvalidAlgebra(format!("{name}: {msg}"));
        if dim == 0 {
            return Err(invalid("dimension must be positive".into()));
        }
        if table.len() != dim || table.iter().any(|row| row.len() != dim) {
            return Err(invalid(format!("table must be {dim}x{dim}")));
        }
        let table: Vec<Vec<Scalar>> = table.into_iter().flatten().collect();
        for entry in &table {
            if entry.len() != dim {
                return Err(invalid(format!(
                    "table entries must have {dim} coordinates"
                )));
            }
            crate::exact::matrix_check_field(field, entry)?;
        }
        let square = |m: &OperatorMatrix, what: &str| -> Result<()> {
            if m.rows() != dim || m.cols() != dim {
                return Err(invalid(format!("{what} must be {dim}x{dim}")));
            }
            if m.field() != field {
                return Err(Error::MixedField {
                    expected: field,
                    found: m.field(),
                });
            }
            Ok(())
        };
        let mut alg = Algebra {
            name: name.clone(),
            field,
            dim,
            table,
            unit: None,
            conj: None,
            form: None,
            associative: false,
        };
        if let Some(u) = &unit {
            if u.dim() != dim {
                return Err(invalid("unit has the wrong length".into()));
            }
            crate::exact::matrix_check_field(field, u.coords())?;
            for i in 0..dim {
                let e = Element::basis(field, dim, i);
                if alg.mul(u, &e) != e || alg.mul(&e, u) != e {
                    return Err(invalid(format!("unit law fails on e_{i}")));
                }
            }
        }
        if let Some(c) = &conj {
            square(c, "conjugation")?;
            if &(c * c) != &OperatorMatrix::identity(field, dim) {
                return Err(invalid("conjugation is not an involution".into()));
            }
        }
        if let Some(b) = &form {
            square(b, "form")?;
            if !b.is_symmetric() {
                return Err(invalid("form is not symmetric".into()));
            }
            if rref(b).rank != dim {
                return Err(invalid("form is degenerate".into()));
            }
        }
        alg.unit = unit;
        alg.conj = conj;
        alg.form = form;
        alg.associative = alg.basis_associator_vanishes();
        Ok(alg)
    }

    fn basis_associator_vanishes(&self) -> bool {
        let d = self.dim;
        let basis: Vec<Element> = (0..d).map(|i| self.basis_element(i)).collect();
        for x in &basis {
            for y in &basis {
                let xy = self.mul(x, y);
                for z in &basis {
                    if self.mul(&xy, z) != self.mul(x, &self.mul(y, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> Option<&Element> {
        self.unit.as_ref()
    }

    pub fn conj_matrix(&self) -> Option<&OperatorMatrix> {
        self.conj.as_ref()
    }

    pub fn form_matrix(&self) -> Option<&OperatorMatrix> {
        self.form.as_ref()
    }

    pub fn is_associative(&self) -> bool {
        self.associative
    }

    /// Unit, conjugation and form are all present.
    pub fn is_composition_presentation(&self) -> bool {
        self.unit.is_some() && self.conj.is_some() && self.form.is_some()
    }

    /// Coordinates of `e_i e_j`.
    pub fn table_entry(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i * self.dim + j]
    }

    /// Copy of the algebra with one table entry replaced; the result is not
    /// revalidated.
    pub fn with_table_entry(&self, i: usize, j: usize, coords: Vec<Scalar>) -> Algebra {
        let mut a = self.clone();
        a.table[i * self.dim + j] = coords;
        a.associative = a.basis_associator_vanishes();
        a
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element::basis(self.field, self.dim, i)
    }

    pub fn element(&self, coords: &[i64]) -> Element {
        Element::from_i64(self.field, coords)
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.field, self.dim)
    }

    pub(crate) fn check_element(&self, x: &Element) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        crate::exact::matrix_check_field(self.field, x.coords())
    }

    /// Bilinear product without input validation.
    pub(crate) fn mul(&self, x: &Element, y: &Element) -> Element {
        let d = self.dim;
        let mut out = vec![Scalar::zero(self.field); d];
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords().iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, t) in out.iter_mut().zip(&self.table[i * d + j]) {
                    if !t.is_zero() {
                        *o += &(&c * t);
                    }
                }
            }
        }
        Element(out)
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.mul(x, y))
    }

    /// `(xy)z - x(yz)`.
    pub fn associator(&self, x: &Element, y: &Element, z: &Element) -> Result<Element> {
        self.check_element(x)?;
        self.check_element(y)?;
        self.check_element(z)?;
        Ok(self
            .mul(&self.mul(x, y), z)
            .sub(&self.mul(x, &self.mul(y, z))))
    }

    pub fn conjugate(&self, x: &Element) -> Result<Element> {
        self.check_element(x)?;
        let c = self
            .conj
            .as_ref()
            .ok_or_else(|| Error::missing(&self.name, "conjugation"))?;
        Ok(Element(c.mul_vec(x.coords())))
    }

    /// Polar form `B(x, y)`, with `B(x, x) = |x|^2`.
    pub fn bilinear(&self, x: &Element, y: &Element) -> Result<Scalar> {
        self.check_element(x)?;
        self.check_element(y)?;
        let b = self
            .form
            .as_ref()
            .ok_or_else(|| Error::missing(&self.name, "quadratic form"))?;
        let by = b.mul_vec(y.coords());
        let mut acc = Scalar::zero(self.field);
        for (a, c) in x.coords().iter().zip(&by) {
            if !a.is_zero() && !c.is_zero() {
                acc += &(a * c);
            }
        }
        Ok(acc)
    }

    pub fn norm(&self, x: &Element) -> Result<Scalar> {
        self.bilinear(x, x)
    }

    /// Scalar part `B(x, 1)`; equals `Re(x)` when `|1|^2 = 1`.
    pub fn real_part(&self, x: &Element) -> Result<Scalar> {
        let u = self
            .unit
            .as_ref()
            .ok_or_else(|| Error::missing(&self.name, "unit"))?;
        self.bilinear(x, u)
    }

    /// Matrix of `w -> z w`; column `j` holds the coordinates of `z e_j`.
    pub fn left_mult_matrix(&self, z: &Element) -> Result<OperatorMatrix> {
        self.check_element(z)?;
        let d = self.dim;
        let mut m = OperatorMatrix::zeros(self.field, d, d);
        for j in 0..d {
            let col = self.mul(z, &self.basis_element(j));
            for (i, v) in col.into_coords().into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }

    /// Matrix of `w -> w z`.
    pub fn right_mult_matrix(&self, z: &Element) -> Result<OperatorMatrix> {
        self.check_element(z)?;
        let d = self.dim;
        let mut m = OperatorMatrix::zeros(self.field, d, d);
        for j in 0..d {
            let col = self.mul(&self.basis_element(j), z);
            for (i, v) in col.into_coords().into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }

    /// `L_{e_0}, ..., L_{e_{d-1}}`.
    pub fn left_mult_basis(&self) -> Vec<OperatorMatrix> {
        (0..self.dim)
            .map(|i| {
                self.left_mult_matrix(&self.basis_element(i))
                    .expect("basis elements are valid")
            })
            .collect()
    }

    /// Whether `x -> L_x` is injective.
    pub fn has_faithful_left_regular_rep(&self) -> bool {
        let vectors = self.left_mult_basis().into_iter().map(|m| m.into_entries());
        Subspace::spanned_by(self.field, self.dim * self.dim, vectors)
            .map(|s| s.dim() == self.dim)
            .unwrap_or(false)
    }

    /// Reads `x` as `c * unit`, returning `c`.
    pub fn scalar_part_if_scalar(&self, x: &Element) -> Option<Scalar> {
        let u = self.unit.as_ref()?;
        let k = u.coords().iter().position(|c| !c.is_zero())?;
        let c = x.coords()[k].checked_div(&u.coords()[k])?;
        (u.scale(&c) == *x).then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;
    use num_traits::Signed;

    #[test]
    fn unit_times_x_is_x() {
        for name in ["C", "H", "O", "M2", "M2mat", "Osplit"] {
            let a = standard_algebra(name).unwrap();
            let u = a.unit().unwrap().clone();
            for i in 0..a.dim() {
                let e = a.basis_element(i);
                assert_eq!(a.multiply(&u, &e).unwrap(), e, "{name}");
            }
        }
    }

    #[test]
    fn imaginary_units_anticommute() {
        for name in ["C", "H", "O", "Osplit", "M2", "Rsplit"] {
            let a = standard_algebra(name).unwrap();
            for i in 1..a.dim() {
                for j in 1..a.dim() {
                    if i == j {
                        continue;
                    }
                    let (ei, ej) = (a.basis_element(i), a.basis_element(j));
                    let lhs = a.multiply(&ei, &ej).unwrap();
                    let rhs = a.multiply(&ej, &ei).unwrap().neg();
                    assert_eq!(lhs, rhs, "{name} e{i} e{j}");
                }
            }
        }
    }

    #[test]
    fn octonion_associator_is_nonzero_quaternion_associator_vanishes() {
        let o = standard_algebra("O").unwrap();
        let (e1, e2, e4) = (o.basis_element(1), o.basis_element(2), o.basis_element(4));
        let a = o.associator(&e1, &e2, &e4).unwrap();
        assert!(!a.is_zero());
        let nonzero: Vec<&Scalar> = a.coords().iter().filter(|c| !c.is_zero()).collect();
        assert_eq!(nonzero.len(), 1);
        assert_eq!(
            nonzero[0].as_rational().unwrap().abs(),
            Rational::from_integer(2.into())
        );
        assert!(o.associator(&e1, &e1, &e2).unwrap().is_zero());
        assert!(!o.is_associative());

        let h = standard_algebra("H").unwrap();
        assert!(h.is_associative());
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let (x, y, z) = (h.basis_element(i), h.basis_element(j), h.basis_element(k));
                    assert!(h.associator(&x, &y, &z).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn left_mult_of_unit_is_identity() {
        let o = standard_algebra("O").unwrap();
        let l = o.left_mult_matrix(o.unit().unwrap()).unwrap();
        assert_eq!(l, OperatorMatrix::identity(Field::Rational, 8));
    }

    #[test]
    fn missing_capabilities_are_errors() {
        let a = Algebra::new(
            "nil",
            Field::Rational,
            1,
            vec![vec![vec![Scalar::zero(Field::Rational)]]],
            None,
            None,
            None,
        )
        .unwrap();
        let x = a.basis_element(0);
        assert!(matches!(
            a.conjugate(&x),
            Err(Error::MissingCapability { .. })
        ));
        assert!(matches!(a.norm(&x), Err(Error::MissingCapability { .. })));
        assert!(a.is_associative());
        assert!(!a.has_faithful_left_regular_rep());
    }

    #[test]
    fn multiply_checks_inputs() {
        let h = standard_algebra("H").unwrap();
        let short = Element::from_i64(Field::Rational, &[1, 2]);
        assert!(matches!(
            h.multiply(&short, &h.basis_element(0)),
            Err(Error::DimensionMismatch { .. })
        ));
        let wrong_field = Element::zero(Field::Gaussian, 4);
        assert!(matches!(
            h.multiply(&wrong_field, &h.basis_element(0)),
            Err(Error::MixedField { .. })
        ));
    }

    #[test]
    fn constructor_rejects_bad_units_and_forms() {
        let q = Field::Rational;
        let table = vec![vec![vec![Scalar::one(q)]]];
        assert!(Algebra::new(
            "x",
            q,
            1,
            table.clone(),
            Some(Element::from_i64(q, &[2])),
            None,
            None
        )
        .is_err());
        let degenerate = OperatorMatrix::zeros(q, 1, 1);
        assert!(Algebra::new("x", q, 1, table.clone(), None, None, Some(degenerate)).is_err());
        let not_involution = OperatorMatrix::from_i64(q, &[&[2]]);
        assert!(Algebra::new("x", q, 1, table, None, Some(not_involution), None).is_err());
    }
}
