use super::{Algebra, Element};
use crate::error::{Error, Result};
use crate::exact::{Field, OperatorMatrix, Scalar};

/// Names accepted by [`standard_algebra`].
///
/// `M2` is the doubling presentation of the 2x2 matrices (orthonormal
/// basis); `M2mat` is the literal matrix-unit presentation; `S` is the
/// 16-dimensional definite doubling, kept as a negative control.
pub const ALGEBRA_NAMES: &[&str] = &[
    "R", "C", "Rsplit", "H", "M2", "O", "Osplit", "BiO", "M2mat", "S",
];

/// One-dimensional ground field as a composition algebra.
fn ground(field: Field) -> Algebra {
    let one = Scalar::one(field);
    Algebra::new(
        "R",
        field,
        1,
        vec![vec![vec![one.clone()]]],
        Some(Element::new(vec![one])),
        Some(OperatorMatrix::identity(field, 1)),
        Some(OperatorMatrix::identity(field, 1)),
    )
    .expect("the ground field is a valid algebra")
}

/// Doubles `a` with parameter `gamma = +1` (definite) or `-1` (split):
///
/// `(a, b)(c, e) = (ac - gamma e conj(b), conj(a) e + c b)`,
/// `conj(a, b) = (conj(a), -b)`, `|(a, b)|^2 = |a|^2 + gamma |b|^2`.
pub fn cayley_dickson(a: &Algebra, gamma: &Scalar) -> Result<Algebra> {
    let field = a.field();
    if gamma.field() != field {
        return Err(Error::MixedField {
            expected: field,
            found: gamma.field(),
        });
    }
    if !(gamma.is_one() || (-gamma).is_one()) {
        return Err(Error::Precondition("gamma must be +1 or -1".into()));
    }
    let unit = a.unit().ok_or_else(|| Error::missing(a.name(), "unit"))?;
    let conj = a
        .conj_matrix()
        .ok_or_else(|| Error::missing(a.name(), "conjugation"))?;
    let form = a
        .form_matrix()
        .ok_or_else(|| Error::missing(a.name(), "quadratic form"))?;
    let d = a.dim();
    let n = 2 * d;

    let split = |k: usize| -> (Element, Element) {
        if k < d {
            (a.basis_element(k), a.zero())
        } else {
            (a.zero(), a.basis_element(k - d))
        }
    };
    let cj = |x: &Element| Element::new(conj.mul_vec(x.coords()));

    let mut table = Vec::with_capacity(n);
    for i in 0..n {
        let (x0, x1) = split(i);
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let (y0, y1) = split(j);
            let first = a.mul(&x0, &y0).sub(&a.mul(&y1, &cj(&x1)).scale(gamma));
            let second = a.mul(&cj(&x0), &y1).add(&a.mul(&y0, &x1));
            let mut coords = first.into_coords();
            coords.extend(second.into_coords());
            row.push(coords);
        }
        table.push(row);
    }

    let mut unit2 = unit.coords().to_vec();
    unit2.extend(vec![Scalar::zero(field); d]);

    let minus_id = -&OperatorMatrix::identity(field, d);
    let conj2 = OperatorMatrix::from_blocks(field, 2, d, &[(0, 0, conj), (1, 1, &minus_id)]);
    let scaled = form.scale(gamma);
    let form2 = OperatorMatrix::from_blocks(field, 2, d, &[(0, 0, form), (1, 1, &scaled)]);

    let sign = if gamma.is_one() { "+" } else { "-" };
    Algebra::new(
        format!("CD({}, {sign}1)", a.name()),
        field,
        n,
        table,
        Some(Element::new(unit2)),
        Some(conj2),
        Some(form2),
    )
}

/// The literal 2x2 matrix algebra with basis `E11, E12, E21, E22`,
/// determinant norm and adjugate conjugation.
pub fn matrix_algebra_m2(field: Field) -> Algebra {
    let idx = |r: usize, c: usize| 2 * r + c;
    let mut table = vec![vec![vec![Scalar::zero(field); 4]; 4]; 4];
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for e in 0..2 {
                    if b == c {
                        table[idx(a, b)][idx(c, e)][idx(a, e)] = Scalar::one(field);
                    }
                }
            }
        }
    }
    let conj = OperatorMatrix::from_i64(
        field,
        &[&[0, 0, 0, 1], &[0, -1, 0, 0], &[0, 0, -1, 0], &[1, 0, 0, 0]],
    );
    let half = Scalar::from_ratio(field, 1, 2);
    let mut form = OperatorMatrix::zeros(field, 4, 4);
    form.set(0, 3, half.clone());
    form.set(3, 0, half.clone());
    form.set(1, 2, -&half);
    form.set(2, 1, -&half);
    Algebra::new(
        "M2mat",
        field,
        4,
        table,
        Some(Element::from_i64(field, &[1, 0, 0, 1])),
        Some(conj),
        Some(form),
    )
    .expect("M2 matrix presentation is valid")
}

fn double(a: &Algebra, gamma: i64) -> Algebra {
    cayley_dickson(a, &Scalar::from_int(a.field(), gamma))
        .expect("standard doublings have unit, conjugation and form")
}

/// Builds one of [`ALGEBRA_NAMES`].
pub fn standard_algebra(name: &str) -> Result<Algebra> {
    let q = Field::Rational;
    let r = || ground(q);
    let c = || double(&r(), 1);
    let h = || double(&c(), 1);
    let o = || double(&h(), 1);
    let alg = match name {
        "R" => r(),
        "C" => c(),
        "Rsplit" => double(&r(), -1),
        "H" => h(),
        "M2" => double(&c(), -1),
        "O" => o(),
        "Osplit" => double(&h(), -1),
        "BiO" => {
            let g = ground(Field::Gaussian);
            double(&double(&double(&g, 1), 1), 1)
        }
        "M2mat" => matrix_algebra_m2(q),
        "S" => double(&o(), 1),
        other => return Err(Error::UnknownAlgebra(other.to_string())),
    };
    Ok(alg.with_name(name))
}

/// Signature `(positive, negative)` of the norm form of a named real
/// algebra: `(d, 0)` for the division algebras, `(d/2, d/2)` for the split
/// ones. `None` for `BiO`, whose form lives over `Q(i)`.
pub fn standard_signature(name: &str) -> Option<(usize, usize)> {
    Some(match name {
        "R" => (1, 0),
        "C" => (2, 0),
        "H" => (4, 0),
        "O" => (8, 0),
        "S" => (16, 0),
        "Rsplit" => (1, 1),
        "M2" | "M2mat" => (2, 2),
        "Osplit" => (4, 4),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{signature, Signature};

    #[test]
    fn doubling_the_rationals() {
        let c = standard_algebra("C").unwrap();
        assert_eq!(c.dim(), 2);
        let e1 = c.basis_element(1);
        assert_eq!(c.multiply(&e1, &e1).unwrap(), c.element(&[-1, 0]));
        assert_eq!(
            signature(c.form_matrix().unwrap()).unwrap(),
            Signature::new(2, 0, 0)
        );

        let split = standard_algebra("Rsplit").unwrap();
        let e1 = split.basis_element(1);
        assert_eq!(split.multiply(&e1, &e1).unwrap(), split.element(&[1, 0]));
        assert_eq!(
            signature(split.form_matrix().unwrap()).unwrap(),
            Signature::new(1, 1, 0)
        );
    }

    #[test]
    fn standard_dimensions_and_signatures() {
        for (name, dim) in [
            ("R", 1),
            ("C", 2),
            ("Rsplit", 2),
            ("H", 4),
            ("M2", 4),
            ("O", 8),
            ("Osplit", 8),
            ("M2mat", 4),
            ("S", 16),
        ] {
            let a = standard_algebra(name).unwrap();
            assert_eq!(a.dim(), dim, "{name}");
            let (p, q) = standard_signature(name).unwrap();
            assert_eq!(
                signature(a.form_matrix().unwrap()).unwrap(),
                Signature::new(p, q, 0),
                "{name}"
            );
        }
        let bio = standard_algebra("BiO").unwrap();
        assert_eq!((bio.dim(), bio.field()), (8, Field::Gaussian));
    }

    #[test]
    fn quaternions_are_associative() {
        assert!(standard_algebra("H").unwrap().is_associative());
        assert!(standard_algebra("M2").unwrap().is_associative());
        assert!(!standard_algebra("O").unwrap().is_associative());
    }

    #[test]
    fn matrix_presentation() {
        let m = standard_algebra("M2mat").unwrap();
        let (e12, e21) = (m.basis_element(1), m.basis_element(2));
        assert_eq!(m.multiply(&e12, &e21).unwrap(), m.basis_element(0));
        let x = m.element(&[3, -2, 5, 7]);
        let det = Scalar::from_int(Field::Rational, 3 * 7 - (-2) * 5);
        assert_eq!(m.norm(&x).unwrap(), det);
        assert_eq!(m.conjugate(m.unit().unwrap()).unwrap(), *m.unit().unwrap());
    }

    #[test]
    fn unknown_names_and_bad_gamma() {
        assert!(matches!(
            standard_algebra("E8"),
            Err(Error::UnknownAlgebra(_))
        ));
        let r = standard_algebra("R").unwrap();
        assert!(cayley_dickson(&r, &Scalar::from_int(Field::Rational, 2)).is_err());
        let nil = Algebra::new(
            "nil",
            Field::Rational,
            1,
            vec![vec![vec![Scalar::zero(Field::Rational)]]],
            None,
            None,
            None,
        )
        .unwrap();
        assert!(matches!(
            cayley_dickson(&nil, &Scalar::one(Field::Rational)),
            Err(Error::MissingCapability { .. })
        ));
    }

    #[test]
    fn conjugate_of_unit_and_norms_of_basis() {
        for name in ["C", "Rsplit", "H", "M2", "O", "Osplit"] {
            let a = standard_algebra(name).unwrap();
            let u = a.unit().unwrap();
            assert_eq!(a.conjugate(u).unwrap(), *u);
            let (p, _) = standard_signature(name).unwrap();
            let positive = (0..a.dim())
                .filter(|&i| a.norm(&a.basis_element(i)).unwrap().is_one())
                .count();
            let negative = (0..a.dim())
                .filter(|&i| (-a.norm(&a.basis_element(i)).unwrap()).is_one())
                .count();
            assert_eq!((positive, positive + negative), (p, a.dim()), "{name}");
        }
    }
}
