use super::{standard_signature, Algebra, Element};
use crate::error::{Error, Result};
use crate::exact::{rref, signature, Field, OperatorMatrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub algebra: String,
    pub checks: Vec<Check>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn passes(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.pass)
    }
}

/// First failing case, or `None`.
type Finding = Option<String>;

fn check(name: &'static str, finding: Finding, ok: impl Into<String>) -> Check {
    match finding {
        None => Check {
            name,
            pass: true,
            detail: ok.into(),
        },
        Some(detail) => Check {
            name,
            pass: false,
            detail,
        },
    }
}

/// Runs every composition-algebra identity on basis elements: unit laws,
/// anti-involution, alternating associator, polarized composition law,
/// `L_{e_i}^2 = L_{e_i^2} = +-1`, `L_{e_i} L_{e_j} = -L_{e_j} L_{e_i}`,
/// orthonormality of the basis, and the norm signature.
///
/// Each identity is multilinear, so checking it on basis tuples proves it
/// for all elements.
pub fn check_identity_suite(a: &Algebra) -> Result<IdentityReport> {
    let unit = a.unit().ok_or_else(|| Error::missing(a.name(), "unit"))?;
    a.conj_matrix()
        .ok_or_else(|| Error::missing(a.name(), "conjugation"))?;
    a.form_matrix()
        .ok_or_else(|| Error::missing(a.name(), "quadratic form"))?;

    let d = a.dim();
    let field = a.field();
    let basis: Vec<Element> = (0..d).map(|i| a.basis_element(i)).collect();
    let products: Vec<Vec<Element>> = basis
        .iter()
        .map(|x| basis.iter().map(|y| a.mul(x, y)).collect())
        .collect();
    let conj = |x: &Element| a.conjugate(x).expect("checked above");
    let form = a.form_matrix().expect("checked above");
    // Products of basis elements are sparse; skip zero coordinates.
    let b = |x: &Element, y: &Element| {
        let mut acc = Scalar::zero(field);
        for (i, xi) in x.coords().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.coords().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let f = form.get(i, j);
                if !f.is_zero() {
                    acc += &(&(xi * yj) * f);
                }
            }
        }
        acc
    };
    let mut checks = Vec::new();

    let unit_finding = (0..d).find_map(|i| {
        (a.mul(unit, &basis[i]) != basis[i] || a.mul(&basis[i], unit) != basis[i])
            .then(|| format!("unit law fails on e{i}"))
    });
    checks.push(check("unit", unit_finding, "1 x = x 1 = x"));

    let anti = (|| {
        if conj(unit) != *unit {
            return Some("conj(1) != 1".to_string());
        }
        for i in 0..d {
            if conj(&conj(&basis[i])) != basis[i] {
                return Some(format!("conj is not an involution on e{i}"));
            }
            for j in 0..d {
                let lhs = conj(&products[i][j]);
                let rhs = a.mul(&conj(&basis[j]), &conj(&basis[i]));
                if lhs != rhs {
                    return Some(format!("conj(e{i} e{j}) != conj(e{j}) conj(e{i})"));
                }
            }
        }
        None
    })();
    checks.push(check("anti-involution", anti, "conj(xy) = conj(y) conj(x)"));

    let assoc = |i: usize, j: usize, k: usize| {
        a.mul(&products[i][j], &basis[k])
            .sub(&a.mul(&basis[i], &products[j][k]))
    };
    let alt = (|| {
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let xyz = assoc(i, j, k);
                    if !xyz.add(&assoc(j, i, k)).is_zero() {
                        return Some(format!("[e{i},e{j},e{k}] + [e{j},e{i},e{k}] != 0"));
                    }
                    if !xyz.add(&assoc(i, k, j)).is_zero() {
                        return Some(format!("[e{i},e{j},e{k}] + [e{i},e{k},e{j}] != 0"));
                    }
                }
            }
        }
        None
    })();
    checks.push(check("alternativity", alt, "associator is alternating"));

    // Full polarization of |xu|^2 = |x|^2 |u|^2.
    let two = Scalar::from_int(field, 2);
    let comp = (|| {
        for x in 0..d {
            for y in 0..d {
                let bxy = b(&basis[x], &basis[y]);
                for u in 0..d {
                    for v in 0..d {
                        let lhs = &b(&products[x][u], &products[y][v])
                            + &b(&products[x][v], &products[y][u]);
                        let rhs = &(&two * &bxy) * &b(&basis[u], &basis[v]);
                        if lhs != rhs {
                            return Some(format!(
                                "B(e{x}e{u}, e{y}e{v}) + B(e{x}e{v}, e{y}e{u}) != 2 B(e{x},e{y}) B(e{u},e{v})"
                            ));
                        }
                    }
                }
            }
        }
        None
    })();
    checks.push(check("composition", comp, "|xy|^2 = |x|^2 |y|^2"));

    // The remaining identities are phrased for an orthonormal basis
    // 1, e_1, ..., e_{d-1}.
    let id = OperatorMatrix::identity(field, d);
    let lefts = a.left_mult_basis();
    let ortho = (|| {
        if *unit != basis[0] {
            return Some("e0 is not the unit".to_string());
        }
        for i in 0..d {
            for j in 0..d {
                let e = form.get(i, j);
                let ok = if i == j {
                    e.is_one() || (-e).is_one()
                } else {
                    e.is_zero()
                };
                if !ok {
                    return Some(format!("B(e{i}, e{j}) = {e}"));
                }
            }
        }
        None
    })();
    let orthonormal = ortho.is_none();
    checks.push(check(
        "orthonormal-basis",
        ortho,
        "B is diagonal with entries +-1",
    ));

    let squares = (|| {
        if !orthonormal {
            return Some("needs an orthonormal basis".to_string());
        }
        for i in 1..d {
            let sq = &products[i][i];
            let l_sq = a.left_mult_matrix(sq).expect("valid");
            if &lefts[i] * &lefts[i] != l_sq {
                return Some(format!("L_e{i} L_e{i} != L_(e{i}^2)"));
            }
            if l_sq != id && l_sq != -&id {
                return Some(format!("L_(e{i}^2) is not +-1"));
            }
        }
        None
    })();
    checks.push(check("unit-squares", squares, "L_ei L_ei = L_(ei^2) = +-1"));

    let anticommute = (|| {
        if !orthonormal {
            return Some("needs an orthonormal basis".to_string());
        }
        for i in 1..d {
            for j in i + 1..d {
                if !products[i][j].add(&products[j][i]).is_zero() {
                    return Some(format!("e{i} e{j} != -e{j} e{i}"));
                }
                let lhs = &lefts[i] * &lefts[j];
                let rhs = &lefts[j] * &lefts[i];
                if !(&lhs + &rhs).is_zero() {
                    return Some(format!("L_e{i} L_e{j} != -L_e{j} L_e{i}"));
                }
            }
        }
        None
    })();
    checks.push(check(
        "units-anticommute",
        anticommute,
        "L_ei L_ej = -L_ej L_ei",
    ));

    let sig_check = match field {
        Field::Rational => {
            let s = signature(form)?;
            let column = if s.zero != 0 {
                Some(format!("form is degenerate: {s}"))
            } else if (s.plus, s.minus) == (d, 0) || 2 * s.plus == d && 2 * s.minus == d {
                None
            } else {
                Some(format!("signature {s} is neither (d,0) nor (d/2,d/2)"))
            };
            let finding = column.or_else(|| {
                standard_signature(a.name()).and_then(|(p, q)| {
                    ((s.plus, s.minus) != (p, q)).then(|| {
                        format!("signature ({},{}) != expected ({p},{q})", s.plus, s.minus)
                    })
                })
            });
            check("signature", finding, format!("({},{})", s.plus, s.minus))
        }
        Field::Gaussian => {
            // Over Q(i) only nondegeneracy is meaningful.
            let rank = rref(form).rank;
            let finding = (rank != d).then(|| format!("form has rank {rank} < {d}"));
            check("signature", finding, format!("nondegenerate, rank {d}"))
        }
    };
    checks.push(sig_check);

    Ok(IdentityReport {
        algebra: a.name().to_string(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::standard_algebra;

    #[test]
    fn every_composition_algebra_passes() {
        for name in ["R", "C", "Rsplit", "H", "M2", "O", "Osplit", "BiO"] {
            let a = standard_algebra(name).unwrap();
            let report = check_identity_suite(&a).unwrap();
            assert!(report.all_pass(), "{name}: {report:?}");
        }
    }

    #[test]
    fn sedenions_are_a_negative_control() {
        let s = standard_algebra("S").unwrap();
        let report = check_identity_suite(&s).unwrap();
        assert!(report.passes("unit"));
        assert!(report.passes("anti-involution"));
        assert!(!report.passes("alternativity"));
        assert!(!report.passes("composition"));
    }

    #[test]
    fn corrupted_octonion_table_fails_alternativity() {
        let o = standard_algebra("O").unwrap();
        let flipped: Vec<Scalar> = o.table_entry(1, 2).iter().map(|c| -c).collect();
        let bad = o.with_table_entry(1, 2, flipped);
        let report = check_identity_suite(&bad).unwrap();
        assert!(!report.passes("alternativity"));
        assert!(report.passes("unit"));
    }

    #[test]
    fn quaternion_associator_vanishes_identically() {
        let h = standard_algebra("H").unwrap();
        assert!(h.is_associative());
        assert!(check_identity_suite(&h).unwrap().all_pass());
    }

    #[test]
    fn literal_matrix_presentation_is_not_orthonormal() {
        let m = standard_algebra("M2mat").unwrap();
        let report = check_identity_suite(&m).unwrap();
        assert!(report.passes("composition"));
        assert!(report.passes("alternativity"));
        assert!(report.passes("signature"));
        assert!(!report.passes("orthonormal-basis"));
    }
}
