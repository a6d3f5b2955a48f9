//! The algebra definition file.
//!
//! ```json
//! { "name": "H", "field": "Q", "dim": 4, "unit": ["1", "0", "0", "0"],
//!   "table": [[["1", "0", "0", "0"], ...], ...],
//!   "conj": [["1", "0", "0", "0"], ...], "form": [[...], ...] }
//! ```
//!
//! Scalars are strings `p`, `p/q` or `a+b*i`. Saving always writes the
//! normalized spelling, so `save(load(save(a)))` is byte-identical to
//! `save(a)`.

use serde::{Deserialize, Serialize};

use super::{Algebra, Element};
use crate::error::{Error, Result};
use crate::exact::{Field, OperatorMatrix, Scalar};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    name: String,
    field: Field,
    dim: usize,
    #[serde(default)]
    unit: Option<Vec<String>>,
    table: Vec<Vec<Vec<String>>>,
    #[serde(default)]
    conj: Option<Vec<Vec<String>>>,
    #[serde(default)]
    form: Option<Vec<Vec<String>>>,
}

fn strings(xs: &[Scalar]) -> Vec<String> {
    xs.iter().map(Scalar::to_string).collect()
}

fn matrix_strings(m: &OperatorMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| strings(m.row(r))).collect()
}

fn parse_vec(xs: &[String], field: Field) -> Result<Vec<Scalar>> {
    xs.iter().map(|s| Scalar::parse(s, field)).collect()
}

fn parse_matrix(
    rows: &[Vec<String>],
    field: Field,
    dim: usize,
    what: &str,
) -> Result<OperatorMatrix> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::InvalidAlgebra(format!("{what} must be {dim}x{dim}")));
    }
    let entries = rows
        .iter()
        .map(|r| parse_vec(r, field))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    OperatorMatrix::new(field, dim, dim, entries)
}

pub fn algebra_to_json(a: &Algebra) -> String {
    let d = a.dim();
    let file = AlgebraFile {
        name: a.name().to_string(),
        field: a.field(),
        dim: d,
        unit: a.unit().map(|u| strings(u.coords())),
        table: (0..d)
            .map(|i| (0..d).map(|j| strings(a.table_entry(i, j))).collect())
            .collect(),
        conj: a.conj_matrix().map(matrix_strings),
        form: a.form_matrix().map(matrix_strings),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("algebra files always serialize");
    out.push('\n');
    out
}

/// Parses and validates an algebra file. Syntax errors carry line and
/// column.
pub fn algebra_from_json(text: &str) -> Result<Algebra> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    let field = file.field;
    let d = file.dim;
    let table = file
        .table
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| parse_vec(e, field))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let unit = file
        .unit
        .as_deref()
        .map(|u| parse_vec(u, field).map(Element::new))
        .transpose()?;
    let conj = file
        .conj
        .as_deref()
        .map(|m| parse_matrix(m, field, d, "conj"))
        .transpose()?;
    let form = file
        .form
        .as_deref()
        .map(|m| parse_matrix(m, field, d, "form"))
        .transpose()?;
    Algebra::new(file.name, field, d, table, unit, conj, form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::standard_algebra;

    #[test]
    fn save_load_save_is_byte_identical() {
        for name in ["R", "H", "O", "M2mat", "BiO"] {
            let a = standard_algebra(name).unwrap();
            let text = algebra_to_json(&a);
            let back = algebra_from_json(&text).unwrap();
            assert_eq!(back, a, "{name}");
            assert_eq!(algebra_to_json(&back), text, "{name}");
        }
    }

    #[test]
    fn unnormalized_input_normalizes() {
        let text = r#"{"name": "two", "field": "Q", "dim": 1, "unit": ["2/2"],
            "table": [[["4/4"]]], "conj": [["1"]], "form": [["3/3"]]}"#;
        let a = algebra_from_json(text).unwrap();
        let saved = algebra_to_json(&a);
        assert!(saved.contains("\"1\""));
        assert!(!saved.contains("2/2"));
        assert_eq!(algebra_to_json(&algebra_from_json(&saved).unwrap()), saved);
    }

    #[test]
    fn syntax_errors_report_position() {
        let err = algebra_from_json("{\n  \"name\": \"x\",\n  oops\n}").unwrap_err();
        match err {
            Error::Json { line, column, .. } => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn semantic_errors() {
        let bad_scalar = r#"{"name": "x", "field": "Q", "dim": 1, "table": [[["1/0"]]]}"#;
        assert!(matches!(
            algebra_from_json(bad_scalar),
            Err(Error::ParseScalar(_))
        ));
        let bad_shape = r#"{"name": "x", "field": "Q", "dim": 2, "table": [[["1"]]]}"#;
        assert!(matches!(
            algebra_from_json(bad_shape),
            Err(Error::InvalidAlgebra(_))
        ));
        let bad_field = r#"{"name": "x", "field": "R", "dim": 1, "table": [[["1"]]]}"#;
        assert!(matches!(
            algebra_from_json(bad_field),
            Err(Error::Json { .. })
        ));
    }
}
