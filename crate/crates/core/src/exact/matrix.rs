use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::{Field, Scalar};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense row-major matrix of exact scalars over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OperatorMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

pub(crate) fn check_field(field: Field, entries: &[Scalar]) -> Result<()> {
    match entries.iter().find(|s| s.field() != field) {
        Some(s) => Err(Error::MixedField {
            expected: field,
            found: s.field(),
        }),
        None => Ok(()),
    }
}

impl OperatorMatrix {
    /// Builds a matrix from row-major entries, rejecting a wrong entry
    /// count or entries from another field.
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        check_field(field, &entries)?;
        Ok(OperatorMatrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        OperatorMatrix {
            rows,
            cols,
            field,
            entries: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one(field);
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self::new(field, rows, cols, entries)
    }

    /// Small integer matrices, mostly for tests and fixed constants.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| Scalar::from_int(field, x)))
            .collect();
        OperatorMatrix {
            rows: r,
            cols: c,
            field,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "entry from another field");
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        OperatorMatrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            entries,
        }
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero(self.field);
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        OperatorMatrix {
            entries: self.entries.iter().map(|e| e * s).collect(),
            ..self.clone()
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero(self.field);
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Matrix product, returning an error on a shape or field mismatch.
    pub fn try_mul(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        if self.field != rhs.field {
            return Err(Error::MixedField {
                expected: self.field,
                found: rhs.field,
            });
        }
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        // Row-times-rows form so sparse (signed permutation) operands stay cheap.
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let rhs_row = rhs.row(k);
                let out_row = &mut out.entries[r * rhs.cols..(r + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    if !b.is_zero() {
                        *o += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &OperatorMatrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Self {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "shape mismatch: {}x{} vs {}x{}",
            self.rows,
            self.cols,
            rhs.rows,
            rhs.cols
        );
        OperatorMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// The `size`x`size` block at block position `(bi, bj)`.
    pub fn block(&self, bi: usize, bj: usize, size: usize) -> OperatorMatrix {
        let mut out = Self::zeros(self.field, size, size);
        for r in 0..size {
            for c in 0..size {
                out.entries[r * size + c] = self.get(bi * size + r, bj * size + c).clone();
            }
        }
        out
    }

    pub fn set_block(&mut self, bi: usize, bj: usize, block: &OperatorMatrix) {
        assert!(block.is_square(), "blocks are square");
        let size = block.rows;
        for r in 0..size {
            for c in 0..size {
                self.set(bi * size + r, bj * size + c, block.get(r, c).clone());
            }
        }
    }

    /// Builds an `(m*size)`-square matrix from `(block row, block col, block)`
    /// placements; later placements at the same position add up.
    pub fn from_blocks(
        field: Field,
        m: usize,
        size: usize,
        blocks: &[(usize, usize, &OperatorMatrix)],
    ) -> OperatorMatrix {
        let n = m * size;
        let mut out = Self::zeros(field, n, n);
        for &(bi, bj, b) in blocks {
            assert_eq!((b.rows, b.cols), (size, size), "block size");
            for r in 0..size {
                for c in 0..size {
                    let e = b.get(r, c);
                    if !e.is_zero() {
                        out.entries[(bi * size + r) * n + bj * size + c] += e;
                    }
                }
            }
        }
        out
    }

    pub fn rref(&self) -> Rref {
        rref(self)
    }
}

impl Add<&OperatorMatrix> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub<&OperatorMatrix> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn neg(self) -> OperatorMatrix {
        OperatorMatrix {
            entries: self.entries.iter().map(|e| -e).collect(),
            ..self.clone()
        }
    }
}

/// Panics on a shape mismatch; use [`OperatorMatrix::try_mul`] to get an error.
impl Mul<&OperatorMatrix> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Display for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row-echelon form together with its rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: OperatorMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination to the unique reduced row-echelon form.
pub fn rref(m: &OperatorMatrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for k in 0..cols {
                a.entries.swap(p * cols + k, r * cols + k);
            }
        }
        let inv = a.get(r, c).inv().expect("nonzero pivot");
        for k in c..cols {
            let e = &a.entries[r * cols + k] * &inv;
            a.entries[r * cols + k] = e;
        }
        let pivot_row: Vec<Scalar> = a.row(r).to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for k in c..cols {
                a.entries[i * cols + k].sub_mul(&f, &pivot_row[k]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        reduced: a,
        rank: r,
        pivots,
    }
}

/// Basis of `{v : m v = 0}` as a canonical subspace of the column space.
pub fn kernel_basis(m: &OperatorMatrix) -> Subspace {
    let Rref {
        reduced, pivots, ..
    } = rref(m);
    let field = m.field();
    let cols = m.cols();
    let mut kernel = Subspace::new(field, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Scalar::zero(field); cols];
        v[free] = Scalar::one(field);
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -reduced.get(row, free);
        }
        kernel
            .insert(v)
            .expect("kernel vectors have the ambient length");
    }
    kernel
}

/// Sylvester inertia of a symmetric rational matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl Signature {
    pub fn new(plus: usize, minus: usize, zero: usize) -> Self {
        Signature { plus, minus, zero }
    }

    pub fn dim(&self) -> usize {
        self.plus + self.minus + self.zero
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.plus, self.minus, self.zero)
    }
}

/// Counts positive, negative and zero squares by symmetric congruence
/// elimination.
pub fn signature(s: &OperatorMatrix) -> Result<Signature> {
    if s.field() != Field::Rational {
        return Err(Error::UnsupportedField(s.field()));
    }
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = s.rows();
    let mut a = s.clone();
    let mut sig = Signature::new(0, 0, 0);

    // Congruence moves: swap i<->j, and add row/col j into row/col i.
    let swap = |a: &mut OperatorMatrix, i: usize, j: usize| {
        if i == j {
            return;
        }
        for k in 0..n {
            a.entries.swap(i * n + k, j * n + k);
        }
        for k in 0..n {
            a.entries.swap(k * n + i, k * n + j);
        }
    };

    for k in 0..n {
        if a.get(k, k).is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a.get(i, i).is_zero()) {
                swap(&mut a, k, i);
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_zero())
            {
                // a_ii = a_jj = 0, so the new a_ii is 2 a_ij != 0.
                for c in 0..n {
                    let v = a.get(j, c).clone();
                    a.entries[i * n + c] += &v;
                }
                for r in 0..n {
                    let v = a.get(r, j).clone();
                    a.entries[r * n + i] += &v;
                }
                swap(&mut a, k, i);
            } else {
                sig.zero += n - k;
                return Ok(sig);
            }
        }
        let pivot = a.get(k, k).clone();
        let inv = pivot.inv().expect("nonzero pivot");
        for i in k + 1..n {
            let f = a.get(i, k) * &inv;
            if f.is_zero() {
                continue;
            }
            for c in k..n {
                let v = a.get(k, c).clone();
                a.entries[i * n + c].sub_mul(&f, &v);
            }
            for r in k..n {
                let v = a.get(r, k).clone();
                a.entries[r * n + i].sub_mul(&f, &v);
            }
        }
        match pivot.signum() {
            Some(1) => sig.plus += 1,
            _ => sig.minus += 1,
        }
    }
    Ok(sig)
}
