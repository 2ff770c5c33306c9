//! Dense exact matrices over a [`Field`], with the rank, congruence and
//! block-extraction primitives used throughout the crate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{self, Vector};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// The finer congruence class of a square matrix.
///
/// In characteristic 2 alternating matrices are also symmetric; the
/// alternating tag wins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    SymmetricNonalternating,
    Alternating,
    General,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_data(field: Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| !field.is_valid(x as u32)) {
            return Err(Error::InvalidElement { value: bad as u32, q: field.q() });
        }
        Ok(Mat { field, rows, cols, data })
    }

    /// Builds a matrix from rows of small integers (convenient in tests).
    pub fn from_rows<R: AsRef<[Elem]>>(field: Field, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::ShapeMismatch("ragged rows".into()));
            }
            data.extend_from_slice(r);
        }
        Self::from_data(field, rows.len(), cols, data)
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { field, rows, cols, data }
    }

    /// `E_{i,j}` of the given shape (0-based indices).
    pub fn unit(field: Field, rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        m.set(i, j, 1);
        m
    }

    /// `E_{i,j} + E_{j,i}` for `i != j`, `E_{i,i}` otherwise.
    pub fn sym_unit(field: Field, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        m.set(i, j, 1);
        m.set(j, i, 1);
        m
    }

    /// `E_{i,j} - E_{j,i}` for `i != j`.
    pub fn alt_unit(field: Field, n: usize, i: usize, j: usize) -> Self {
        debug_assert_ne!(i, j);
        let mut m = Self::zeros(field, n, n);
        m.set(i, j, 1);
        m.set(j, i, field.neg(1));
        m
    }

    /// Square matrix whose rows are the given vectors.
    pub fn from_vectors(field: Field, vectors: &[Vector]) -> Self {
        let n = vectors.len();
        let cols = vectors.first().map_or(0, |v| v.len());
        Mat::from_fn(field, n, cols, |i, j| vectors[i][j])
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    #[inline]
    pub fn data(&self) -> &[Elem] {
        &self.data
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }
    #[inline]
    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero(&self.data)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    fn check_same_shape(&self, other: &Mat) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols || self.field != other.field {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.check_same_shape(other)?;
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Mat { data, ..*self.shape_only() })
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.check_same_shape(other)?;
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(Mat { data, ..*self.shape_only() })
    }

    /// `self += c·other`; shapes must agree.
    pub fn add_scaled_assign(&mut self, c: Elem, other: &Mat) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        linalg::axpy(self.field, &mut self.data, c, &other.data);
    }

    pub fn scale(&self, c: Elem) -> Mat {
        let f = self.field;
        Mat { data: self.data.iter().map(|&a| f.mul(a, c)).collect(), ..*self.shape_only() }
    }

    fn shape_only(&self) -> Box<Mat> {
        Box::new(Mat { field: self.field, rows: self.rows, cols: self.cols, data: Vec::new() })
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                linalg::axpy(f, dst, a, orow);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Elem]) -> Vector {
        (0..self.rows).map(|i| linalg::dot(self.field, self.row(i), x)).collect()
    }

    /// Exact rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        rank_in_place(self.field, &mut self.data.clone(), self.rows, self.cols)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug: Vec<Vector> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend(linalg::unit(n, i));
                r
            })
            .collect();
        let pivots = linalg::rref_with_width(self.field, &mut aug, n);
        if pivots.len() != n {
            return Err(Error::SingularBlock);
        }
        Ok(Mat::from_fn(self.field, n, n, |i, j| aug[i][n + j]))
    }

    /// Basis of the right kernel `{x : M x = 0}` in reduced form.
    pub fn kernel(&self) -> Vec<Vector> {
        linalg::kernel(self.field, &self.row_vectors(), self.cols)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Skew-symmetric with zero diagonal, in every characteristic.
    pub fn is_alternating(&self) -> bool {
        let f = self.field;
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i) == 0 && (0..i).all(|j| self.get(i, j) == f.neg(self.get(j, i)))
            })
    }

    pub fn classify_form(&self) -> FormKind {
        if self.is_alternating() {
            FormKind::Alternating
        } else if self.is_symmetric() {
            FormKind::SymmetricNonalternating
        } else {
            FormKind::General
        }
    }

    /// `P·M·Pᵀ` without checking invertibility of `P`.
    pub fn congruent_by(&self, p: &Mat) -> Mat {
        p.mul(self).and_then(|pm| pm.mul(&p.transpose())).expect("congruence shape mismatch")
    }

    /// `P·M·Pᵀ` for invertible `P`.
    pub fn congruence(p: &Mat, m: &Mat) -> Result<Mat> {
        if !p.is_square() || !m.is_square() || p.rows != m.rows {
            return Err(Error::ShapeMismatch("congruence needs equal square shapes".into()));
        }
        if !p.is_invertible() {
            return Err(Error::SingularBlock);
        }
        Ok(m.congruent_by(p))
    }

    /// Submatrix on the given row and column index lists, in that order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        Mat::from_fn(self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    /// Deletes the rows and columns listed in `indices` (0-based) from a
    /// square matrix, keeping the remaining order.
    pub fn delete_rows_cols(&self, indices: &[usize]) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("delete_rows_cols needs a square matrix".into()));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.rows) {
            return Err(Error::IndexOutOfRange { index: bad, size: self.rows });
        }
        let keep: Vec<usize> = (0..self.rows).filter(|i| !indices.contains(i)).collect();
        Ok(self.submatrix(&keep, &keep))
    }

    /// `Xᵀ·M·Y`.
    pub fn form_eval(&self, x: &[Elem], y: &[Elem]) -> Result<Elem> {
        if x.len() != self.rows || y.len() != self.cols {
            return Err(Error::ShapeMismatch("vector length differs from matrix size".into()));
        }
        Ok(self.form_eval_unchecked(x, y))
    }

    #[inline]
    pub fn form_eval_unchecked(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let f = self.field;
        let mut acc = 0;
        for (i, &xi) in x.iter().enumerate() {
            if xi != 0 {
                acc = f.mul_add(acc, xi, linalg::dot(f, self.row(i), y));
            }
        }
        acc
    }

    /// Assembles `[[A, C], [B, D]]`.
    pub fn from_blocks(a: &Mat, c: &Mat, b: &Mat, d: &Mat) -> Result<Mat> {
        if a.rows != c.rows || b.rows != d.rows || a.cols != b.cols || c.cols != d.cols {
            return Err(Error::ShapeMismatch("incompatible block shapes".into()));
        }
        let (r1, c1) = (a.rows, a.cols);
        Ok(Mat::from_fn(a.field, a.rows + b.rows, a.cols + c.cols, |i, j| {
            match (i < r1, j < c1) {
                (true, true) => a.get(i, j),
                (true, false) => c.get(i, j - c1),
                (false, true) => b.get(i - r1, j),
                (false, false) => d.get(i - r1, j - c1),
            }
        }))
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn direct_sum(&self, other: &Mat) -> Mat {
        let (r, c) = (self.rows, self.cols);
        Mat::from_fn(self.field, r + other.rows, c + other.cols, |i, j| {
            if i < r && j < c {
                self.get(i, j)
            } else if i >= r && j >= c {
                other.get(i - r, j - c)
            } else {
                0
            }
        })
    }
}

/// `D − B·A⁻¹·C` for invertible `A`.
///
/// Together with `rank(A)` it gives the rank of `[[A, C], [B, D]]`.
pub fn schur_complement(a: &Mat, b: &Mat, c: &Mat, d: &Mat) -> Result<Mat> {
    if !a.is_square() || b.cols != a.rows || c.rows != a.rows || d.rows != b.rows || d.cols != c.cols {
        return Err(Error::ShapeMismatch("incompatible Schur blocks".into()));
    }
    let a_inv = a.inverse()?;
    d.sub(&b.mul(&a_inv)?.mul(c)?)
}

pub(crate) fn rank_in_place(f: Field, data: &mut [Elem], rows: usize, cols: usize) -> usize {
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| data[i * cols + col] != 0) else {
            continue;
        };
        if p != r {
            for j in col..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(data[r * cols + col]);
        for i in r + 1..rows {
            let x = data[i * cols + col];
            if x == 0 {
                continue;
            }
            let c = f.neg(f.mul(x, inv));
            for j in col..cols {
                let v = data[r * cols + j];
                data[i * cols + j] = f.mul_add(data[i * cols + j], c, v);
            }
        }
        r += 1;
    }
    r
}
