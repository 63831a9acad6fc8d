//! Dense exact matrices.
//!
//! Elimination always pivots on the first nonzero entry in column order, so
//! every reduced form, kernel basis and complement in this crate is
//! deterministic.

use std::fmt;

use crate::arith::{kernel_from_rref, mat_mul, rref_in_place, with_arith, Arith};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}x{} over {}]", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| self.field.format(x)).collect();
            write!(f, "\n  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref {
    pub mat: Mat,
    pub pivots: Vec<usize>,
}

/// One solution of `A v = b` plus the kernel of `A` (as columns).
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub particular: Mat,
    pub kernel: Mat,
}

fn shape_err(what: &str, a: &Mat, b: &Mat) -> Error {
    Error::ShapeMismatch(format!(
        "{}: {}x{} vs {}x{}",
        what, a.rows, a.cols, b.rows, b.cols
    ))
}

impl Mat {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from row-major entries, checking membership in `field`.
    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        if let Some(bad) = data.iter().find(|x| !field.contains(x)) {
            return Err(Error::FieldMismatch(format!(
                "{:?} is not in {}",
                bad, field
            )));
        }
        Ok(Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Mat::from_vec(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| field.from_i64(v)))
            .collect();
        Mat {
            field: field.clone(),
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_fn(
        field: &Field,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> Scalar,
    ) -> Mat {
        let data = (0..rows * cols).map(|i| f(i / cols, i % cols)).collect();
        Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Column vector.
    pub fn column(field: &Field, entries: Vec<Scalar>) -> Mat {
        let n = entries.len();
        Mat {
            field: field.clone(),
            rows: n,
            cols: 1,
            data: entries,
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<Scalar>]) -> Mat {
        Mat::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert!(self.field.contains(&v));
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Mat::identity(&self.field, self.rows)
    }

    fn same_field(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.field, self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(shape_err("mul", self, other));
        }
        let field = &self.field;
        let data = with_arith!(field, k => {
            let a: Vec<_> = self.data.iter().map(|x| k.lift(x)).collect();
            let b: Vec<_> = other.data.iter().map(|x| k.lift(x)).collect();
            mat_mul(&k, &a, &b, self.rows, self.cols, other.cols)
                .into_iter()
                .map(|e| k.lower(e))
                .collect()
        });
        Ok(Mat {
            field: field.clone(),
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    fn zip_with(
        &self,
        other: &Mat,
        what: &str,
        f: impl Fn(&Scalar, &Scalar) -> Scalar,
    ) -> Result<Mat> {
        self.same_field(other)?;
        if self.shape() != other.shape() {
            return Err(shape_err(what, self, other));
        }
        Ok(Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.zip_with(other, "add", |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.zip_with(other, "sub", |a, b| self.field.sub(a, b))
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| self.field.mul(x, c)).collect(),
        }
    }

    pub fn neg(&self) -> Mat {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| {
            self.field.add(&acc, self.get(i, i))
        })
    }

    pub fn pow(&self, mut e: u32) -> Result<Mat> {
        if !self.is_square() {
            return Err(shape_err("pow", self, self));
        }
        let mut base = self.clone();
        let mut acc = Mat::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn rref(&self) -> Rref {
        let field = &self.field;
        let (data, pivots) = with_arith!(field, k => {
            let mut a: Vec<_> = self.data.iter().map(|x| k.lift(x)).collect();
            let pivots = rref_in_place(&k, self.rows, self.cols, &mut a);
            (a.into_iter().map(|e| k.lower(e)).collect::<Vec<_>>(), pivots)
        });
        Rref {
            mat: Mat {
                field: field.clone(),
                rows: self.rows,
                cols: self.cols,
                data,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Columns form a basis of the right null space.
    pub fn kernel_basis(&self) -> Mat {
        let field = &self.field;
        let vectors: Vec<Vec<Scalar>> = with_arith!(field, k => {
            let mut a: Vec<_> = self.data.iter().map(|x| k.lift(x)).collect();
            let pivots = rref_in_place(&k, self.rows, self.cols, &mut a);
            kernel_from_rref(&k, self.cols, &a, &pivots)
                .into_iter()
                .map(|v| v.into_iter().map(|e| k.lower(e)).collect())
                .collect()
        });
        Mat::from_columns(field, self.cols, &vectors)
    }

    /// Solves `self * v = b` for a column vector (or several right-hand
    /// sides at once). `Ok(None)` means inconsistent.
    pub fn solve(&self, b: &Mat) -> Result<Option<Solution>> {
        self.same_field(b)?;
        if b.rows != self.rows {
            return Err(shape_err("solve", self, b));
        }
        let aug = Mat::hstack(&[self.clone(), b.clone()])?;
        let Rref { mat, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut particular = Mat::zeros(&self.field, self.cols, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                particular.set(p, j, mat.get(row, self.cols + j).clone());
            }
        }
        Ok(Some(Solution {
            particular,
            kernel: self.kernel_basis(),
        }))
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(shape_err("inverse", self, self));
        }
        let n = self.rows;
        let aug = Mat::hstack(&[self.clone(), Mat::identity(&self.field, n)])?;
        let Rref { mat, pivots } = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return Err(Error::Singular);
        }
        Ok(mat.submatrix(0..n, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn kronecker(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        let (r2, c2) = other.shape();
        Ok(Mat::from_fn(
            &self.field,
            self.rows * r2,
            self.cols * c2,
            |r, c| {
                self.field
                    .mul(self.get(r / r2, c / c2), other.get(r % r2, c % c2))
            },
        ))
    }

    pub fn block_diag(field: &Field, blocks: &[Mat]) -> Result<Mat> {
        let rows = blocks.iter().map(Mat::rows).sum();
        let cols = blocks.iter().map(Mat::cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            if b.field != *field {
                return Err(Error::FieldMismatch("block_diag".into()));
            }
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    pub fn hstack(blocks: &[Mat]) -> Result<Mat> {
        let Some(first) = blocks.first() else {
            return Err(Error::ShapeMismatch("hstack of nothing".into()));
        };
        let cols = blocks.iter().map(Mat::cols).sum();
        let mut out = Mat::zeros(&first.field, first.rows, cols);
        let mut c0 = 0;
        for b in blocks {
            first.same_field(b)?;
            if b.rows != first.rows {
                return Err(shape_err("hstack", first, b));
            }
            out.set_block(0, c0, b);
            c0 += b.cols;
        }
        Ok(out)
    }

    pub fn vstack(blocks: &[Mat]) -> Result<Mat> {
        let Some(first) = blocks.first() else {
            return Err(Error::ShapeMismatch("vstack of nothing".into()));
        };
        let rows = blocks.iter().map(Mat::rows).sum();
        let mut out = Mat::zeros(&first.field, rows, first.cols);
        let mut r0 = 0;
        for b in blocks {
            first.same_field(b)?;
            if b.cols != first.cols {
                return Err(shape_err("vstack", first, b));
            }
            out.set_block(r0, 0, b);
            r0 += b.rows;
        }
        Ok(out)
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c).clone();
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        let (r0, c0) = (rows.start, cols.start);
        Mat::from_fn(&self.field, rows.len(), cols.len(), |r, c| {
            self.get(r0 + r, c0 + c).clone()
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Mat {
        Mat::from_fn(&self.field, self.rows, cols.len(), |r, c| {
            self.get(r, cols[c]).clone()
        })
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        Mat::from_fn(&self.field, rows.len(), self.cols, |r, c| {
            self.get(rows[r], c).clone()
        })
    }

    /// A maximal linearly independent subset of the columns, in order.
    pub fn column_basis(&self) -> Mat {
        let pivots = self.rref().pivots;
        self.select_columns(&pivots)
    }

    /// Row-major flattening as a column vector.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn reshape(field: &Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Mat {
        assert_eq!(data.len(), rows * cols);
        Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Left inverse of a matrix with full column rank.
    pub fn left_inverse(&self) -> Result<Mat> {
        let k = self.cols;
        let aug = Mat::hstack(&[self.clone(), Mat::identity(&self.field, self.rows)])?;
        let Rref { mat, pivots } = aug.rref();
        if pivots.len() < k || (k > 0 && pivots[k - 1] >= k) {
            return Err(Error::Singular);
        }
        Ok(mat.submatrix(0..k, k..k + self.rows))
    }

    /// `self(x) = sum_i c_i x^i` evaluated by Horner's rule.
    pub fn eval_poly(&self, poly: &crate::poly::UniPoly) -> Result<Mat> {
        if !self.is_square() {
            return Err(shape_err("eval_poly", self, self));
        }
        let n = self.rows;
        let mut acc = Mat::zeros(&self.field, n, n);
        for c in poly.coeffs().iter().rev() {
            acc = acc.mul(self)?;
            for i in 0..n {
                let v = self.field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }
}

/// Rank of a family of vectors of common length `len`.
pub fn rank_of_vectors(field: &Field, len: usize, vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let data: Vec<Scalar> = vectors.iter().flatten().cloned().collect();
    Mat::reshape(field, vectors.len(), len, data).rank()
}

/// Indices of a maximal independent subfamily, greedy in order.
pub fn independent_subset(field: &Field, len: usize, vectors: &[Vec<Scalar>]) -> Vec<usize> {
    if vectors.is_empty() {
        return Vec::new();
    }
    Mat::from_columns(field, len, vectors).rref().pivots
}

/// Incrementally maintained row-reduced basis of a subspace of `k^len`.
///
/// Used for membership tests and spans that grow one vector at a time.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Field,
    len: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: &Field, len: usize) -> Self {
        Subspace {
            field: field.clone(),
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    /// Reduces `v` against the stored basis; the result is zero iff `v` lies
    /// in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v`; returns `true` when the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let f = self.field.clone();
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[p]).expect("nonzero");
        for x in r.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // keep existing rows reduced at the new pivot
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}
