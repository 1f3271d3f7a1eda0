//! Dense real linear algebra: a row-major matrix, covariance, and the
//! symmetric (and symmetric-definite generalized) eigenproblems.
//!
//! Eigenproblems are solved with cyclic Jacobi rotations. Output is
//! deterministic: eigenvalues are sorted non-increasing (stable with respect
//! to the solver's column order on ties) and every eigenvector is signed so
//! that its largest-magnitude component is positive.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Convergence threshold on the off-diagonal Frobenius norm, relative to ‖A‖_F.
const JACOBI_TOLERANCE: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;
/// Relative asymmetry accepted by [`sym_eig`] before it reports a shape error.
const SYMMETRY_TOLERANCE: f64 = 1e-9;

/// Row-major dense matrix of finite `f64` values.
#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Builds a matrix from row-major data, rejecting wrong lengths and NaN/Inf.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            let cols = cols.max(1);
            return Err(Error::NonFinite {
                row: pos / cols,
                col: pos % cols,
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        let mut data = vec![0.0; n * n];
        for (i, &v) in diag.iter().enumerate() {
            data[i * n + i] = v;
        }
        Matrix::new(n, n, data)
    }

    /// Builds a matrix from a list of equally long rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Matrix::new(rows.len(), cols, data)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns<C: AsRef<[f64]>>(columns: &[C]) -> Result<Self> {
        Ok(Matrix::from_rows(columns)?.transpose())
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
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[f64]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Matrix product `self · other`.
    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// New matrix made of the listed rows, in the listed order.
    pub fn select_rows(&self, indices: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            rows: indices.len(),
            cols: self.cols,
            data,
        }
    }

    /// New matrix made of the listed columns, in the listed order.
    pub fn select_columns(&self, indices: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(indices.len() * self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            data.extend(indices.iter().map(|&j| row[j]));
        }
        Matrix {
            rows: self.rows,
            cols: indices.len(),
            data,
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Element-wise `self - other`.
    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "cannot subtract {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, factor: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    /// Largest absolute element-wise difference; `None` if shapes differ.
    pub fn max_abs_diff(&self, other: &Matrix) -> Option<f64> {
        (self.shape() == other.shape()).then(|| {
            self.data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
    }

    /// Per-row arithmetic means.
    pub fn row_means(&self) -> Vec<f64> {
        let n = self.cols.max(1) as f64;
        self.row_iter().map(|r| r.iter().sum::<f64>() / n).collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in self.row_iter() {
            writeln!(f, "  {r:?}")?;
        }
        write!(f, "]")
    }
}

/// Covariance of the columns of `x` (d features × N samples), divided by N.
///
/// With `centered` the per-row mean is subtracted first; without it the
/// result is the raw second moment `X·Xᵀ / N`.
pub fn covariance(x: &Matrix, centered: bool) -> Result<Matrix> {
    let (d, n) = x.shape();
    if n < 2 {
        return Err(Error::InsufficientData(format!(
            "covariance needs at least 2 samples, got {n}"
        )));
    }
    let means = if centered {
        x.row_means()
    } else {
        vec![0.0; d]
    };
    let centered_rows: Vec<Vec<f64>> = x
        .row_iter()
        .zip(&means)
        .map(|(r, m)| r.iter().map(|v| v - m).collect())
        .collect();
    let mut cov = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let s: f64 = centered_rows[i]
                .iter()
                .zip(&centered_rows[j])
                .map(|(a, b)| a * b)
                .sum();
            let v = s / n as f64;
            cov[(i, j)] = v;
            cov[(j, i)] = v;
        }
    }
    Ok(cov)
}

/// Lower-triangular Cholesky factor `L` with `A = L·Lᵀ`, or `None` when `A`
/// is not (numerically) positive definite.
pub fn cholesky(a: &Matrix) -> Option<Matrix> {
    if !a.is_square() {
        return None;
    }
    let n = a.rows();
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut diag = a[(j, j)];
        for k in 0..j {
            diag -= l[(j, k)] * l[(j, k)];
        }
        if !(diag > 0.0) {
            return None;
        }
        let ljj = diag.sqrt();
        l[(j, j)] = ljj;
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / ljj;
        }
    }
    Some(l)
}

/// Eigenvalues sorted non-increasing, with eigenvector `i` in column `i`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
}

impl EigenDecomposition {
    /// Eigenvector `i` as an owned vector.
    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.eigenvectors.column(i)
    }

    /// `E·Λ·Eᵀ`.
    pub fn reconstruct(&self) -> Matrix {
        let n = self.eigenvectors.rows();
        let mut out = Matrix::zeros(n, n);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            for i in 0..n {
                let vi = self.eigenvectors[(i, k)] * lambda;
                if vi == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += vi * self.eigenvectors[(j, k)];
                }
            }
        }
        out
    }
}

/// Full eigendecomposition of a symmetric matrix.
///
/// The input is symmetrized as `(A + Aᵀ)/2` before solving; inputs whose
/// asymmetry exceeds `1e-9·(1 + ‖A‖_F)` are rejected.
pub fn sym_eig(a: &Matrix) -> Result<EigenDecomposition> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let asym = a.max_abs_diff(&a.transpose()).unwrap_or(0.0);
    if asym > SYMMETRY_TOLERANCE * (1.0 + a.frobenius_norm()) {
        return Err(Error::Shape(format!(
            "matrix is not symmetric (max |A - Aᵀ| = {asym:e})"
        )));
    }
    let n = a.rows();
    let mut work = a.clone();
    for i in 0..n {
        for j in i + 1..n {
            let v = 0.5 * (a[(i, j)] + a[(j, i)]);
            work[(i, j)] = v;
            work[(j, i)] = v;
        }
    }
    let (values, vectors) = jacobi(work)?;
    Ok(sorted_decomposition(values, vectors))
}

/// Solves `S_b·v = λ·(S_w + ridge·I)·v` for all `d` pairs.
///
/// `S_w + ridge·I = L·Lᵀ` is whitened away, the symmetric problem
/// `L⁻¹·S_b·L⁻ᵀ` is solved, and eigenvectors are mapped back with `L⁻ᵀ`
/// and rescaled to unit length.
pub fn generalized_sym_eig(sb: &Matrix, sw: &Matrix, ridge: f64) -> Result<EigenDecomposition> {
    if !sb.is_square() || sb.shape() != sw.shape() {
        return Err(Error::Shape(format!(
            "scatter matrices must be square and equal-sized, got {}x{} and {}x{}",
            sb.rows(),
            sb.cols(),
            sw.rows(),
            sw.cols()
        )));
    }
    if !(ridge >= 0.0) || !ridge.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "ridge must be >= 0, got {ridge}"
        )));
    }
    let n = sw.rows();
    let mut regularized = sw.clone();
    for i in 0..n {
        regularized[(i, i)] += ridge;
    }
    let l = cholesky(&regularized).ok_or(Error::SingularScatter { ridge })?;

    // M = L⁻¹ · S_b · L⁻ᵀ, via two triangular solves.
    let y = forward_substitute(&l, sb); // L⁻¹ S_b
    let m = forward_substitute(&l, &y.transpose()).transpose(); // (L⁻¹ (L⁻¹ S_b)ᵀ)ᵀ
    let inner = sym_eig(&m)?;

    // v = L⁻ᵀ u, then normalize.
    let v = backward_substitute_transposed(&l, &inner.eigenvectors);
    let mut vectors = Matrix::zeros(n, n);
    for k in 0..n {
        let mut col = v.column(k);
        let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            col.iter_mut().for_each(|x| *x /= norm);
        }
        canonical_sign(&mut col);
        for i in 0..n {
            vectors[(i, k)] = col[i];
        }
    }
    Ok(EigenDecomposition {
        eigenvalues: inner.eigenvalues,
        eigenvectors: vectors,
    })
}

/// Solves `L·X = B` for lower-triangular `L`.
fn forward_substitute(l: &Matrix, b: &Matrix) -> Matrix {
    let n = l.rows();
    let mut x = Matrix::zeros(n, b.cols());
    for c in 0..b.cols() {
        for i in 0..n {
            let mut s = b[(i, c)];
            for k in 0..i {
                s -= l[(i, k)] * x[(k, c)];
            }
            x[(i, c)] = s / l[(i, i)];
        }
    }
    x
}

/// Solves `Lᵀ·X = B` for lower-triangular `L`.
fn backward_substitute_transposed(l: &Matrix, b: &Matrix) -> Matrix {
    let n = l.rows();
    let mut x = Matrix::zeros(n, b.cols());
    for c in 0..b.cols() {
        for i in (0..n).rev() {
            let mut s = b[(i, c)];
            for k in i + 1..n {
                s -= l[(k, i)] * x[(k, c)];
            }
            x[(i, c)] = s / l[(i, i)];
        }
    }
    x
}

/// Cyclic Jacobi on a symmetric matrix. Returns unsorted eigenvalues and
/// the accumulated rotation matrix (eigenvectors in columns).
fn jacobi(mut a: Matrix) -> Result<(Vec<f64>, Matrix)> {
    let n = a.rows();
    let mut v = Matrix::identity(n);
    let norm = a.frobenius_norm();
    if norm == 0.0 || n < 2 {
        return Ok(((0..n).map(|i| a[(i, i)]).collect(), v));
    }
    let threshold = JACOBI_TOLERANCE * norm;

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < threshold {
            return Ok(((0..n).map(|i| a[(i, i)]).collect(), v));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
    }
    if off_diagonal_norm(&a) < threshold {
        return Ok(((0..n).map(|i| a[(i, i)]).collect(), v));
    }
    Err(Error::NoConvergence {
        sweeps: JACOBI_MAX_SWEEPS,
    })
}

/// Applies `A ← Jᵀ·A·J`, `V ← V·J` for the plane rotation in (p, q).
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Flips `v` so that its largest-magnitude component (first on ties) is positive.
pub(crate) fn canonical_sign(v: &mut [f64]) {
    let mut best = 0usize;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v.get(best).is_some_and(|&x| x < 0.0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

fn sorted_decomposition(values: Vec<f64>, vectors: Matrix) -> EigenDecomposition {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    // Stable: equal eigenvalues keep the solver's column order.
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    let mut sorted = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = vectors.column(src);
        canonical_sign(&mut col);
        for i in 0..n {
            sorted[(i, dst)] = col[i];
        }
    }
    EigenDecomposition {
        eigenvalues: order.iter().map(|&i| values[i]).collect(),
        eigenvectors: sorted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn matmul_examples() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        assert_eq!(Matrix::identity(2).matmul(&a).unwrap(), a);

        let p = Matrix::from_rows(&[[1.0, 0.0], [0.0, 0.0]]).unwrap();
        let b = Matrix::from_rows(&[[0.0], [5.0]]).unwrap();
        assert_eq!(p.matmul(&b).unwrap().as_slice(), &[0.0, 0.0]);

        let c = Matrix::from_rows(&[[5.0], [6.0]]).unwrap();
        assert_eq!(a.matmul(&c).unwrap().as_slice(), &[17.0, 39.0]);
    }

    #[test]
    fn matmul_dimension_mismatch() {
        let a = Matrix::zeros(2, 3);
        assert!(matches!(
            a.matmul(&Matrix::zeros(2, 3)),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn construction_rejects_non_finite_and_bad_length() {
        assert!(matches!(
            Matrix::new(1, 2, vec![1.0, f64::NAN]),
            Err(Error::NonFinite { row: 0, col: 1 })
        ));
        assert!(matches!(Matrix::new(2, 2, vec![1.0]), Err(Error::Shape(_))));
    }

    #[test]
    fn covariance_examples() {
        // samples as columns
        let x = Matrix::from_columns(&[[1.0, 1.0], [-1.0, -1.0]]).unwrap();
        let c = covariance(&x, true).unwrap();
        assert_eq!(c.as_slice(), &[1.0, 1.0, 1.0, 1.0]);

        let x = Matrix::from_columns(&[[1.0, 0.0], [-1.0, 0.0]]).unwrap();
        assert_eq!(
            covariance(&x, true).unwrap().as_slice(),
            &[1.0, 0.0, 0.0, 0.0]
        );

        let x = Matrix::from_columns(&[[3.0, -2.0], [3.0, -2.0], [3.0, -2.0]]).unwrap();
        assert_eq!(covariance(&x, true).unwrap(), Matrix::zeros(2, 2));
    }

    #[test]
    fn covariance_uncentered_is_second_moment() {
        let x = Matrix::from_columns(&[[1.0, 2.0], [3.0, 4.0]]).unwrap();
        let c = covariance(&x, false).unwrap();
        assert_eq!(c.as_slice(), &[5.0, 7.0, 7.0, 10.0]);
    }

    #[test]
    fn covariance_needs_two_samples() {
        let x = Matrix::from_columns(&[[1.0, 2.0]]).unwrap();
        assert!(matches!(
            covariance(&x, true),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn sym_eig_diagonal() {
        let e = sym_eig(&Matrix::from_diag(&[3.0, 1.0]).unwrap()).unwrap();
        assert_eq!(e.eigenvalues, vec![3.0, 1.0]);
        assert_eq!(e.vector(0), vec![1.0, 0.0]);
        assert_eq!(e.vector(1), vec![0.0, 1.0]);

        // unsorted diagonal gets reordered
        let e = sym_eig(&Matrix::from_diag(&[1.0, 3.0]).unwrap()).unwrap();
        assert_eq!(e.eigenvalues, vec![3.0, 1.0]);
        assert_eq!(e.vector(0), vec![0.0, 1.0]);
    }

    #[test]
    fn sym_eig_swap_matrix() {
        let a = Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        let e = sym_eig(&a).unwrap();
        assert_close(e.eigenvalues[0], 1.0, 1e-14);
        assert_close(e.eigenvalues[1], -1.0, 1e-14);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v0 = e.vector(0);
        let v1 = e.vector(1);
        assert_close(v0[0], h, 1e-14);
        assert_close(v0[1], h, 1e-14);
        // (1,-1)/√2: both components tie in magnitude, first one is made positive
        assert_close(v1[0], h, 1e-14);
        assert_close(v1[1], -h, 1e-14);
    }

    #[test]
    fn sym_eig_zero_matrix_is_deterministic() {
        let e = sym_eig(&Matrix::zeros(3, 3)).unwrap();
        assert_eq!(e.eigenvalues, vec![0.0; 3]);
        assert_eq!(e.eigenvectors, Matrix::identity(3));
    }

    #[test]
    fn sym_eig_rejects_non_square_and_asymmetric() {
        assert!(matches!(
            sym_eig(&Matrix::zeros(2, 3)),
            Err(Error::Shape(_))
        ));
        let a = Matrix::from_rows(&[[1.0, 2.0], [0.0, 1.0]]).unwrap();
        assert!(matches!(sym_eig(&a), Err(Error::Shape(_))));
    }

    #[test]
    fn generalized_examples() {
        let sb = Matrix::from_diag(&[2.0, 0.0]).unwrap();
        let e = generalized_sym_eig(&sb, &Matrix::identity(2), 0.0).unwrap();
        assert_eq!(e.eigenvalues, vec![2.0, 0.0]);
        assert_eq!(e.vector(0), vec![1.0, 0.0]);

        let sw = Matrix::from_diag(&[1.0, 4.0]).unwrap();
        let e = generalized_sym_eig(&Matrix::identity(2), &sw, 0.0).unwrap();
        assert_close(e.eigenvalues[0], 1.0, 1e-14);
        assert_close(e.eigenvalues[1], 0.25, 1e-14);
    }

    #[test]
    fn generalized_singular_scatter() {
        let sb = Matrix::identity(2);
        let sw = Matrix::from_diag(&[1.0, 0.0]).unwrap();
        assert!(matches!(
            generalized_sym_eig(&sb, &sw, 0.0),
            Err(Error::SingularScatter { .. })
        ));
        let e = generalized_sym_eig(&sb, &sw, 1e-6).unwrap();
        assert_close(e.eigenvalues[0], 1e6, 1e-6);
        assert_close(e.eigenvalues[1], 1.0 / (1.0 + 1e-6), 1e-12);
        assert!(generalized_sym_eig(&sb, &sw, -1.0).is_err());
    }

    #[test]
    fn cholesky_roundtrip() {
        let a = Matrix::from_rows(&[[4.0, 2.0], [2.0, 3.0]]).unwrap();
        let l = cholesky(&a).unwrap();
        assert!(l.matmul(&l.transpose()).unwrap().max_abs_diff(&a).unwrap() < 1e-14);
        assert!(cholesky(&Matrix::from_diag(&[1.0, -1.0]).unwrap()).is_none());
    }

    #[test]
    fn canonical_sign_flips_on_negative_peak() {
        let mut v = vec![0.1, -0.9, 0.2];
        canonical_sign(&mut v);
        assert_eq!(v, vec![-0.1, 0.9, -0.2]);
    }
}
