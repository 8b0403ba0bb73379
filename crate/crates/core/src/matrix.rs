//! Dense complex matrices for multiport network computations.
//!
//! Everything in this crate works on small, well-conditioned matrices (port
//! counts up to a few hundred), so the storage is a plain row-major `Vec` and
//! the solver is partially pivoted LU with a relative singularity threshold.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;

use crate::Scalar;

/// Pivot magnitude below this fraction of the largest pivot is singular.
const PIVOT_RTOL: f64 = 1e-12;

/// A linear solve met a numerically singular matrix.
///
/// `context` names the matrix expression that failed so model-level errors can
/// report which inverse broke.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularMatrix {
    pub context: String,
}

impl SingularMatrix {
    pub fn new(context: impl Into<String>) -> Self {
        Self { context: context.into() }
    }

    /// Replaces the context, keeping the error kind.
    pub fn in_context(self, context: impl Into<String>) -> Self {
        Self::new(context)
    }
}

impl fmt::Display for SingularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "singular matrix: {}", self.context)
    }
}

impl std::error::Error for SingularMatrix {}

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> CMat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex::new(T::zero(), T::zero()); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    /// Identity scaled by a complex factor.
    pub fn scaled_identity(n: usize, c: Complex<T>) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors (all same length).
    pub fn from_columns(cols: &[Vec<Complex<T>>]) -> Self {
        let n = cols.first().map_or(0, Vec::len);
        assert!(cols.iter().all(|c| c.len() == n), "column length mismatch");
        Self::from_fn(n, cols.len(), |i, j| cols[j][i])
    }

    /// Diagonal matrix from the given entries.
    pub fn from_diagonal(diag: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn col(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conjugate(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)] * c)
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.scale(Complex::new(s, T::zero()))
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|c| c.norm()).fold(T::zero(), T::max)
    }

    /// `‖AᴴA − I‖_F`, zero for unitary matrices.
    pub fn unitarity_defect(&self) -> T {
        (&(&self.adjoint() * self) - &Self::identity(self.cols)).frobenius_norm()
    }

    /// `‖A − Aᵀ‖_F`, zero for (complex-)symmetric matrices.
    pub fn symmetry_defect(&self) -> T {
        (self - &self.transpose()).frobenius_norm()
    }

    /// Copies the `nr × nc` block with top-left corner `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "block out of range");
        Self::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Writes `src` into the block with top-left corner `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, src: &Self) {
        assert!(r0 + src.rows <= self.rows && c0 + src.cols <= self.cols, "block out of range");
        for i in 0..src.rows {
            for j in 0..src.cols {
                self[(r0 + i, c0 + j)] = src[(i, j)];
            }
        }
    }

    /// Block-diagonal concatenation of square or rectangular blocks.
    pub fn block_diag(blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            m.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        m
    }

    /// Solves `self * X = rhs` by partially pivoted LU.
    ///
    /// Reports [`SingularMatrix`] when any pivot is zero or falls below
    /// `1e-12` of the largest pivot encountered.
    pub fn solve(&self, rhs: &Self) -> Result<Self, SingularMatrix> {
        assert!(self.is_square(), "solve requires a square matrix");
        assert_eq!(self.rows, rhs.rows, "solve dimension mismatch");
        let n = self.rows;
        let m = rhs.cols;
        let mut a = self.data.clone();
        let mut b = rhs.clone();
        let mut max_pivot = T::zero();
        let mut min_pivot = T::infinity();

        for k in 0..n {
            let mut p = k;
            let mut best = a[k * n + k].norm();
            for i in (k + 1)..n {
                let mag = a[i * n + k].norm();
                if mag > best {
                    best = mag;
                    p = i;
                }
            }
            if best == T::zero() {
                return Err(SingularMatrix::new("matrix"));
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                for j in 0..m {
                    let tmp = b[(k, j)];
                    b[(k, j)] = b[(p, j)];
                    b[(p, j)] = tmp;
                }
            }
            max_pivot = max_pivot.max(best);
            min_pivot = min_pivot.min(best);

            let piv = a[k * n + k];
            for i in (k + 1)..n {
                let f = a[i * n + k] / piv;
                if f.norm_sqr() > T::zero() {
                    for j in (k + 1)..n {
                        let update = f * a[k * n + j];
                        a[i * n + j] = a[i * n + j] - update;
                    }
                    for j in 0..m {
                        let update = f * b[(k, j)];
                        b[(i, j)] = b[(i, j)] - update;
                    }
                }
                a[i * n + k] = Complex::new(T::zero(), T::zero());
            }
        }
        if min_pivot < T::of(PIVOT_RTOL) * max_pivot {
            return Err(SingularMatrix::new("matrix"));
        }

        // Back substitution on the upper-triangular system.
        for j in 0..m {
            for i in (0..n).rev() {
                let mut acc = b[(i, j)];
                for k in (i + 1)..n {
                    acc = acc - a[i * n + k] * b[(k, j)];
                }
                b[(i, j)] = acc / a[i * n + i];
            }
        }
        Ok(b)
    }

    pub fn inverse(&self) -> Result<Self, SingularMatrix> {
        self.solve(&Self::identity(self.rows))
    }
}

impl<T> Index<(usize, usize)> for CMat<T> {
    type Output = Complex<T>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMat<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Add for &CMat<T> {
    type Output = CMat<T>;

    fn add(self, other: &CMat<T>) -> CMat<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add dimension mismatch");
        CMat::from_fn(self.rows, self.cols, |i, j| self[(i, j)] + other[(i, j)])
    }
}

impl<T: Scalar> Sub for &CMat<T> {
    type Output = CMat<T>;

    fn sub(self, other: &CMat<T>) -> CMat<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub dimension mismatch");
        CMat::from_fn(self.rows, self.cols, |i, j| self[(i, j)] - other[(i, j)])
    }
}

impl<T: Scalar> Neg for &CMat<T> {
    type Output = CMat<T>;

    fn neg(self) -> CMat<T> {
        CMat::from_fn(self.rows, self.cols, |i, j| -self[(i, j)])
    }
}

impl<T: Scalar> Mul for &CMat<T> {
    type Output = CMat<T>;

    fn mul(self, other: &CMat<T>) -> CMat<T> {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let update = a * other[(k, j)];
                    out[(i, j)] = out[(i, j)] + update;
                }
            }
        }
        out
    }
}

/// Unconjugated dot product `aᵀb`.
pub fn dotu<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Complex::new(T::zero(), T::zero()), |acc, (&x, &y)| acc + x * y)
}

/// Conjugated inner product `aᴴb`.
pub fn dotc<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Complex::new(T::zero(), T::zero()), |acc, (&x, &y)| acc + x.conj() * y)
}

/// Euclidean norm of a complex vector.
pub fn norm2<T: Scalar>(a: &[Complex<T>]) -> T {
    a.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt()
}

/// Matrix-vector product `M v`.
pub fn mat_vec<T: Scalar>(m: &CMat<T>, v: &[Complex<T>]) -> Vec<Complex<T>> {
    assert_eq!(m.cols(), v.len(), "mat_vec dimension mismatch");
    (0..m.rows())
        .map(|i| (0..m.cols()).fold(Complex::new(T::zero(), T::zero()), |acc, j| acc + m[(i, j)] * v[j]))
        .collect()
}

/// Row-vector product `vᵀ M`, returned as a plain vector.
pub fn vec_mat<T: Scalar>(v: &[Complex<T>], m: &CMat<T>) -> Vec<Complex<T>> {
    assert_eq!(m.rows(), v.len(), "vec_mat dimension mismatch");
    (0..m.cols())
        .map(|j| (0..m.rows()).fold(Complex::new(T::zero(), T::zero()), |acc, i| acc + v[i] * m[(i, j)]))
        .collect()
}

/// Bilinear form `rowᵀ M col` (no conjugation).
pub fn bilinear<T: Scalar>(row: &[Complex<T>], m: &CMat<T>, col: &[Complex<T>]) -> Complex<T> {
    dotu(&vec_mat(row, m), col)
}

/// Orthonormalizes `v` in place against an orthonormal set, two passes of
/// modified Gram-Schmidt. Returns the residual norm before normalization;
/// `v` is normalized only when the residual is nonzero.
pub fn orthonormalize_against<T: Scalar>(v: &mut [Complex<T>], basis: &[Vec<Complex<T>>]) -> T {
    for _ in 0..2 {
        for q in basis {
            let coeff = dotc(q, v);
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi = *vi - coeff * qi;
            }
        }
    }
    let norm = norm2(v);
    if norm > T::zero() {
        for vi in v.iter_mut() {
            *vi = *vi / norm;
        }
    }
    norm
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_solve_is_identity() {
        let a = CMat::<f64>::identity(4);
        let x = a.solve(&CMat::identity(4)).unwrap();
        assert!((&x - &CMat::identity(4)).frobenius_norm() < 1e-14);
    }

    #[test]
    fn solve_recovers_known_solution() {
        let a = CMat::from_fn(3, 3, |i, j| {
            c(((i * 5 + 3 * j + 2) % 7) as f64 + 1.0, ((i * 2 + j * j) % 5) as f64 - 2.0)
        });
        let x_true = CMat::from_fn(3, 2, |i, j| c(0.3 * i as f64 - j as f64, 0.7 + i as f64 * j as f64));
        let b = &a * &x_true;
        let x = a.solve(&b).unwrap();
        assert!((&x - &x_true).frobenius_norm() < 1e-12);
    }

    #[test]
    fn inverse_round_trip() {
        let a = CMat::from_fn(5, 5, |i, j| {
            if i == j {
                c(3.0 + i as f64, 0.5)
            } else {
                c(0.1 * (i as f64 - j as f64), 0.05 * (i + j) as f64)
            }
        });
        let inv = a.inverse().unwrap();
        assert!((&(&a * &inv) - &CMat::identity(5)).frobenius_norm() < 1e-12);
    }

    #[test]
    fn exactly_singular_is_reported() {
        let mut a = CMat::<f64>::zeros(3, 3);
        a[(0, 0)] = c(1.0, 0.0);
        a[(1, 1)] = c(1.0, 0.0);
        // third row/column all zero
        assert!(a.solve(&CMat::identity(3)).is_err());
    }

    #[test]
    fn nearly_singular_is_reported() {
        let mut a = CMat::<f64>::identity(3);
        a[(2, 2)] = c(1e-15, 0.0);
        assert!(a.inverse().is_err());
    }

    #[test]
    fn block_roundtrip() {
        let a = CMat::from_fn(4, 5, |i, j| c(i as f64, j as f64));
        let b = a.block(1, 2, 2, 3);
        assert_eq!(b[(0, 0)], c(1.0, 2.0));
        let mut z = CMat::<f64>::zeros(4, 5);
        z.set_block(1, 2, &b);
        assert_eq!(z[(2, 4)], c(2.0, 4.0));
    }

    #[test]
    fn block_diag_layout() {
        let a = CMat::<f64>::identity(2);
        let b = CMat::from_fn(1, 1, |_, _| c(5.0, 0.0));
        let m = CMat::block_diag(&[&a, &b]);
        assert_eq!(m.rows(), 3);
        assert_eq!(m[(2, 2)], c(5.0, 0.0));
        assert_eq!(m[(0, 2)], c(0.0, 0.0));
    }

    #[test]
    fn orthonormalize_builds_orthonormal_set() {
        let q1 = {
            let mut v = vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)];
            let n = norm2(&v);
            v.iter_mut().for_each(|x| *x = *x / n);
            v
        };
        let mut v = vec![c(0.2, -0.3), c(1.0, 0.4), c(-0.5, 0.0)];
        let norm = orthonormalize_against(&mut v, std::slice::from_ref(&q1));
        assert!(norm > 0.0);
        assert!(dotc(&q1, &v).norm() < 1e-14);
        assert!((norm2(&v) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn bilinear_matches_manual_expansion() {
        let m = CMat::from_fn(2, 2, |i, j| c((i * 2 + j) as f64, 1.0));
        let r = [c(1.0, 1.0), c(0.0, -2.0)];
        let col = [c(2.0, 0.0), c(0.5, 0.5)];
        let manual = r[0] * (m[(0, 0)] * col[0] + m[(0, 1)] * col[1])
            + r[1] * (m[(1, 0)] * col[0] + m[(1, 1)] * col[1]);
        assert!((bilinear(&r, &m, &col) - manual).norm() < 1e-14);
    }
}
