//! Small dense matrices over an arbitrary ring.
//!
//! Clifford representations in scope never exceed 16x16, and geometric
//! frames are at most 4x4, so a plain row-major `Vec` is all that is needed.
//! The same type carries exact `Complex<i64>` generators and floating data.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Num;

use crate::scalar::{Real, Ring, C};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Ring> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Self { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Column vector.
    pub fn column(data: Vec<S>) -> Self {
        let n = data.len();
        Self::from_vec(n, 1, data)
    }

    /// Row vector.
    pub fn row(data: Vec<S>) -> Self {
        let n = data.len();
        Self::from_vec(1, n, data)
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

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<S> {
        self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn map<R: Ring>(&self, f: impl Fn(&S) -> R) -> Mat<R> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Kronecker product `self ⊗ rhs`; the left factor indexes the slow digit.
    pub fn kron(&self, rhs: &Self) -> Self {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        Self::from_fn(rows, cols, |r, c| {
            self[(r / rhs.rows, c / rhs.cols)].clone() * rhs[(r % rhs.rows, c % rhs.cols)].clone()
        })
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.data[i * rhs.cols + j].clone() + a.clone() * rhs.data[k * rhs.cols + j].clone();
                    out.data[i * rhs.cols + j] = v;
                }
            }
        }
        out
    }

    /// Anticommutator `AB + BA`.
    pub fn anticommutator(&self, rhs: &Self) -> Self {
        &self.matmul(rhs) + &rhs.matmul(self)
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }
}

impl<T: Clone + Num + Neg<Output = T>> Mat<Complex<T>>
where
    Complex<T>: Ring,
{
    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }
}

impl<T: Real> Mat<C<T>> {
    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().fold(T::zero(), |s, z| s + z.norm_sqr()).sqrt()
    }

    /// Induced infinity norm (max row sum).
    pub fn norm_inf(&self) -> T {
        (0..self.rows)
            .map(|r| (0..self.cols).fold(T::zero(), |s, c| s + self[(r, c)].norm()))
            .fold(T::zero(), T::max)
    }

    pub fn from_real(m: &Mat<T>) -> Self {
        m.map(|x| C::new(*x, T::zero()))
    }

    pub fn real_part(&self) -> Mat<T> {
        self.map(|z| z.re)
    }

    /// Matrix exponential by scaling and squaring with a Taylor core.
    pub fn expm(&self) -> Self {
        assert!(self.is_square(), "expm of non-square matrix");
        let n = self.rows;
        let norm = self.norm_inf();
        let mut squarings = 0u32;
        let half = T::lit(0.5);
        let mut scaled = self.clone();
        let mut bound = norm;
        while bound > half {
            bound = bound * half;
            squarings += 1;
        }
        if squarings > 0 {
            let factor = T::lit(2.0).powi(-(squarings as i32));
            scaled = scaled.scale(&C::new(factor, T::zero()));
        }
        // |X| <= 1/2: 20 terms reach well below f64 roundoff.
        let mut term = Self::identity(n);
        let mut sum = Self::identity(n);
        for k in 1..=20 {
            let inv_k = C::new(T::one() / T::from_usize_lossy(k), T::zero());
            term = term.matmul(&scaled).scale(&inv_k);
            sum = &sum + &term;
            if term.max_abs() < T::epsilon() * T::lit(1e-3) {
                break;
            }
        }
        for _ in 0..squarings {
            sum = sum.matmul(&sum);
        }
        sum
    }

    /// Hermitian inner product of column vectors `<a, b> = a^† b`.
    pub fn dot_h(&self, rhs: &Self) -> C<T> {
        self.data
            .iter()
            .zip(rhs.data.iter())
            .fold(C::new(T::zero(), T::zero()), |s, (a, b)| s + a.conj() * b)
    }
}

impl<T: Real> Mat<T> {
    pub fn max_abs_real(&self) -> T {
        self.data.iter().fold(T::zero(), |m, x| m.max(x.abs()))
    }

    pub fn frobenius_real(&self) -> T {
        self.data.iter().fold(T::zero(), |s, x| s + *x * *x).sqrt()
    }

    /// Determinant by partial-pivot elimination.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = T::one();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| {
                    a[i * n + col]
                        .abs()
                        .partial_cmp(&a[j * n + col].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap_or(col);
            if a[pivot * n + col] == T::zero() {
                return T::zero();
            }
            if pivot != col {
                for c in 0..n {
                    a.swap(col * n + c, pivot * n + c);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det = det * p;
            for r in col + 1..n {
                let f = a[r * n + col] / p;
                for c in col..n {
                    a[r * n + c] = a[r * n + c] - f * a[col * n + c];
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        for col in 0..n {
            let pivot = (col..n).max_by(|&i, &j| {
                a[i * n + col]
                    .abs()
                    .partial_cmp(&a[j * n + col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })?;
            let p = a[pivot * n + col];
            if p.abs() <= T::min_positive_value() {
                return None;
            }
            for c in 0..n {
                a.swap(col * n + c, pivot * n + c);
                inv.swap(col * n + c, pivot * n + c);
            }
            let p = a[col * n + col];
            for c in 0..n {
                a[col * n + c] = a[col * n + c] / p;
                inv[col * n + c] = inv[col * n + c] / p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col];
                if f == T::zero() {
                    continue;
                }
                for c in 0..n {
                    a[r * n + c] = a[r * n + c] - f * a[col * n + c];
                    inv[r * n + c] = inv[r * n + c] - f * inv[col * n + c];
                }
            }
        }
        Some(Self::from_vec(n, n, inv))
    }

    /// Orthogonal factor of the polar decomposition (Newton iteration).
    ///
    /// Requires a non-singular input; used for minimal-rotation transport of
    /// normal frames between neighbouring samples.
    pub fn polar_orthogonal(&self) -> Option<Self> {
        let mut q = self.clone();
        let half = T::lit(0.5);
        for _ in 0..100 {
            let inv_t = q.inverse()?.transpose();
            let next = (&q + &inv_t).map(|x| *x * half);
            let delta = (&next - &q).max_abs_real();
            q = next;
            if delta < T::epsilon() * T::lit(8.0) {
                break;
            }
        }
        Some(q)
    }

    /// Cholesky test for symmetric positive definiteness.
    pub fn is_positive_definite(&self) -> bool {
        let n = self.rows;
        let mut l = Self::zeros(n, n);
        for j in 0..n {
            let mut d = self[(j, j)];
            for k in 0..j {
                d = d - l[(j, k)] * l[(j, k)];
            }
            if !(d > T::zero()) {
                return false;
            }
            let d = d.sqrt();
            l[(j, j)] = d;
            for i in j + 1..n {
                let mut v = self[(i, j)];
                for k in 0..j {
                    v = v - l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = v / d;
            }
        }
        true
    }

    /// Whether `self^T self = I` within `tol` entrywise.
    pub fn is_orthogonal(&self, tol: T) -> bool {
        let g = self.transpose().matmul(self);
        (&g - &Self::identity(self.cols)).max_abs_real() <= tol
    }
}

impl<S> Index<(usize, usize)> for Mat<S> {
    type Output = S;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &S {
        &self.data[r * self.cols + c]
    }
}

impl<S> IndexMut<(usize, usize)> for Mat<S> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        &mut self.data[r * self.cols + c]
    }
}

impl<S: Ring> Add for &Mat<S> {
    type Output = Mat<S>;
    fn add(self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<S: Ring> Sub for &Mat<S> {
    type Output = Mat<S>;
    fn sub(self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<S: Ring> Mul for &Mat<S> {
    type Output = Mat<S>;
    fn mul(self, rhs: &Mat<S>) -> Mat<S> {
        self.matmul(rhs)
    }
}

impl<S: Ring> Neg for &Mat<S> {
    type Output = Mat<S>;
    fn neg(self) -> Mat<S> {
        self.map(|x| -x.clone())
    }
}

/// 3-vector cross product.
pub fn cross3<T: Real>(a: &[T], b: &[T]) -> [T; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |s, (x, y)| s + *x * *y)
}

pub fn norm<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}
