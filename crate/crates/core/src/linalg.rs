//! Small dense linear algebra: every matrix in this crate is at most a few
//! dozen rows, so plain row-major storage and Jacobi iterations suffice.

use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::{lit, Real};

const JACOBI_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds from row-major real entries.
    pub fn from_real(n: usize, entries: &[T]) -> Self {
        assert_eq!(entries.len(), n * n);
        Self::from_fn(n, |i, j| Complex::new(entries[i * n + j], T::zero()))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// Largest deviation from Hermiticity, `max |A - A†|`.
    pub fn hermiticity_defect(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Self {
        let half = lit::<T>(0.5);
        Self::from_fn(self.n, |i, j| (self[(i, j)] + self[(j, i)].conj()) * half)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.n, other.n);
        Self::from_fn(n * m, |i, j| self[(i / m, j / m)] * other[(i % m, j % m)])
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex<T>]> {
        self.data.chunks(self.n)
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.n + j]
    }
}

impl<T: Real> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;

    fn mul(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// Eigen-decomposition of a Hermitian matrix: eigenvalues in descending order,
/// eigenvectors as the matching columns of `vectors`.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: CMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    /// Rebuilds `V f(Λ) V†`.
    pub fn map_values(&self, f: impl Fn(T) -> T) -> CMatrix<T> {
        let n = self.values.len();
        let fv: Vec<T> = self.values.iter().map(|&v| f(v)).collect();
        CMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self.vectors[(i, k)] * self.vectors[(j, k)].conj() * fv[k])
                .sum()
        })
    }

    pub fn max_value(&self) -> T {
        self.values.first().copied().unwrap_or_else(T::zero)
    }
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot with a diagonal unitary,
/// then applies a real Givens rotation. Iterates until the off-diagonal
/// Frobenius norm is below `1e-13` relative to the full norm.
pub fn eigh<T: Real>(matrix: &CMatrix<T>) -> HermitianEigen<T> {
    let n = matrix.dim();
    let mut a = matrix.hermitian_part();
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm();
    let threshold = lit::<T>(JACOBI_TOL) * scale;

    for _ in 0..MAX_SWEEPS {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<T>()
            .sqrt();
        if off <= threshold || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(j, j)]
            .re
            .partial_cmp(&a[(i, i)].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = CMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    HermitianEigen { values, vectors }
}

fn rotate<T: Real>(a: &mut CMatrix<T>, v: &mut CMatrix<T>, p: usize, q: usize) {
    let n = a.dim();
    let apq = a[(p, q)];
    let r = apq.norm();
    if r <= T::min_positive_value() {
        return;
    }
    // Make the pivot real: column q picks up e^{-iφ}, row q e^{iφ}.
    let phase = apq / r;
    let conj_phase = phase.conj();
    for k in 0..n {
        a[(k, q)] *= conj_phase;
        v[(k, q)] *= conj_phase;
    }
    for k in 0..n {
        a[(q, k)] *= phase;
    }

    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (lit::<T>(2.0) * r);
    let t = if theta >= T::zero() {
        T::one() / (theta + (theta * theta + T::one()).sqrt())
    } else {
        -T::one() / (-theta + (theta * theta + T::one()).sqrt())
    };
    let cs = T::one() / (t * t + T::one()).sqrt();
    let sn = t * cs;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * cs - akq * sn;
        a[(k, q)] = akp * sn + akq * cs;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * cs - aqk * sn;
        a[(q, k)] = apk * sn + aqk * cs;
    }
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * cs - vkq * sn;
        v[(k, q)] = vkp * sn + vkq * cs;
    }
}

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues within rounding of zero (`n ε λ_max`) are set to zero, since
/// their square roots would turn `1e-16` noise into `1e-8` errors.
pub fn sqrt_psd<T: Real>(matrix: &CMatrix<T>) -> CMatrix<T> {
    let e = eigh(matrix);
    let floor = e.max_value().abs() * T::epsilon() * lit::<T>(4.0 * matrix.dim() as f64);
    e.map_values(|x| if x > floor { x.sqrt() } else { T::zero() })
}

/// Eigenvalues of a real symmetric matrix given row-major, descending.
pub fn symmetric_eigenvalues<T: Real>(n: usize, entries: &[T]) -> Vec<T> {
    eigh(&CMatrix::from_real(n, entries)).values
}

/// Singular values of a real `rows × cols` matrix (row-major), descending,
/// by one-sided (Hestenes) Jacobi orthogonalization of the columns.
pub fn singular_values<T: Real>(rows: usize, cols: usize, entries: &[T]) -> Vec<T> {
    assert_eq!(entries.len(), rows * cols);
    let mut columns: Vec<Vec<T>> = (0..cols)
        .map(|j| (0..rows).map(|i| entries[i * cols + j]).collect())
        .collect();
    let eps = T::epsilon();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let alpha: T = columns[p].iter().map(|&x| x * x).sum();
                let beta: T = columns[q].iter().map(|&x| x * x).sum();
                let gamma: T = columns[p]
                    .iter()
                    .zip(&columns[q])
                    .map(|(&x, &y)| x * y)
                    .sum();
                if gamma.abs() <= eps * (alpha * beta).sqrt() || gamma == T::zero() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (lit::<T>(2.0) * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let cs = T::one() / (T::one() + t * t).sqrt();
                let sn = cs * t;
                for i in 0..rows {
                    let x = columns[p][i];
                    let y = columns[q][i];
                    columns[p][i] = cs * x - sn * y;
                    columns[q][i] = sn * x + cs * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<T> = columns
        .iter()
        .map(|c| c.iter().map(|&x| x * x).sum::<T>().sqrt())
        .collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    sv
}

/// Determinant of a real square matrix (row-major) by partial-pivot LU.
pub fn determinant<T: Real>(n: usize, entries: &[T]) -> T {
    assert_eq!(entries.len(), n * n);
    let mut a = entries.to_vec();
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
            for k in 0..n {
                a.swap(col * n + k, pivot * n + k);
            }
            det = -det;
        }
        let d = a[col * n + col];
        det *= d;
        for i in (col + 1)..n {
            let f = a[i * n + col] / d;
            for k in col..n {
                let v = a[col * n + k];
                a[i * n + k] -= f * v;
            }
        }
    }
    det
}
