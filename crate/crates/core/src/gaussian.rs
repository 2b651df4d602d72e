//! Second moments, symplectic invariants and relative-entropy
//! non-Gaussianity of two-mode states.
//!
//! Quadratures are `q = (a + a†)/√2`, `p = (a − a†)/(i√2)`, ordered
//! `(q₁, p₁, q₂, p₂)`, so the vacuum has `σ = I/2`.

use num_traits::Zero;

use crate::algebra::{spectrum, von_neumann_entropy, DyadOperator, LogBase};
use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::scalar::{c, lit, Amplitude, Real};

/// Slack allowed in `Δ² − 4 det σ` and in `d ≥ 1/2`.
pub const SYMPLECTIC_TOL: f64 = 1e-9;

/// Covariance matrix and mean of the quadrature vector `(q₁, p₁, q₂, p₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix<T> {
    pub sigma: [[T; 4]; 4],
    pub mean: [T; 4],
}

impl<T: Real> CovarianceMatrix<T> {
    pub fn vacuum() -> Self {
        let mut sigma = [[T::zero(); 4]; 4];
        for (i, row) in sigma.iter_mut().enumerate() {
            row[i] = lit(0.5);
        }
        Self {
            sigma,
            mean: [T::zero(); 4],
        }
    }

    fn block(&self, r: usize, c: usize) -> [T; 4] {
        [
            self.sigma[r][c],
            self.sigma[r][c + 1],
            self.sigma[r + 1][c],
            self.sigma[r + 1][c + 1],
        ]
    }

    /// `(det A, det B, det C, det σ)`.
    pub fn invariants(&self) -> (T, T, T, T) {
        let det2 = |m: [T; 4]| m[0] * m[3] - m[1] * m[2];
        let flat: Vec<T> = self.sigma.iter().flatten().copied().collect();
        (
            det2(self.block(0, 0)),
            det2(self.block(2, 2)),
            det2(self.block(0, 2)),
            determinant(4, &flat),
        )
    }

    /// Matrix with modes A and B exchanged.
    pub fn swapped(&self) -> Self {
        let p = [2, 3, 0, 1];
        let mut out = *self;
        for i in 0..4 {
            out.mean[i] = self.mean[p[i]];
            for j in 0..4 {
                out.sigma[i][j] = self.sigma[p[i]][p[j]];
            }
        }
        out
    }
}

/// Symplectic eigenvalues `d₊ ≥ d₋`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticPair<T> {
    pub plus: T,
    pub minus: T,
}

/// One quadrature as `c a + c̄ a†` on a mode.
#[derive(Clone, Copy)]
struct Linear<T> {
    mode: usize,
    coeff: Amplitude<T>,
}

fn quadratures<T: Real>() -> [Linear<T>; 4] {
    let s = T::FRAC_1_SQRT_2();
    let q = c(s, T::zero());
    let p = c(T::zero(), -s);
    [
        Linear { mode: 0, coeff: q },
        Linear { mode: 0, coeff: p },
        Linear { mode: 1, coeff: q },
        Linear { mode: 1, coeff: p },
    ]
}

/// `⟨x y⟩` for single ladder operators `x`, `y` (flag `true` = creation).
fn ladder_pair<T: Real>(rho: &DyadOperator<T>, x: (usize, bool), y: (usize, bool)) -> Result<Amplitude<T>> {
    let mut exps = [(0u32, 0u32); 2];
    for &(m, dag) in &[x, y] {
        if dag {
            exps[m].0 += 1;
        } else {
            exps[m].1 += 1;
        }
    }
    let mut v = rho.normal_moment(exps[0], exps[1])?;
    // a a† = a† a + 1
    if x.0 == y.0 && !x.1 && y.1 {
        v += Amplitude::new(T::one(), T::zero());
    }
    Ok(v)
}

/// Quadrature covariance matrix from normal-ordered moments.
pub fn covariance<T: Real>(rho: &DyadOperator<T>) -> Result<CovarianceMatrix<T>> {
    if rho.modes() != 2 {
        return Err(Error::ModeMismatch {
            expected: 2,
            found: rho.modes(),
        });
    }
    let r = quadratures::<T>();
    let mut mean = [T::zero(); 4];
    for (j, q) in r.iter().enumerate() {
        let first = if q.mode == 0 { ((0, 1), (0, 0)) } else { ((0, 0), (0, 1)) };
        let a = rho.normal_moment(first.0, first.1)?;
        mean[j] = lit::<T>(2.0) * (q.coeff * a).re;
    }
    let second = |x: Linear<T>, y: Linear<T>| -> Result<Amplitude<T>> {
        let mut acc = Amplitude::zero();
        for (dx, cx) in [(false, x.coeff), (true, x.coeff.conj())] {
            for (dy, cy) in [(false, y.coeff), (true, y.coeff.conj())] {
                acc += cx * cy * ladder_pair(rho, (x.mode, dx), (y.mode, dy))?;
            }
        }
        Ok(acc)
    };
    let mut sigma = [[T::zero(); 4]; 4];
    for j in 0..4 {
        for k in j..4 {
            let sym = (second(r[j], r[k])? + second(r[k], r[j])?).re * lit(0.5);
            sigma[j][k] = sym - mean[j] * mean[k];
            sigma[k][j] = sigma[j][k];
        }
    }
    Ok(CovarianceMatrix { sigma, mean })
}

/// `d±² = ½(Δ ± √(Δ² − 4 det σ))` with `Δ = det A + det B + 2 det C`.
pub fn symplectic_eigenvalues<T: Real>(cov: &CovarianceMatrix<T>) -> Result<SymplecticPair<T>> {
    let (i1, i2, i3, i4) = cov.invariants();
    let delta = i1 + i2 + lit::<T>(2.0) * i3;
    let disc = delta * delta - lit::<T>(4.0) * i4;
    let slack = lit::<T>(SYMPLECTIC_TOL);
    if disc < -slack || !disc.is_finite() {
        return Err(Error::InvalidCovariance(disc.to_f64().unwrap_or(f64::NAN)));
    }
    let root = disc.max(T::zero()).sqrt();
    let half = lit::<T>(0.5);
    let plus = (half * (delta + root)).max(T::zero()).sqrt();
    let minus = (half * (delta - root)).max(T::zero()).sqrt();
    if minus < half - slack {
        return Err(Error::InvalidCovariance(disc.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(SymplecticPair { plus, minus })
}

/// `h(x) = (x + ½) ln(x + ½) − (x − ½) ln(x − ½)`, the entropy of a thermal
/// mode with symplectic eigenvalue `x`; `h(½) = 0`.
pub fn thermal_entropy<T: Real>(x: T) -> T {
    let half = lit::<T>(0.5);
    let xlnx = |y: T| if y > T::zero() { y * y.ln() } else { T::zero() };
    xlnx(x + half) - xlnx(x - half)
}

/// `δ_NG = S(τ) − S(ρ)` in nats, with `τ` the Gaussian state of matching moments.
pub fn non_gaussianity<T: Real>(rho: &DyadOperator<T>) -> Result<T> {
    let d = symplectic_eigenvalues(&covariance(rho)?)?;
    let s_tau = thermal_entropy(d.plus) + thermal_entropy(d.minus);
    let s_rho = von_neumann_entropy(&spectrum(rho)?, LogBase::E);
    Ok(s_tau - s_rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{mixture_to_dyads, TwoModeKet};
    use approx::assert_abs_diff_eq;

    fn coherent_pair(a: Amplitude<f64>, b: Amplitude<f64>) -> DyadOperator<f64> {
        mixture_to_dyads(&[(1.0, TwoModeKet::coherent(a, b))]).unwrap()
    }

    #[test]
    fn vacuum_is_half_identity() {
        let cov = covariance(&coherent_pair(c(0.0, 0.0), c(0.0, 0.0))).unwrap();
        let vac = CovarianceMatrix::vacuum();
        for i in 0..4 {
            assert_eq!(cov.mean[i], 0.0);
            for j in 0..4 {
                assert_abs_diff_eq!(cov.sigma[i][j], vac.sigma[i][j], epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn coherent_mean_and_spread() {
        let cov = covariance(&coherent_pair(c(1.0, 0.5), c(-0.3, 0.2))).unwrap();
        assert_abs_diff_eq!(cov.mean[0], 2f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(cov.mean[1], 0.5 * 2f64.sqrt(), epsilon = 1e-12);
        for i in 0..4 {
            for j in 0..4 {
                let e = if i == j { 0.5 } else { 0.0 };
                assert_abs_diff_eq!(cov.sigma[i][j], e, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn thermal_like_block() {
        let mut cov = CovarianceMatrix::<f64>::vacuum();
        cov.sigma[0][0] = 2.0;
        cov.sigma[1][1] = 0.5;
        cov.sigma[2][2] = 2.0;
        cov.sigma[3][3] = 0.5;
        let d = symplectic_eigenvalues(&cov).unwrap();
        assert_abs_diff_eq!(d.plus, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d.minus, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn entropy_function() {
        assert_eq!(thermal_entropy(0.5f64), 0.0);
        assert!(thermal_entropy(1.0f64) > thermal_entropy(0.8));
        // x = 3/2: 2 ln 2
        assert_abs_diff_eq!(thermal_entropy(1.5f64), 2.0 * 2f64.ln(), epsilon = 1e-14);
    }

    #[test]
    fn coherent_state_is_gaussian() {
        let ng = non_gaussianity(&coherent_pair(c(0.7, 0.1), c(0.2, -0.9))).unwrap();
        assert_abs_diff_eq!(ng, 0.0, epsilon = 1e-9);
    }

    #[test]
    fn unphysical_matrix_is_rejected() {
        let mut cov = CovarianceMatrix::<f64>::vacuum();
        for i in 0..4 {
            cov.sigma[i][i] = 0.1;
        }
        assert!(matches!(symplectic_eigenvalues(&cov), Err(Error::InvalidCovariance(_))));
    }
}
