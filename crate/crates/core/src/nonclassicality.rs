//! Mandel parameter (per mode and SU(2)-optimized) and two-mode quadrature
//! squeezing.

use rayon::prelude::*;

use crate::algebra::{DyadOperator, Mode};
use crate::error::{Error, Result};
use crate::gaussian::covariance;
use crate::scalar::{c, lit, Amplitude, Real};
use crate::search::nelder_mead;

/// Mean photon numbers below this make `Q` undefined.
pub const MIN_PHOTON_NUMBER: f64 = 1e-14;
/// SU(2) modes holding less than this fraction of the total photon number
/// are skipped: `⟨a†²a²⟩ − ⟨a†a⟩²` is pure rounding there.
pub const MIN_MODE_FRACTION: f64 = 1e-4;

/// `(ᾱ₁, ᾱ₂) = (cos θ, e^{iφ} sin θ)`, the mode `a(α) = ᾱ₁* a₁ + ᾱ₂* a₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2ModeParams {
    pub theta: f64,
    pub phi: f64,
}

impl Su2ModeParams {
    pub fn new(theta: f64, phi: f64) -> Self {
        let two_pi = 2.0 * std::f64::consts::PI;
        Self {
            theta: theta.clamp(0.0, std::f64::consts::FRAC_PI_2),
            phi: phi.rem_euclid(two_pi),
        }
    }

    /// Folds any real `(θ, φ)` onto the same mode with `θ ∈ [0, π/2]`.
    pub fn canonical(theta: f64, phi: f64) -> Self {
        let (s, co) = theta.sin_cos();
        let pi = std::f64::consts::PI;
        let flips = (s < 0.0) as u8 + (co < 0.0) as u8;
        Self::new(s.abs().atan2(co.abs()), phi + pi * flips as f64)
    }

    pub fn coefficients<T: Real>(&self) -> [Amplitude<T>; 2] {
        let (s, co) = self.theta.sin_cos();
        [
            c(lit(co), T::zero()),
            c(lit(s * self.phi.cos()), lit(s * self.phi.sin())),
        ]
    }
}

/// Nelder–Mead starts taken from the best grid points, besides the bare modes.
const GRID_STARTS: usize = 4;

/// Grid and refinement settings for [`mandel_q_su2`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Search {
    pub theta_points: usize,
    pub phi_points: usize,
    pub tol: f64,
    pub max_iters: u64,
}

impl Default for Su2Search {
    fn default() -> Self {
        Self {
            theta_points: 64,
            phi_points: 64,
            tol: 1e-7,
            max_iters: 400,
        }
    }
}

/// `Q = (⟨a†²a²⟩ − ⟨a†a⟩²)/⟨a†a⟩` for one mode.
pub fn mandel_q_mode<T: Real>(rho: &DyadOperator<T>, mode: Mode) -> Result<T> {
    let exps = |e: (u32, u32)| match mode {
        Mode::A => (e, (0, 0)),
        Mode::B => ((0, 0), e),
    };
    if mode.index() >= rho.modes() {
        return Err(Error::InvalidMode(mode.index()));
    }
    let (f1, s1) = exps((1, 1));
    let (f2, s2) = exps((2, 2));
    let n = rho.normal_moment(f1, s1)?.re;
    let n2 = rho.normal_moment(f2, s2)?.re;
    if n < lit(MIN_PHOTON_NUMBER) {
        return Err(Error::VanishingPhotonNumber(n.to_f64().unwrap_or(f64::NAN)));
    }
    Ok((n2 - n * n) / n)
}

/// Moments `⟨a_i† a_j⟩` and `⟨a_i† a_j† a_k a_l⟩` of a two-mode state.
#[derive(Debug, Clone)]
pub struct PhotonMoments<T> {
    floor: T,
    first: [[Amplitude<T>; 2]; 2],
    second: [[[[Amplitude<T>; 2]; 2]; 2]; 2],
}

impl<T: Real> PhotonMoments<T> {
    pub fn new(rho: &DyadOperator<T>) -> Result<Self> {
        if rho.modes() != 2 {
            return Err(Error::ModeMismatch {
                expected: 2,
                found: rho.modes(),
            });
        }
        let moment = |cr: &[usize], an: &[usize]| -> Result<Amplitude<T>> {
            let mut e = [(0u32, 0u32); 2];
            for &m in cr {
                e[m].0 += 1;
            }
            for &m in an {
                e[m].1 += 1;
            }
            rho.normal_moment(e[0], e[1])
        };
        let zero = Amplitude::new(T::zero(), T::zero());
        let mut first = [[zero; 2]; 2];
        let mut second = [[[[zero; 2]; 2]; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                first[i][j] = moment(&[i], &[j])?;
                for k in 0..2 {
                    for l in 0..2 {
                        second[i][j][k][l] = moment(&[i, j], &[k, l])?;
                    }
                }
            }
        }
        let total = first[0][0].re + first[1][1].re;
        let floor = (total * lit(MIN_MODE_FRACTION)).max(lit(MIN_PHOTON_NUMBER));
        Ok(Self { floor, first, second })
    }

    /// `(⟨a†a⟩, ⟨a†²a²⟩)` of the mode `a(α)`.
    pub fn mode_moments(&self, p: &Su2ModeParams) -> (T, T) {
        let a = p.coefficients::<T>();
        let ac = [a[0].conj(), a[1].conj()];
        let mut n = Amplitude::new(T::zero(), T::zero());
        let mut n2 = n;
        for i in 0..2 {
            for j in 0..2 {
                n += a[i] * ac[j] * self.first[i][j];
                for k in 0..2 {
                    for l in 0..2 {
                        n2 += a[i] * a[j] * ac[k] * ac[l] * self.second[i][j][k][l];
                    }
                }
            }
        }
        (n.re, n2.re)
    }

    /// `Q(ρ; α)`, or `None` when the mode is (nearly) empty.
    pub fn q(&self, p: &Su2ModeParams) -> Option<T> {
        let (n, n2) = self.mode_moments(p);
        (n >= self.floor).then(|| (n2 - n * n) / n)
    }
}

/// `min_α Q(ρ; α)` over SU(2)-mixed modes: grid search, then Nelder–Mead
/// from the best grid points and from the bare modes. Ties go to the
/// bare mode `θ = 0`.
pub fn mandel_q_su2<T: Real>(rho: &DyadOperator<T>, search: &Su2Search) -> Result<(T, Su2ModeParams)> {
    let moments = PhotonMoments::new(rho)?;
    let nt = search.theta_points.max(2);
    let np = search.phi_points.max(1);
    let half_pi = std::f64::consts::FRAC_PI_2;
    let two_pi = 2.0 * std::f64::consts::PI;
    let grid: Vec<Su2ModeParams> = (0..nt)
        .flat_map(|i| {
            (0..np).map(move |j| {
                Su2ModeParams::new(half_pi * i as f64 / (nt - 1) as f64, two_pi * j as f64 / np as f64)
            })
        })
        .collect();
    let values: Vec<Option<f64>> = grid
        .par_iter()
        .map(|p| moments.q(p).and_then(|v| v.to_f64()))
        .collect();
    let mut ranked: Vec<(f64, Su2ModeParams)> = grid
        .iter()
        .zip(&values)
        .filter_map(|(p, v)| v.map(|v| (v, *p)))
        .collect();
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (mut best_v, mut best_p) = *ranked.first().ok_or(Error::VanishingPhotonNumber(0.0))?;
    // Unconstrained in (θ, φ) so optima next to a bare mode stay reachable.
    let objective = |x: &[f64]| {
        moments
            .q(&Su2ModeParams::canonical(x[0], x[1]))
            .and_then(|v| v.to_f64())
            .unwrap_or(f64::INFINITY)
    };
    let bare_starts = [(0.0, 0.0), (0.0, half_pi), (half_pi, 0.0), (half_pi, half_pi)];
    let starts = ranked
        .iter()
        .take(GRID_STARTS)
        .map(|(_, p)| (p.theta, p.phi))
        .chain(bare_starts);
    for (theta, phi) in starts {
        let refined = nelder_mead(objective, &[theta, phi], half_pi / nt as f64, search.tol * search.tol, search.max_iters);
        if refined.value < best_v {
            best_v = refined.value;
            best_p = Su2ModeParams::canonical(refined.x[0], refined.x[1]);
        }
    }
    // Prefer the smallest θ among equivalent optima: θ = π/2 and θ = 0 are
    // related by the mode exchange, which leaves symmetric states unchanged.
    let bare = Su2ModeParams::new(0.0, 0.0);
    if let Some(v0) = moments.q(&bare).and_then(|v| v.to_f64()) {
        if v0 <= best_v + search.tol * best_v.abs().max(1.0) {
            best_v = v0;
            best_p = bare;
        }
    }
    Ok((lit(best_v), best_p))
}

/// Quadrature squeezing `(D₁, D₂)` with `D_j = 4(ΔX_j)² − 1`,
/// `X₁ = (q₁ + q₂)/2`, `X₂ = (p₁ + p₂)/2`.
pub fn squeezing_d<T: Real>(rho: &DyadOperator<T>) -> Result<(T, T)> {
    let s = covariance(rho)?.sigma;
    let one = T::one();
    let two = lit::<T>(2.0);
    Ok((
        s[0][0] + s[2][2] + two * s[0][2] - one,
        s[1][1] + s[3][3] + two * s[1][3] - one,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{mixture_to_dyads, TwoModeKet};
    use approx::assert_abs_diff_eq;

    #[test]
    fn coherent_state_is_poissonian() {
        let rho = mixture_to_dyads(&[(1.0, TwoModeKet::coherent(c(0.8, 0.3), c(-1.1, 0.0)))]).unwrap();
        assert_abs_diff_eq!(mandel_q_mode(&rho, Mode::A).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(mandel_q_mode(&rho, Mode::B).unwrap(), 0.0, epsilon = 1e-12);
        let (q, _) = mandel_q_su2(&rho, &Su2Search::default()).unwrap();
        assert_abs_diff_eq!(q, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn vacuum_has_no_mandel_parameter() {
        let rho = mixture_to_dyads(&[(1.0, TwoModeKet::coherent(c(0.0, 0.0), c(0.0, 0.0)))]).unwrap();
        assert!(matches!(
            mandel_q_mode(&rho, Mode::A),
            Err(Error::VanishingPhotonNumber(_))
        ));
    }

    #[test]
    fn vacuum_has_no_squeezing() {
        let rho = mixture_to_dyads(&[(1.0, TwoModeKet::coherent(c(0.0, 0.0), c(0.0, 0.0)))]).unwrap();
        let (d1, d2) = squeezing_d(&rho).unwrap();
        assert_abs_diff_eq!(d1, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(d2, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn params_normalize() {
        let p = Su2ModeParams::new(0.4, 7.0);
        let a = p.coefficients::<f64>();
        assert_abs_diff_eq!(a[0].norm_sqr() + a[1].norm_sqr(), 1.0, epsilon = 1e-15);
        assert!(p.phi < 2.0 * std::f64::consts::PI);
    }
}
