//! Wigner and Husimi functions of coherent-dyad operators, and the
//! negativity-volume quadrature built on their product structure.
//!
//! Phase-space points are complex amplitudes `α = (q + ip)/√2`. Both
//! quasiprobabilities are normalized in those units, `∫ W d²α = 1` with
//! `d²α = d(Re α) d(Im α)`, which makes `∫|W|` equal to the integral over
//! `dq dp` of the `(q, p)`-normalized function.

mod cat_line;
mod quadrature;

pub use cat_line::{CatLineTable, LineCoefficients};
pub use quadrature::{
    gauss_legendre, negativity_volume, probe_minimum, wigner_integrals, ConvergencePolicy, GridSums,
    ModeGrid, NegativityEstimate, QuadratureSpec, WignerFactorTable, DEFAULT_MARGIN, DEFAULT_NODES,
    MAX_NODES,
};

use num_traits::Zero;

use crate::algebra::{overlap, DyadOperator};
use crate::error::{Error, Result};
use crate::scalar::{c, is_finite, lit, Amplitude, Real};

/// Imaginary parts of a Wigner sum above this (times the coefficient mass)
/// indicate a non-Hermitian operator.
pub const RESIDUE_TOL: f64 = 1e-10;

/// Which quasiprobability a kernel evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kernel {
    Wigner,
    Husimi,
}

impl Kernel {
    /// Kernel of the dyad `|α⟩⟨β|` at `z`.
    #[inline]
    pub fn eval<T: Real>(self, alpha: Amplitude<T>, beta: Amplitude<T>, z: Amplitude<T>) -> Amplitude<T> {
        match self {
            Kernel::Wigner => wigner_dyad_kernel(alpha, beta, z),
            Kernel::Husimi => husimi_dyad_kernel(alpha, beta, z),
        }
    }
}

/// A point in one- or two-mode phase space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint<T> {
    coords: [Amplitude<T>; 2],
    modes: usize,
}

impl<T: Real> PhasePoint<T> {
    pub fn single(z: Amplitude<T>) -> Self {
        Self {
            coords: [z, Amplitude::zero()],
            modes: 1,
        }
    }

    pub fn pair(z1: Amplitude<T>, z2: Amplitude<T>) -> Self {
        Self {
            coords: [z1, z2],
            modes: 2,
        }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn coords(&self) -> &[Amplitude<T>] {
        &self.coords[..self.modes]
    }

    pub fn is_finite(&self) -> bool {
        self.coords().iter().all(|&z| is_finite(z))
    }
}

/// `α = (q + ip)/√2`.
pub fn amplitude_from_quadratures<T: Real>(q: T, p: T) -> Amplitude<T> {
    c(q, p) * T::FRAC_1_SQRT_2()
}

/// Wigner function of `|α⟩⟨β|` at `z`:
/// `(2/π) ⟨β|α⟩ exp(-2(z - α)(z̄ - β̄))`.
#[inline]
pub fn wigner_dyad_kernel<T: Real>(alpha: Amplitude<T>, beta: Amplitude<T>, z: Amplitude<T>) -> Amplitude<T> {
    let two = lit::<T>(2.0);
    let pref = T::FRAC_2_PI();
    overlap(alpha, beta) * ((z - alpha) * (z - beta).conj() * (-two)).exp() * pref
}

/// Husimi function of `|α⟩⟨β|` at `z`: `⟨z|α⟩⟨β|z⟩/π`.
#[inline]
pub fn husimi_dyad_kernel<T: Real>(alpha: Amplitude<T>, beta: Amplitude<T>, z: Amplitude<T>) -> Amplitude<T> {
    overlap(alpha, z) * overlap(z, beta) * T::FRAC_1_PI()
}

fn evaluate<T: Real>(kind: Kernel, rho: &DyadOperator<T>, point: &PhasePoint<T>) -> Result<(T, T, T)> {
    if point.modes() != rho.modes() {
        return Err(Error::ModeMismatch {
            expected: rho.modes(),
            found: point.modes(),
        });
    }
    let mut acc = Amplitude::zero();
    let mut mass = T::zero();
    for t in rho.terms() {
        let mut v = t.coeff;
        for (m, &z) in point.coords().iter().enumerate() {
            v *= kind.eval(t.ket[m], t.bra[m], z);
        }
        mass += t.coeff.norm();
        acc += v;
    }
    Ok((acc.re, acc.im, mass))
}

/// Wigner function of `ρ` at `point`.
///
/// Fails with [`Error::ImaginaryResidue`] when the term sum has an imaginary
/// part above `1e-10` per unit of coefficient mass.
pub fn wigner<T: Real>(rho: &DyadOperator<T>, point: &PhasePoint<T>) -> Result<T> {
    let (re, im, mass) = evaluate(Kernel::Wigner, rho, point)?;
    if im.abs() > lit::<T>(RESIDUE_TOL) * mass.max(T::one()) {
        return Err(Error::ImaginaryResidue(im.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(re)
}

/// Husimi function `⟨z|ρ|z⟩/π^modes` at `point`.
pub fn husimi<T: Real>(rho: &DyadOperator<T>, point: &PhasePoint<T>) -> Result<T> {
    let (re, im, mass) = evaluate(Kernel::Husimi, rho, point)?;
    if im.abs() > lit::<T>(RESIDUE_TOL) * mass.max(T::one()) {
        return Err(Error::ImaginaryResidue(im.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(re)
}

/// Smallest Wigner value of a single-mode operator over a uniform
/// `points × points` grid of half-width `half_width` (amplitude units).
pub fn single_mode_minimum<T: Real>(rho: &DyadOperator<T>, half_width: T, points: usize) -> Result<T> {
    let grid = ModeGrid::uniform(half_width, points)?;
    let mut min = T::infinity();
    for &z in grid.points() {
        min = min.min(wigner(rho, &PhasePoint::single(z))?);
    }
    Ok(min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cat_kets, DyadOperator};
    use approx::assert_abs_diff_eq;

    #[test]
    fn coherent_peak_value() {
        for g in [c(0.0, 0.0), c(1.0, 0.5), c(-2.0, 0.3)] {
            let w = wigner_dyad_kernel(g, g, g);
            assert_abs_diff_eq!(w.re, 2.0 / std::f64::consts::PI, epsilon = 1e-15);
            assert_abs_diff_eq!(w.im, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn diagonal_kernel_is_gaussian() {
        let a = c(0.4f64, -0.2);
        let z = c(1.0, 0.3);
        let w = wigner_dyad_kernel(a, a, z);
        let expected = 2.0 / std::f64::consts::PI * (-2.0 * (z - a).norm_sqr()).exp();
        assert_abs_diff_eq!(w.re, expected, epsilon = 1e-15);
    }

    #[test]
    fn odd_cat_origin_is_minus_two_over_pi() {
        for g in [0.3, 1.0, 2.5] {
            let (_, o) = cat_kets(c(g, 0.0)).unwrap();
            let rho = DyadOperator::pure(&o).unwrap();
            let w = wigner(&rho, &PhasePoint::single(c(0.0, 0.0))).unwrap();
            assert_abs_diff_eq!(w, -2.0 / std::f64::consts::PI, epsilon = 1e-10);
        }
    }

    #[test]
    fn non_hermitian_operator_is_rejected() {
        let rho = DyadOperator::from_terms(
            1,
            [crate::algebra::DyadTerm {
                coeff: c(1.0, 0.0),
                ket: [c(1.0, 0.0), c(0.0, 0.0)],
                bra: [c(0.0, 1.0), c(0.0, 0.0)],
            }],
        )
        .unwrap();
        assert!(matches!(
            wigner(&rho, &PhasePoint::single(c(0.2, 0.1))),
            Err(Error::ImaginaryResidue(_))
        ));
    }

    #[test]
    fn vacuum_husimi_at_origin() {
        let rho = DyadOperator::coherent(c(0.0, 0.0));
        let q = husimi(&rho, &PhasePoint::single(c(0.0, 0.0))).unwrap();
        assert_abs_diff_eq!(q, 1.0 / std::f64::consts::PI, epsilon = 1e-15);
    }

    #[test]
    fn point_mode_count_must_match() {
        let rho = DyadOperator::coherent(c(0.0, 0.0));
        assert!(matches!(
            wigner(&rho, &PhasePoint::pair(c(0.0, 0.0), c(0.0, 0.0))),
            Err(Error::ModeMismatch { .. })
        ));
    }

    #[test]
    fn quadrature_convention() {
        let a = amplitude_from_quadratures(2f64.sqrt(), 0.0);
        assert_abs_diff_eq!(a.re, 1.0, epsilon = 1e-15);
    }
}
