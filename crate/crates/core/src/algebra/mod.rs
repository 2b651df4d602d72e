//! Exact algebra over finite superpositions of coherent states.
//!
//! Every state and operator in the crate is a finite weighted sum of coherent
//! dyads `|α⟩⟨β|` (one per mode). Overlaps, traces, moments and spectra are
//! all closed-form in the labels, so no Fock-space truncation is involved.

mod dyad;
mod spectrum;

pub use dyad::{mixture_to_dyads, single_mode_mixture, DyadOperator, DyadTerm, Mode};
pub use spectrum::{shannon_entropy, spectrum, von_neumann_entropy, LogBase, Spectrum};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{cat_overlap, creal, is_finite, lit, Amplitude, Real};

/// Labels closer than this are treated as the same coherent state.
pub(crate) const LABEL_TOL: f64 = 1e-12;

/// Threshold on `1 - Γ` below which the odd cat cannot be normalized.
const ODD_CAT_FLOOR: f64 = 1e-14;

pub(crate) fn same_label<T: Real>(a: Amplitude<T>, b: Amplitude<T>) -> bool {
    (a - b).norm() <= lit(LABEL_TOL)
}

/// Coherent-state overlap `⟨β|α⟩ = exp(-|α|²/2 - |β|²/2 + β̄α)`.
#[inline]
pub fn overlap<T: Real>(alpha: Amplitude<T>, beta: Amplitude<T>) -> Amplitude<T> {
    let half = lit::<T>(0.5);
    (creal(-half * (alpha.norm_sqr() + beta.norm_sqr())) + beta.conj() * alpha).exp()
}

/// Single-mode ket `Σᵢ cᵢ |αᵢ⟩`, stored as `(cᵢ, αᵢ)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeKet<T> {
    terms: Vec<(Amplitude<T>, Amplitude<T>)>,
}

impl<T: Real> ModeKet<T> {
    pub fn new(terms: Vec<(Amplitude<T>, Amplitude<T>)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyKet);
        }
        let ket = Self { terms };
        let n = ket.norm_sqr();
        if !(n > T::zero()) || ket.terms.iter().any(|&(c, a)| !is_finite(c) || !is_finite(a)) {
            return Err(Error::ZeroNorm(n.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(ket)
    }

    pub fn coherent(alpha: Amplitude<T>) -> Self {
        Self {
            terms: vec![(Amplitude::one(), alpha)],
        }
    }

    pub fn terms(&self) -> &[(Amplitude<T>, Amplitude<T>)] {
        &self.terms
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Amplitude<T> {
        let mut acc = Amplitude::zero();
        for &(ci, ai) in &self.terms {
            for &(dj, bj) in &other.terms {
                acc += ci.conj() * dj * overlap(bj, ai);
            }
        }
        acc
    }

    pub fn norm_sqr(&self) -> T {
        self.inner(self).re
    }

    /// `⟨self|α⟩` for a coherent state `|α⟩`.
    pub fn project(&self, alpha: Amplitude<T>) -> Amplitude<T> {
        self.terms
            .iter()
            .map(|&(c, a)| c.conj() * overlap(alpha, a))
            .sum()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if !(n > T::zero()) {
            return Err(Error::ZeroNorm(n.to_f64().unwrap_or(f64::NAN)));
        }
        let s = T::one() / n.sqrt();
        Ok(Self {
            terms: self.terms.iter().map(|&(c, a)| (c * s, a)).collect(),
        })
    }
}

/// Two-mode ket `Σᵢ cᵢ |αᵢ⟩⊗|βᵢ⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeKet<T> {
    terms: Vec<(Amplitude<T>, Amplitude<T>, Amplitude<T>)>,
}

impl<T: Real> TwoModeKet<T> {
    pub fn new(terms: Vec<(Amplitude<T>, Amplitude<T>, Amplitude<T>)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyKet);
        }
        let ket = Self { terms };
        let n = ket.norm_sqr();
        if !(n > T::zero()) {
            return Err(Error::ZeroNorm(n.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(ket)
    }

    /// `|a⟩ ⊗ |b⟩` expanded term by term.
    pub fn product(a: &ModeKet<T>, b: &ModeKet<T>) -> Self {
        let mut terms = Vec::with_capacity(a.terms.len() * b.terms.len());
        for &(ca, la) in &a.terms {
            for &(cb, lb) in &b.terms {
                terms.push((ca * cb, la, lb));
            }
        }
        Self { terms }
    }

    pub fn coherent(alpha: Amplitude<T>, beta: Amplitude<T>) -> Self {
        Self {
            terms: vec![(Amplitude::one(), alpha, beta)],
        }
    }

    pub fn terms(&self) -> &[(Amplitude<T>, Amplitude<T>, Amplitude<T>)] {
        &self.terms
    }

    pub fn inner(&self, other: &Self) -> Amplitude<T> {
        let mut acc = Amplitude::zero();
        for &(ci, ai, bi) in &self.terms {
            for &(dj, aj, bj) in &other.terms {
                acc += ci.conj() * dj * overlap(aj, ai) * overlap(bj, bi);
            }
        }
        acc
    }

    pub fn norm_sqr(&self) -> T {
        self.inner(self).re
    }
}

/// Even and odd cat states `N_{e,o}(|γ⟩ ± |−γ⟩)`, `N_{e,o} = 1/√(2(1 ± Γ))`.
///
/// Fails with [`Error::DegenerateOddCat`] when `1 - Γ < 1e-14`; the `γ → 0`
/// limit (vacuum and one photon) is only available through
/// [`crate::catalog::fock_limit_qubit`].
pub fn cat_kets<T: Real>(gamma: Amplitude<T>) -> Result<(ModeKet<T>, ModeKet<T>)> {
    let basis = CatBasis::new(gamma)?;
    Ok((basis.even, basis.odd))
}

/// The cat-qubit basis `{|γe⟩, |γo⟩}` of one mode.
#[derive(Debug, Clone)]
pub struct CatBasis<T> {
    gamma: Amplitude<T>,
    big_gamma: T,
    even: ModeKet<T>,
    odd: ModeKet<T>,
}

impl<T: Real> CatBasis<T> {
    pub fn new(gamma: Amplitude<T>) -> Result<Self> {
        if !is_finite(gamma) {
            return Err(Error::ZeroNorm(f64::NAN));
        }
        let two = lit::<T>(2.0);
        let big_gamma = cat_overlap(gamma);
        // 1 - Γ without cancellation at small |γ|.
        let one_minus = -(-two * gamma.norm_sqr()).exp_m1();
        if one_minus < lit(ODD_CAT_FLOOR) {
            return Err(Error::DegenerateOddCat(one_minus.to_f64().unwrap_or(0.0)));
        }
        let n_even = T::one() / (two * (T::one() + big_gamma)).sqrt();
        let n_odd = T::one() / (two * one_minus).sqrt();
        let even = ModeKet {
            terms: vec![(creal(n_even), gamma), (creal(n_even), -gamma)],
        };
        let odd = ModeKet {
            terms: vec![(creal(n_odd), gamma), (creal(-n_odd), -gamma)],
        };
        Ok(Self {
            gamma,
            big_gamma,
            even,
            odd,
        })
    }

    pub fn gamma(&self) -> Amplitude<T> {
        self.gamma
    }

    /// `Γ = exp(-2|γ|²)`.
    pub fn big_gamma(&self) -> T {
        self.big_gamma
    }

    pub fn even(&self) -> &ModeKet<T> {
        &self.even
    }

    pub fn odd(&self) -> &ModeKet<T> {
        &self.odd
    }

    /// Basis ket by qubit index: 0 = even, 1 = odd.
    pub fn ket(&self, k: usize) -> &ModeKet<T> {
        if k == 0 {
            &self.even
        } else {
            &self.odd
        }
    }

    /// `[⟨γe|α⟩, ⟨γo|α⟩]`.
    pub fn project(&self, alpha: Amplitude<T>) -> [Amplitude<T>; 2] {
        [self.even.project(alpha), self.odd.project(alpha)]
    }

    /// Expands `Σ_kl v_kl |k⟩⟨l|` over the cat basis into coherent dyads.
    pub fn operator(&self, v: [[Amplitude<T>; 2]; 2]) -> ModeOperator<T> {
        let mut op = ModeOperator::zero();
        for (k, row) in v.iter().enumerate() {
            for (l, &vkl) in row.iter().enumerate() {
                if vkl.is_zero() {
                    continue;
                }
                op = op.add(&ModeOperator::outer(self.ket(k), self.ket(l)).scale(vkl));
            }
        }
        op
    }
}

/// Single-mode operator as coherent dyads `Σ c |α⟩⟨β|`, stored `(c, α, β)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeOperator<T> {
    terms: Vec<(Amplitude<T>, Amplitude<T>, Amplitude<T>)>,
}

impl<T: Real> ModeOperator<T> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn from_terms(terms: Vec<(Amplitude<T>, Amplitude<T>, Amplitude<T>)>) -> Self {
        Self::zero().add(&Self { terms })
    }

    /// `|ψ⟩⟨φ|`.
    pub fn outer(psi: &ModeKet<T>, phi: &ModeKet<T>) -> Self {
        let mut terms = Vec::new();
        for &(c, a) in psi.terms() {
            for &(d, b) in phi.terms() {
                terms.push((c * d.conj(), a, b));
            }
        }
        Self::from_terms(terms)
    }

    pub fn terms(&self) -> &[(Amplitude<T>, Amplitude<T>, Amplitude<T>)] {
        &self.terms
    }

    pub fn scale(&self, s: Amplitude<T>) -> Self {
        Self {
            terms: self.terms.iter().map(|&(c, a, b)| (c * s, a, b)).collect(),
        }
    }

    /// Sum with merging of identical dyads.
    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for &(c, a, b) in &other.terms {
            match terms
                .iter_mut()
                .find(|(_, a2, b2)| same_label(a, *a2) && same_label(b, *b2))
            {
                Some(t) => t.0 += c,
                None => terms.push((c, a, b)),
            }
        }
        terms.retain(|(c, _, _)| c.norm() >= lit(dyad::PRUNE_TOL));
        Self { terms }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|&(c, a, b)| (c.conj(), b, a)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;
    use approx::assert_abs_diff_eq;

    #[test]
    fn overlap_of_opposite_amplitudes() {
        let v = overlap(c(1.0, 0.0), c(-1.0, 0.0));
        assert_abs_diff_eq!(v.re, (-2.0f64).exp(), epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.re, 0.135335283236613, epsilon = 1e-12);
    }

    #[test]
    fn vacuum_self_overlap() {
        assert_eq!(overlap(c(0.0, 0.0), c(0.0f64, 0.0)), c(1.0, 0.0));
    }

    #[test]
    fn overlap_conjugate_symmetry() {
        let a = c(0.7, 0.3);
        let b = c(0.2, -0.5);
        let ab = overlap(a, b);
        let ba = overlap(b, a);
        assert_abs_diff_eq!(ab.re, ba.re, epsilon = 1e-15);
        assert_abs_diff_eq!(ab.im, -ba.im, epsilon = 1e-15);
        assert_abs_diff_eq!(overlap(a, a).norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn cat_kets_are_orthonormal() {
        let (e, o) = cat_kets(c(1.0f64, 0.0)).unwrap();
        assert_abs_diff_eq!(e.norm_sqr(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(o.norm_sqr(), 1.0, epsilon = 1e-14);
        assert!(e.inner(&o).norm() < 1e-15);
    }

    #[test]
    fn coherent_state_in_cat_basis() {
        let big_gamma = (-2.0f64).exp();
        let (e, o) = cat_kets(c(1.0f64, 0.0)).unwrap();
        let g = ModeKet::coherent(c(1.0, 0.0));
        assert_abs_diff_eq!(g.inner(&e).re, ((1.0 + big_gamma) / 2.0).sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(g.inner(&o).re, ((1.0 - big_gamma) / 2.0).sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn odd_cat_degenerates_at_zero() {
        assert!(matches!(
            cat_kets(c(0.0f64, 0.0)),
            Err(Error::DegenerateOddCat(_))
        ));
        assert!(cat_kets(c(1e-6f64, 0.0)).is_ok());
    }

    #[test]
    fn empty_ket_rejected() {
        assert_eq!(ModeKet::<f64>::new(vec![]), Err(Error::EmptyKet));
        let cancelled = ModeKet::new(vec![(c(1.0, 0.0), c(0.5, 0.0)), (c(-1.0, 0.0), c(0.5, 0.0))]);
        assert!(matches!(cancelled, Err(Error::ZeroNorm(_))));
    }

    #[test]
    fn f32_cat_basis() {
        let (e, o) = cat_kets(c(1.0f32, 0.0)).unwrap();
        assert!((e.norm_sqr() - 1.0).abs() < 1e-5);
        assert!(e.inner(&o).norm() < 1e-5);
    }
}
