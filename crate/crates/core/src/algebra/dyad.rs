use num_traits::{One, Zero};

use super::{overlap, same_label, ModeKet, ModeOperator, TwoModeKet};
use crate::error::{Error, Result};
use crate::scalar::{lit, Amplitude, Real};

/// Merged dyad coefficients below this magnitude are dropped.
pub(crate) const PRUNE_TOL: f64 = 1e-15;

/// Which mode of a two-mode operator an action refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    A,
    B,
}

impl Mode {
    pub fn index(self) -> usize {
        match self {
            Mode::A => 0,
            Mode::B => 1,
        }
    }

    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            0 => Ok(Mode::A),
            1 => Ok(Mode::B),
            _ => Err(Error::InvalidMode(i)),
        }
    }
}

/// One term `c |α_A⟩⟨β_A| ⊗ |α_B⟩⟨β_B|`. Single-mode operators leave the
/// second slot at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DyadTerm<T> {
    pub coeff: Amplitude<T>,
    pub ket: [Amplitude<T>; 2],
    pub bra: [Amplitude<T>; 2],
}

impl<T: Real> DyadTerm<T> {
    fn same_labels(&self, other: &Self, modes: usize) -> bool {
        (0..modes).all(|m| same_label(self.ket[m], other.ket[m]) && same_label(self.bra[m], other.bra[m]))
    }

    /// `Tr(|α⟩⟨β|) = ⟨β|α⟩` per mode, times the coefficient.
    fn trace(&self, modes: usize) -> Amplitude<T> {
        (0..modes).fold(self.coeff, |acc, m| acc * overlap(self.ket[m], self.bra[m]))
    }
}

/// Density operator (or any operator) as a finite sum of coherent dyads on
/// one or two modes.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadOperator<T> {
    modes: usize,
    terms: Vec<DyadTerm<T>>,
}

impl<T: Real> DyadOperator<T> {
    /// Builds an operator, merging terms with identical labels and pruning
    /// negligible coefficients.
    pub fn from_terms(modes: usize, terms: impl IntoIterator<Item = DyadTerm<T>>) -> Result<Self> {
        if modes == 0 || modes > 2 {
            return Err(Error::InvalidMode(modes));
        }
        let mut op = Self {
            modes,
            terms: Vec::new(),
        };
        for t in terms {
            op.push(t);
        }
        op.prune();
        Ok(op)
    }

    fn push(&mut self, mut t: DyadTerm<T>) {
        for m in self.modes..2 {
            t.ket[m] = Amplitude::zero();
            t.bra[m] = Amplitude::zero();
        }
        let modes = self.modes;
        match self.terms.iter_mut().find(|s| s.same_labels(&t, modes)) {
            Some(s) => s.coeff += t.coeff,
            None => self.terms.push(t),
        }
    }

    fn prune(&mut self) {
        let floor = lit::<T>(PRUNE_TOL);
        self.terms.retain(|t| t.coeff.norm() >= floor);
    }

    /// Single-mode coherent projector `|α⟩⟨α|`.
    pub fn coherent(alpha: Amplitude<T>) -> Self {
        Self {
            modes: 1,
            terms: vec![DyadTerm {
                coeff: Amplitude::one(),
                ket: [alpha, Amplitude::zero()],
                bra: [alpha, Amplitude::zero()],
            }],
        }
    }

    /// `|ψ⟩⟨ψ|` for a normalized single-mode ket.
    pub fn pure(psi: &ModeKet<T>) -> Result<Self> {
        single_mode_mixture(&[(T::one(), psi.clone())])
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn terms(&self) -> &[DyadTerm<T>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn trace(&self) -> Amplitude<T> {
        self.terms.iter().map(|t| t.trace(self.modes)).sum()
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> T {
        let mut acc = Amplitude::zero();
        for s in &self.terms {
            for t in &self.terms {
                let mut v = s.coeff * t.coeff;
                for m in 0..self.modes {
                    v = v * overlap(t.ket[m], s.bra[m]) * overlap(s.ket[m], t.bra[m]);
                }
                acc += v;
            }
        }
        acc.re
    }

    pub fn adjoint(&self) -> Self {
        Self {
            modes: self.modes,
            terms: self
                .terms
                .iter()
                .map(|t| DyadTerm {
                    coeff: t.coeff.conj(),
                    ket: t.bra,
                    bra: t.ket,
                })
                .collect(),
        }
    }

    pub fn scaled(&self, s: Amplitude<T>) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coeff *= s;
        }
        out
    }

    /// Term-wise sum.
    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.check_modes(other.modes)?;
        Self::from_terms(self.modes, self.terms.iter().chain(&other.terms).copied())
    }

    /// Largest merged coefficient of `self - other`: zero iff the two
    /// operators agree term by term.
    pub fn term_distance(&self, other: &Self) -> Result<T> {
        self.check_modes(other.modes)?;
        let mut diff = Self {
            modes: self.modes,
            terms: Vec::new(),
        };
        for t in &self.terms {
            diff.push(*t);
        }
        for t in &other.terms {
            diff.push(DyadTerm {
                coeff: -t.coeff,
                ..*t
            });
        }
        Ok(diff
            .terms
            .iter()
            .map(|t| t.coeff.norm())
            .fold(T::zero(), T::max))
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.term_distance(other).map(|d| d <= tol).unwrap_or(false)
    }

    /// Term distance between the operator and its adjoint.
    pub fn hermiticity_defect(&self) -> T {
        self.term_distance(&self.adjoint()).unwrap_or_else(|_| T::infinity())
    }

    /// `self ⊗ other` for two single-mode operators.
    pub fn tensor(a: &Self, b: &Self) -> Result<Self> {
        a.check_modes(1)?;
        b.check_modes(1)?;
        let mut terms = Vec::with_capacity(a.len() * b.len());
        for s in &a.terms {
            for t in &b.terms {
                terms.push(DyadTerm {
                    coeff: s.coeff * t.coeff,
                    ket: [s.ket[0], t.ket[0]],
                    bra: [s.bra[0], t.bra[0]],
                });
            }
        }
        Self::from_terms(2, terms)
    }

    /// Distinct coherent labels (ket and bra side) on one mode.
    pub fn labels(&self, mode: Mode) -> Result<Vec<Amplitude<T>>> {
        self.check_mode(mode)?;
        let m = mode.index();
        let mut out: Vec<Amplitude<T>> = Vec::new();
        for t in &self.terms {
            for l in [t.ket[m], t.bra[m]] {
                if !out.iter().any(|&o| same_label(o, l)) {
                    out.push(l);
                }
            }
        }
        Ok(out)
    }

    /// Largest `|α|` among all labels.
    pub fn max_label_norm(&self) -> T {
        self.terms
            .iter()
            .flat_map(|t| t.ket.iter().chain(&t.bra).take(2 * self.modes))
            .map(|l| l.norm())
            .fold(T::zero(), T::max)
    }

    /// `Tr(ρ a₁†^{m1} a₁^{n1} a₂†^{m2} a₂^{n2})`, using
    /// `⟨β|a†^m a^n|α⟩ = β̄^m αⁿ ⟨β|α⟩` per dyad.
    pub fn normal_moment(&self, first: (u32, u32), second: (u32, u32)) -> Result<Amplitude<T>> {
        if self.modes == 1 && second != (0, 0) {
            return Err(Error::ModeMismatch {
                expected: 2,
                found: 1,
            });
        }
        let exps = [first, second];
        Ok(self
            .terms
            .iter()
            .map(|t| {
                (0..self.modes).fold(t.coeff, |acc, m| {
                    let (cr, an) = exps[m];
                    acc * t.bra[m].conj().powu(cr) * t.ket[m].powu(an) * overlap(t.ket[m], t.bra[m])
                })
            })
            .sum())
    }

    /// Reduced operator on `keep`: `Tr_B(|α⟩⟨β| ⊗ |μ⟩⟨ν|) = ⟨ν|μ⟩ |α⟩⟨β|`.
    pub fn partial_trace(&self, keep: Mode) -> Result<Self> {
        self.check_modes(2)?;
        let k = keep.index();
        let traced = 1 - k;
        Self::from_terms(
            1,
            self.terms.iter().map(|t| DyadTerm {
                coeff: t.coeff * overlap(t.ket[traced], t.bra[traced]),
                ket: [t.ket[k], Amplitude::zero()],
                bra: [t.bra[k], Amplitude::zero()],
            }),
        )
    }

    /// `K ρ K†` with `K` acting on `mode` only.
    pub fn conjugate_mode(&self, mode: Mode, op: &ModeOperator<T>) -> Result<Self> {
        self.apply_kraus(mode, std::slice::from_ref(op))
    }

    /// `Σ_K (K ⊗ I) ρ (K ⊗ I)†` with the Kraus operators acting on `mode`.
    pub fn apply_kraus(&self, mode: Mode, kraus: &[ModeOperator<T>]) -> Result<Self> {
        self.check_mode(mode)?;
        let m = mode.index();
        let mut out = Self {
            modes: self.modes,
            terms: Vec::new(),
        };
        for k in kraus {
            for t in &self.terms {
                // K|α⟩ = Σ u ⟨b|α⟩ |a⟩ ;  ⟨β|K† = Σ ū ⟨β|b'⟩ ⟨a'|
                for &(u, a, b) in k.terms() {
                    let left = u * overlap(t.ket[m], b);
                    for &(u2, a2, b2) in k.terms() {
                        let right = u2.conj() * overlap(b2, t.bra[m]);
                        let mut nt = *t;
                        nt.coeff = t.coeff * left * right;
                        nt.ket[m] = a;
                        nt.bra[m] = a2;
                        out.push(nt);
                    }
                }
            }
        }
        out.prune();
        Ok(out)
    }

    fn check_modes(&self, expected: usize) -> Result<()> {
        if self.modes != expected {
            return Err(Error::ModeMismatch {
                expected,
                found: self.modes,
            });
        }
        Ok(())
    }

    fn check_mode(&self, mode: Mode) -> Result<()> {
        if mode.index() >= self.modes {
            return Err(Error::InvalidMode(mode.index()));
        }
        Ok(())
    }
}

fn check_weights<T: Real>(weights: impl Iterator<Item = T>) -> Result<T> {
    let mut total = T::zero();
    for w in weights {
        if w < T::zero() || !w.is_finite() {
            return Err(Error::NegativeWeight(w.to_f64().unwrap_or(f64::NAN)));
        }
        total += w;
    }
    if !(total > T::zero()) {
        return Err(Error::ZeroTotalWeight);
    }
    Ok(total)
}

/// Expands `Σ_k p_k |ψ_k⟩⟨ψ_k|` into merged two-mode dyads. Each ket is
/// normalized and the weights are rescaled to sum to one.
pub fn mixture_to_dyads<T: Real>(components: &[(T, TwoModeKet<T>)]) -> Result<DyadOperator<T>> {
    let total = check_weights(components.iter().map(|(w, _)| *w))?;
    let mut terms = Vec::new();
    for (w, ket) in components {
        if *w == T::zero() {
            continue;
        }
        let p = *w / (total * ket.norm_sqr());
        for &(ci, ai, bi) in ket.terms() {
            for &(cj, aj, bj) in ket.terms() {
                terms.push(DyadTerm {
                    coeff: ci * cj.conj() * p,
                    ket: [ai, bi],
                    bra: [aj, bj],
                });
            }
        }
    }
    DyadOperator::from_terms(2, terms)
}

/// Single-mode analogue of [`mixture_to_dyads`].
pub fn single_mode_mixture<T: Real>(components: &[(T, ModeKet<T>)]) -> Result<DyadOperator<T>> {
    let total = check_weights(components.iter().map(|(w, _)| *w))?;
    let zero = Amplitude::zero();
    let mut terms = Vec::new();
    for (w, ket) in components {
        if *w == T::zero() {
            continue;
        }
        let p = *w / (total * ket.norm_sqr());
        for &(ci, ai) in ket.terms() {
            for &(cj, aj) in ket.terms() {
                terms.push(DyadTerm {
                    coeff: ci * cj.conj() * p,
                    ket: [ai, zero],
                    bra: [aj, zero],
                });
            }
        }
    }
    DyadOperator::from_terms(1, terms)
}
