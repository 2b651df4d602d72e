//! Named states and the local maps that relate them.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{
    mixture_to_dyads, single_mode_mixture, CatBasis, DyadOperator, Mode, ModeKet, ModeOperator, TwoModeKet,
};
use crate::error::{Error, Result};
use crate::qubit::QubitDensityMatrix;
use crate::scalar::{c, lit, Amplitude, Real};

/// Trace change above this after a map signals support outside the cat qubit.
pub const TRACE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateId {
    RhoPP,
    RhoPM,
    SigmaQPP,
    SigmaQPM,
    SigmaCPP,
    SigmaCPM,
    /// Common single-mode marginal of the `ρ` pair.
    Marginal,
    CoherentProduct,
    EvenCat,
    OddCat,
}

impl StateId {
    pub const ALL: [StateId; 10] = [
        StateId::RhoPP,
        StateId::RhoPM,
        StateId::SigmaQPP,
        StateId::SigmaQPM,
        StateId::SigmaCPP,
        StateId::SigmaCPM,
        StateId::Marginal,
        StateId::CoherentProduct,
        StateId::EvenCat,
        StateId::OddCat,
    ];

    /// The six two-mode states of the `ρ`, `σ_q`, `σ_c` families.
    pub const PAIRS: [StateId; 6] = [
        StateId::RhoPP,
        StateId::RhoPM,
        StateId::SigmaQPP,
        StateId::SigmaQPM,
        StateId::SigmaCPP,
        StateId::SigmaCPM,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StateId::RhoPP => "rho_pp",
            StateId::RhoPM => "rho_pm",
            StateId::SigmaQPP => "sigma_q_pp",
            StateId::SigmaQPM => "sigma_q_pm",
            StateId::SigmaCPP => "sigma_c_pp",
            StateId::SigmaCPM => "sigma_c_pm",
            StateId::Marginal => "marginal",
            StateId::CoherentProduct => "coherent_product",
            StateId::EvenCat => "even_cat",
            StateId::OddCat => "odd_cat",
        }
    }

    pub fn modes(self) -> usize {
        match self {
            StateId::Marginal | StateId::EvenCat | StateId::OddCat => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StateId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let key = s.trim().to_ascii_lowercase();
        let alias = match key.as_str() {
            "pp" => "rho_pp",
            "pm" => "rho_pm",
            "sq_pp" => "sigma_q_pp",
            "sq_pm" => "sigma_q_pm",
            "sc_pp" => "sigma_c_pp",
            "sc_pm" => "sigma_c_pm",
            other => other,
        };
        StateId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == alias)
            .ok_or_else(|| format!("unknown state '{s}'"))
    }
}

/// Builds the named state at cat amplitude `γ`.
///
/// States containing the odd cat fail with [`Error::DegenerateOddCat`] at
/// `γ = 0`; use [`fock_limit_qubit`] for that limit.
pub fn build<T: Real>(id: StateId, gamma: Amplitude<T>) -> Result<DyadOperator<T>> {
    let quarter = lit::<T>(0.25);
    let half = lit::<T>(0.5);
    let plus = || ModeKet::coherent(gamma);
    let minus = || ModeKet::coherent(-gamma);
    match id {
        StateId::CoherentProduct => mixture_to_dyads(&[(T::one(), TwoModeKet::coherent(gamma, gamma))]),
        StateId::SigmaQPP => mixture_to_dyads(&[
            (half, TwoModeKet::coherent(gamma, gamma)),
            (half, TwoModeKet::coherent(-gamma, -gamma)),
        ]),
        StateId::SigmaQPM => mixture_to_dyads(&[
            (half, TwoModeKet::coherent(gamma, -gamma)),
            (half, TwoModeKet::coherent(-gamma, gamma)),
        ]),
        _ => {
            let basis = CatBasis::new(gamma)?;
            let (e, o) = (basis.even(), basis.odd());
            match id {
                StateId::RhoPP => mixture_to_dyads(&[
                    (quarter, TwoModeKet::coherent(gamma, gamma)),
                    (quarter, TwoModeKet::coherent(-gamma, -gamma)),
                    (quarter, TwoModeKet::product(e, e)),
                    (quarter, TwoModeKet::product(o, o)),
                ]),
                StateId::RhoPM => mixture_to_dyads(&[
                    (quarter, TwoModeKet::coherent(gamma, -gamma)),
                    (quarter, TwoModeKet::coherent(-gamma, gamma)),
                    (quarter, TwoModeKet::product(e, o)),
                    (quarter, TwoModeKet::product(o, e)),
                ]),
                StateId::SigmaCPP => {
                    mixture_to_dyads(&[(half, TwoModeKet::product(e, e)), (half, TwoModeKet::product(o, o))])
                }
                StateId::SigmaCPM => {
                    mixture_to_dyads(&[(half, TwoModeKet::product(e, o)), (half, TwoModeKet::product(o, e))])
                }
                StateId::Marginal => single_mode_mixture(&[
                    (quarter, plus()),
                    (quarter, minus()),
                    (quarter, e.clone()),
                    (quarter, o.clone()),
                ]),
                StateId::EvenCat => DyadOperator::pure(e),
                StateId::OddCat => DyadOperator::pure(o),
                StateId::CoherentProduct | StateId::SigmaQPP | StateId::SigmaQPM => unreachable!(),
            }
        }
    }
}

/// Qubit matrix of a two-mode state in the `γ → 0` limit, where the cat
/// basis becomes `{|0⟩, |1⟩}` and `|±γ⟩ → |0⟩`.
pub fn fock_limit_qubit<T: Real>(id: StateId) -> Result<QubitDensityMatrix<T>> {
    let f = |w: [f64; 4]| QubitDensityMatrix::diagonal(w.map(lit::<T>), None);
    match id {
        StateId::RhoPP => f([0.75, 0.0, 0.0, 0.25]),
        StateId::RhoPM => f([0.5, 0.25, 0.25, 0.0]),
        StateId::SigmaQPP | StateId::SigmaQPM | StateId::CoherentProduct => f([1.0, 0.0, 0.0, 0.0]),
        StateId::SigmaCPP => f([0.5, 0.0, 0.0, 0.5]),
        StateId::SigmaCPM => f([0.0, 0.5, 0.5, 0.0]),
        other => Err(Error::NoFockLimit(other.name().into())),
    }
}

fn check_trace<T: Real>(before: &DyadOperator<T>, after: &DyadOperator<T>) -> Result<()> {
    let loss = (before.trace() - after.trace()).norm();
    if loss > lit(TRACE_TOL) {
        return Err(Error::SupportLeakage(loss.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(())
}

/// Kraus operators `|γ⟩⟨γe|` and `|−γ⟩⟨γo|` of the channel `Φ`.
pub fn phi_kraus<T: Real>(gamma: Amplitude<T>) -> Result<[ModeOperator<T>; 2]> {
    let basis = CatBasis::new(gamma)?;
    Ok([
        ModeOperator::outer(&ModeKet::coherent(gamma), basis.even()),
        ModeOperator::outer(&ModeKet::coherent(-gamma), basis.odd()),
    ])
}

/// `(Φ ⊗ Φ)(ρ)`, `Φ(X) = |γ⟩⟨γe|X|γe⟩⟨γ| + |−γ⟩⟨γo|X|γo⟩⟨−γ|`.
pub fn channel_phi<T: Real>(rho: &DyadOperator<T>, gamma: Amplitude<T>) -> Result<DyadOperator<T>> {
    let kraus = phi_kraus(gamma)?;
    let mut out = rho.clone();
    for m in 0..rho.modes() {
        out = out.apply_kraus(Mode::from_index(m)?, &kraus)?;
    }
    check_trace(rho, &out)?;
    Ok(out)
}

/// `S_x = |γe⟩⟨γo| + |γo⟩⟨γe|` as coherent dyads.
pub fn sx_operator<T: Real>(gamma: Amplitude<T>) -> Result<ModeOperator<T>> {
    let one = c(T::one(), T::zero());
    let zero = c(T::zero(), T::zero());
    Ok(CatBasis::new(gamma)?.operator([[zero, one], [one, zero]]))
}

/// `(S_x ⊗ I) ρ (S_x ⊗ I)` with `S_x` on `side`.
pub fn apply_local_sx<T: Real>(rho: &DyadOperator<T>, side: Mode, gamma: Amplitude<T>) -> Result<DyadOperator<T>> {
    let out = rho.conjugate_mode(side, &sx_operator(gamma)?)?;
    check_trace(rho, &out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::spectrum;
    use crate::qubit::qubit_matrix;
    use approx::assert_abs_diff_eq;

    #[test]
    fn names_round_trip() {
        for id in StateId::ALL {
            assert_eq!(id.name().parse::<StateId>().unwrap(), id);
        }
        assert_eq!("pm".parse::<StateId>().unwrap(), StateId::RhoPM);
        assert!("rho".parse::<StateId>().is_err());
    }

    #[test]
    fn states_are_normalized() {
        for id in StateId::ALL {
            let rho = build(id, c(0.9f64, 0.2)).unwrap();
            assert_abs_diff_eq!(rho.trace().re, 1.0, epsilon = 1e-12);
            assert!(rho.hermiticity_defect() < 1e-12);
            assert_eq!(rho.modes(), id.modes());
        }
    }

    #[test]
    fn odd_cat_states_need_nonzero_gamma() {
        assert!(matches!(
            build(StateId::RhoPP, c(0.0f64, 0.0)),
            Err(Error::DegenerateOddCat(_))
        ));
        assert!(build(StateId::SigmaQPP, c(0.0f64, 0.0)).is_ok());
    }

    #[test]
    fn classical_pair_is_diagonal() {
        let q = qubit_matrix(&build(StateId::SigmaCPP, c(1.3f64, 0.0)).unwrap(), c(1.3, 0.0)).unwrap();
        let expected = QubitDensityMatrix::diagonal([0.5, 0.0, 0.0, 0.5], None).unwrap();
        assert!(q.matrix().max_abs_diff(expected.matrix()) < 1e-12);
    }

    #[test]
    fn sx_is_an_involution() {
        let g = c(0.7f64, 0.0);
        let rho = build(StateId::RhoPM, g).unwrap();
        let twice = apply_local_sx(&apply_local_sx(&rho, Mode::A, g).unwrap(), Mode::A, g).unwrap();
        assert!(twice.approx_eq(&rho, 1e-12));
    }

    #[test]
    fn leakage_is_detected() {
        let g = c(1.0f64, 0.0);
        let far = build(StateId::CoherentProduct, c(2.0, 0.0)).unwrap();
        assert!(matches!(apply_local_sx(&far, Mode::A, g), Err(Error::SupportLeakage(_))));
    }

    #[test]
    fn fock_limits_have_unit_trace() {
        for id in StateId::PAIRS {
            let q = fock_limit_qubit::<f64>(id).unwrap();
            assert_abs_diff_eq!(q.matrix().trace().re, 1.0, epsilon = 1e-15);
        }
        assert!(fock_limit_qubit::<f64>(StateId::Marginal).is_err());
        let s = spectrum(&build(StateId::SigmaQPP, c(1e-3f64, 0.0)).unwrap()).unwrap();
        assert!(s.eigenvalues()[0] > 1.0 - 1e-5);
    }
}
