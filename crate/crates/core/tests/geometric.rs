//! Geometric discord closed form against direct minimization over
//! classical-quantum states.

use num_complex::Complex64 as C;
use phasecorr::scalar::c;
use phasecorr::{build, geometric_discord, qubit_matrix, StateId};
use phasecorr_fock_oracle::{geometric_discord_brute, Qubit4};

fn as_oracle(id: StateId, g: f64) -> (f64, Qubit4) {
    let q = qubit_matrix(&build(id, c(g, 0.0)).unwrap(), c(g, 0.0)).unwrap();
    let m = Qubit4::from_fn(|i, j| {
        let v = q.matrix()[(i, j)];
        C::new(v.re, v.im)
    });
    (geometric_discord(&q), m)
}

#[test]
fn closed_form_is_the_minimum() {
    for id in [StateId::RhoPP, StateId::RhoPM, StateId::SigmaQPP, StateId::SigmaQPM, StateId::SigmaCPP] {
        let (ours, m) = as_oracle(id, 1.0);
        let brute = geometric_discord_brute(&m);
        assert!((ours - brute).abs() < 1e-6, "{id}: {ours} vs {brute}");
    }
}

#[test]
fn rho_pair_value() {
    for g in [0.4f64, 1.0, 1.7] {
        let big = (-2.0 * g * g).exp();
        let expected = ((1.0 - big * big) / 4.0).powi(2);
        for id in [StateId::RhoPP, StateId::RhoPM] {
            assert!((as_oracle(id, g).0 - expected).abs() < 1e-12);
        }
    }
}

#[test]
fn sigma_q_value_uses_quarter_prefactor() {
    // ¼ min{(1 − Γ²)², Γ²(1 + Γ²)}, which the direct search confirms above.
    for g in [0.3f64, 0.6, 1.0, 1.5] {
        let b2 = (-4.0 * g * g).exp();
        let expected = 0.25 * ((1.0 - b2).powi(2)).min(b2 * (1.0 + b2));
        assert!((as_oracle(StateId::SigmaQPP, g).0 - expected).abs() < 1e-12, "γ={g}");
    }
}
