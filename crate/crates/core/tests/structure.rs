//! Relations between the catalog states: shared marginals, the channel Φ,
//! the local flip and the correlation ranks.

use phasecorr::algebra::Mode;
use phasecorr::qubit::{correlation_rank, t_det};
use phasecorr::scalar::c;
use phasecorr::{apply_local_sx, build, channel_phi, fock_limit_qubit, qubit_matrix, quantum_discord, LogBase, StateId};

#[test]
fn pairs_share_the_marginal() {
    for g in [0.3f64, 1.0, 2.2] {
        let m = build(StateId::Marginal, c(g, 0.0)).unwrap();
        for id in [StateId::RhoPP, StateId::RhoPM] {
            let rho = build(id, c(g, 0.0)).unwrap();
            for side in [Mode::A, Mode::B] {
                let r = rho.partial_trace(side).unwrap();
                assert!(r.approx_eq(&m, 1e-12), "{id} γ={g}");
            }
        }
    }
}

#[test]
fn channel_prepares_sigma_q() {
    for g in [0.5f64, 1.0, 2.0] {
        let gamma = c(g, 0.0);
        for (from, to) in [(StateId::SigmaCPP, StateId::SigmaQPP), (StateId::SigmaCPM, StateId::SigmaQPM)] {
            let out = channel_phi(&build(from, gamma).unwrap(), gamma).unwrap();
            let target = build(to, gamma).unwrap();
            assert!(out.approx_eq(&target, 1e-12), "{from} γ={g}");
            assert!((out.trace().re - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn flip_exchanges_classical_pair() {
    let gamma = c(1.0f64, 0.0);
    let out = apply_local_sx(&build(StateId::SigmaCPM, gamma).unwrap(), Mode::A, gamma).unwrap();
    assert!(out.approx_eq(&build(StateId::SigmaCPP, gamma).unwrap(), 1e-12));
}

#[test]
fn flip_keeps_discord() {
    let gamma = c(0.8f64, 0.0);
    for id in StateId::PAIRS.into_iter().chain([StateId::CoherentProduct]) {
        let rho = build(id, gamma).unwrap();
        let before = quantum_discord(&qubit_matrix(&rho, gamma).unwrap(), LogBase::Two);
        for side in [Mode::A, Mode::B] {
            let flipped = apply_local_sx(&rho, side, gamma).unwrap();
            let after = quantum_discord(&qubit_matrix(&flipped, gamma).unwrap(), LogBase::Two);
            assert!((before - after).abs() < 1e-8, "{id}: {before} vs {after}");
        }
    }
}

#[test]
fn correlation_ranks() {
    let gamma = c(1.0f64, 0.0);
    let rank = |id| correlation_rank(&qubit_matrix(&build(id, gamma).unwrap(), gamma).unwrap());
    assert_eq!(rank(StateId::RhoPP), 3);
    assert_eq!(rank(StateId::RhoPM), 3);
    for id in [StateId::SigmaQPP, StateId::SigmaQPM, StateId::SigmaCPP, StateId::SigmaCPM] {
        assert_eq!(rank(id), 2, "{id}");
    }
    assert_eq!(correlation_rank(&fock_limit_qubit::<f64>(StateId::RhoPP).unwrap()), 2);
    assert_eq!(correlation_rank(&fock_limit_qubit::<f64>(StateId::RhoPM).unwrap()), 2);
}

#[test]
fn correlation_matrix_is_singular() {
    for g in [0.2f64, 0.7, 1.0, 1.9] {
        for id in [StateId::RhoPP, StateId::RhoPM] {
            let q = qubit_matrix(&build(id, c(g, 0.0)).unwrap(), c(g, 0.0)).unwrap();
            assert!(t_det(&q).abs() < 1e-12, "{id} γ={g}");
        }
    }
}
