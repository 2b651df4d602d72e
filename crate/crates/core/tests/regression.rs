//! Pinned values at γ = 0.5 (n = 192 for the negativity volume).

use phasecorr::phase_space::{wigner_integrals, QuadratureSpec};
use phasecorr::scalar::c;
use phasecorr::{build, lqu, non_gaussianity, qubit_matrix, quantum_discord, LogBase, StateId};

const PINS: [(StateId, f64, f64, f64, f64); 4] = [
    (StateId::RhoPP, 3.15569643721817e-2, 5.904261079724267e-1, 1.805813586716929e-1, 1.73528499912734e-1),
    (StateId::RhoPM, 2.252615238226496e-2, 4.596475731688956e-1, 1.349421972476382e-1, 9.228620938792609e-2),
    (StateId::SigmaCPP, 2.406444711709439e-1, 1.239370459153466, 0.0, 0.0),
    (StateId::SigmaCPM, 2.054482133880663e-1, 1.239370459153466, 0.0, 0.0),
];

#[test]
fn pinned_values() {
    let gamma = c(0.5, 0.0);
    let spec = QuadratureSpec::new(4.5, 192).unwrap();
    for (id, delta, ng, discord, u) in PINS {
        let rho = build(id, gamma).unwrap();
        let (s, a) = wigner_integrals(&rho, &spec).unwrap();
        assert!((a - s - delta).abs() < 1e-9, "{id} delta {}", a - s);
        assert!((non_gaussianity(&rho).unwrap() - ng).abs() < 1e-9, "{id} ng");
        let q = qubit_matrix(&rho, gamma).unwrap();
        assert!((quantum_discord(&q, LogBase::Two) - discord).abs() < 1e-8, "{id} discord");
        assert!((lqu(&q) - u).abs() < 1e-9, "{id} lqu");
    }
}
