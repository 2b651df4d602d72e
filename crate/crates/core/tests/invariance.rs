//! Local unitaries on the cat qubit leave the correlation measures unchanged.

use phasecorr::linalg::CMatrix;
use phasecorr::min_negativity::{apply_local_unitary, su2_matrix, LocalUnitaryParams};
use phasecorr::scalar::c;
use phasecorr::{build, geometric_discord, lqu, mutual_information, qubit_matrix, quantum_discord, CatBasis, LogBase, StateId};
use proptest::prelude::*;

fn cm(u: [[phasecorr::Amplitude; 2]; 2]) -> CMatrix<f64> {
    CMatrix::from_fn(2, |i, j| u[i][j])
}

fn angles() -> impl Strategy<Value = [f64; 3]> {
    (0.0..std::f64::consts::PI, -3.2..3.2f64, -3.2..3.2f64).prop_map(|(a, b, c)| [a, b, c])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn measures_are_locally_invariant(a in angles(), b in angles(), pick in 0usize..6, g in 0.3..2.0f64) {
        let id = StateId::PAIRS[pick];
        let gamma = c(g, 0.0);
        let rho = build(id, gamma).unwrap();
        let q = qubit_matrix(&rho, gamma).unwrap();
        let p = LocalUnitaryParams { a, b };
        let rotated = apply_local_unitary(&rho, &CatBasis::new(gamma).unwrap(), &p).unwrap();
        let qr = qubit_matrix(&rotated, gamma).unwrap();
        // the dyad-level rotation agrees with the 4×4 one
        let direct = q.conjugated(&cm(su2_matrix(a)), &cm(su2_matrix(b)));
        prop_assert!(qr.matrix().max_abs_diff(direct.matrix()) < 1e-10);
        prop_assert!((quantum_discord(&q, LogBase::Two) - quantum_discord(&qr, LogBase::Two)).abs() < 1e-8);
        prop_assert!((lqu(&q) - lqu(&qr)).abs() < 1e-8);
        prop_assert!((geometric_discord(&q) - geometric_discord(&qr)).abs() < 1e-10);
        prop_assert!((mutual_information(&q, LogBase::Two) - mutual_information(&qr, LogBase::Two)).abs() < 1e-10);
    }
}
