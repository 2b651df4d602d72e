//! Closed forms against the truncated Fock-basis oracle.

use num_complex::Complex64 as C;
use phasecorr::phase_space::PhasePoint;
use phasecorr::scalar::c;
use phasecorr::{build, fock_limit_qubit, qubit_matrix, spectrum, wigner, StateId};
use phasecorr_fock_oracle::{min_truncation, FockMixture};

const GAMMAS: [f64; 3] = [0.5, 1.0, 2.0];
const TOL: f64 = 1e-8;

fn oracle(id: StateId, g: f64) -> FockMixture {
    FockMixture::named(id.name(), C::new(g, 0.0), min_truncation(g) + 40).unwrap()
}

fn exponents() -> Vec<(u32, u32)> {
    vec![(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (2, 2), (1, 2)]
}

#[test]
fn spectra_agree() {
    for g in GAMMAS {
        for id in StateId::ALL {
            let ours = spectrum(&build(id, c(g, 0.0)).unwrap()).unwrap();
            let theirs = oracle(id, g).spectrum();
            let n = theirs.len().max(ours.eigenvalues().len());
            let ours = ours.padded(n);
            for (a, b) in ours.iter().zip(theirs.iter().chain(std::iter::repeat(&0.0))) {
                assert!((a - b).abs() < TOL, "{id} γ={g}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn moments_agree() {
    for g in GAMMAS {
        for id in StateId::ALL {
            let rho = build(id, c(g, 0.0)).unwrap();
            let fock = oracle(id, g);
            for f in exponents() {
                let seconds = if id.modes() == 2 { exponents() } else { vec![(0, 0)] };
                for s in seconds {
                    let ours = rho.normal_moment(f, s).unwrap();
                    let theirs = fock.moment(f, s);
                    assert!((ours - theirs).norm() < TOL, "{id} γ={g} {f:?} {s:?}: {ours} vs {theirs}");
                }
            }
        }
    }
}

#[test]
fn wigner_points_agree() {
    for g in GAMMAS {
        let pts = [
            [c(0.0, 0.0), c(0.0, 0.0)],
            [c(0.3, -0.2), c(0.5, 0.1)],
            [c(g, 0.0), c(-0.4, 0.7)],
            [c(0.1, 0.9), c(0.5 * g, -0.3)],
            [c(-g, 0.25), c(g, -0.1)],
        ];
        for id in StateId::ALL {
            let rho = build(id, c(g, 0.0)).unwrap();
            let fock = oracle(id, g);
            for z in pts {
                let point = if id.modes() == 2 {
                    PhasePoint::pair(z[0], z[1])
                } else {
                    PhasePoint::single(z[0])
                };
                let ours = wigner(&rho, &point).unwrap();
                let theirs = fock.wigner(&z);
                assert!((ours - theirs).abs() < TOL, "{id} γ={g} {z:?}: {ours} vs {theirs}");
            }
        }
    }
}

#[test]
fn qubit_matrices_agree() {
    for g in GAMMAS {
        for id in StateId::PAIRS {
            let ours = qubit_matrix(&build(id, c(g, 0.0)).unwrap(), c(g, 0.0)).unwrap();
            let theirs = oracle(id, g).qubit_matrix(C::new(g, 0.0)).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    let d = (ours.matrix()[(i, j)] - theirs[(i, j)]).norm();
                    assert!(d < TOL, "{id} γ={g} ({i},{j}): {d:e}");
                }
            }
        }
    }
}

#[test]
fn fock_limits_agree() {
    for id in StateId::PAIRS {
        let ours = fock_limit_qubit::<f64>(id).unwrap();
        let theirs = FockMixture::fock_limit_qubit(id.name()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((ours.matrix()[(i, j)] - theirs[(i, j)]).norm() < 1e-15, "{id}");
            }
        }
    }
}

#[test]
fn small_amplitude_approaches_fock_limit() {
    // At γ = 0.01 the catalog states sit within O(γ²) of the limit.
    for id in StateId::PAIRS {
        let g = 0.01;
        let ours = qubit_matrix(&build(id, c(g, 0.0)).unwrap(), c(g, 0.0)).unwrap();
        let limit = fock_limit_qubit::<f64>(id).unwrap();
        assert!(ours.matrix().max_abs_diff(limit.matrix()) < 1e-3, "{id}");
    }
}

#[test]
fn covariance_matches_oracle_moments() {
    for g in GAMMAS {
        for id in [StateId::RhoPP, StateId::RhoPM] {
            let cov = phasecorr::covariance(&build(id, c(g, 0.0)).unwrap()).unwrap();
            let f = oracle(id, g);
            // ⟨q₁q₂⟩ = Re(⟨a₁a₂⟩ + ⟨a₁†a₂⟩) for vanishing means
            let q1q2 = (f.moment((0, 1), (0, 1)) + f.moment((1, 0), (0, 1))).re;
            assert!((cov.sigma[0][2] - q1q2).abs() < TOL);
            let sign = if id == StateId::RhoPP { 1.0 } else { -1.0 };
            assert!((cov.sigma[0][2] - sign * g * g).abs() < 1e-10);
        }
    }
}
