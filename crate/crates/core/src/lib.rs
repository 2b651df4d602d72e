//! Phase-space nonclassicality and two-qubit correlation measures for
//! two-mode states built from coherent-state superpositions.
//!
//! Every state is a [`DyadOperator`]: a finite sum of coherent dyads
//! `|α⟩⟨β|` per mode. Overlaps, moments, spectra, Wigner functions and the
//! cat-qubit embedding all have closed forms on that representation, so
//! nothing is truncated to a Fock basis.
//!
//! The numerical core is generic over [`scalar::Real`] (`f32` or `f64`);
//! the aliases at the crate root fix it to `f64` or `f32`.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod gaussian;
pub mod linalg;
pub mod min_negativity;
pub mod nonclassicality;
pub mod phase_space;
pub mod qubit;
pub mod scalar;
pub mod search;

pub use algebra::{
    cat_kets, mixture_to_dyads, overlap, spectrum, von_neumann_entropy, CatBasis, DyadTerm, LogBase, Mode, ModeKet,
    TwoModeKet,
};
pub use catalog::{apply_local_sx, build, channel_phi, fock_limit_qubit, StateId};
pub use error::{Error, Result};
pub use gaussian::{covariance, non_gaussianity, symplectic_eigenvalues};
pub use min_negativity::{min_negativity, LocalUnitaryParams, MinNegativityOptions};
pub use nonclassicality::{mandel_q_mode, mandel_q_su2, squeezing_d, Su2ModeParams, Su2Search};
pub use phase_space::{husimi, negativity_volume, wigner, ConvergencePolicy, PhasePoint, QuadratureSpec};
pub use qubit::{
    classical_correlation, correlation_rank, geometric_discord, lqu, mutual_information, quantum_discord,
    qubit_matrix, t_det, MeasurementAxis,
};

/// Complex amplitude in double precision.
pub type Amplitude = scalar::Amplitude<f64>;
pub type DyadOperator = algebra::DyadOperator<f64>;
pub type Spectrum = algebra::Spectrum<f64>;
pub type CovarianceMatrix = gaussian::CovarianceMatrix<f64>;
pub type QubitDensityMatrix = qubit::QubitDensityMatrix<f64>;
pub type NegativityEstimate = phase_space::NegativityEstimate<f64>;

/// Single-precision aliases.
pub mod f32 {
    pub type Amplitude = crate::scalar::Amplitude<f32>;
    pub type DyadOperator = crate::algebra::DyadOperator<f32>;
    pub type Spectrum = crate::algebra::Spectrum<f32>;
    pub type CovarianceMatrix = crate::gaussian::CovarianceMatrix<f32>;
    pub type QubitDensityMatrix = crate::qubit::QubitDensityMatrix<f32>;
}
