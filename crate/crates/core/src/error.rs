use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("odd cat state is degenerate: 1 - exp(-2|γ|²) = {0:e} is below 1e-14")]
    DegenerateOddCat(f64),

    #[error("ket has no terms")]
    EmptyKet,

    #[error("ket has vanishing norm ({0:e})")]
    ZeroNorm(f64),

    #[error("mixture weight {0} is negative")]
    NegativeWeight(f64),

    #[error("mixture weights sum to zero")]
    ZeroTotalWeight,

    #[error("operator acts on {found} mode(s), expected {expected}")]
    ModeMismatch { expected: usize, found: usize },

    #[error("mode index {0} is out of range")]
    InvalidMode(usize),

    #[error("Gram matrix is indefinite: eigenvalue {0:e} relative to the largest")]
    IllConditionedGram(f64),

    #[error("operator is not positive: eigenvalue {0:e}")]
    NotPositive(f64),

    #[error("Wigner value has imaginary residue {0:e}; operator is not Hermitian")]
    ImaginaryResidue(f64),

    #[error("invalid covariance matrix: Δ² - 4 det σ = {0:e}")]
    InvalidCovariance(f64),

    #[error("mean photon number {0:e} is too small for the Mandel parameter")]
    VanishingPhotonNumber(f64),

    #[error("state leaks out of the cat-qubit subspace: trace loss {0:e}")]
    SupportLeakage(f64),

    #[error("invalid quadrature: {0}")]
    InvalidQuadrature(String),

    #[error("coherent label {0} is not covered by the factor table")]
    LabelNotInTable(String),

    #[error("invalid qubit density matrix: {0}")]
    InvalidQubitMatrix(String),

    #[error("state {0} is not defined at γ = 0")]
    NoFockLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
