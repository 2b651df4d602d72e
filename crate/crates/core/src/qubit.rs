//! Two-qubit embedding in the cat basis `{|γe⟩, |γo⟩}⊗²` and the
//! correlation measures evaluated on it.

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{shannon_entropy, CatBasis, DyadOperator, LogBase};
use crate::error::{Error, Result};
use crate::linalg::{determinant, eigh, singular_values, sqrt_psd, symmetric_eigenvalues, CMatrix};
use crate::scalar::{c, lit, Amplitude, Real};
use crate::search::{fibonacci_sphere, nelder_mead, spherical, to_spherical};

/// Allowed trace lost when projecting onto the cat-qubit subspace.
pub const LEAKAGE_TOL: f64 = 1e-10;
/// Relative rounding of a projection per unit of dyad coefficient mass.
pub const MASS_ROUNDING: f64 = 1e-15;
/// Singular values below this fraction of the largest do not count towards
/// the correlation rank.
pub const RANK_TOL: f64 = 1e-12;
/// Number of Fibonacci seeds for the measurement-axis search.
pub const AXIS_SEEDS: usize = 2048;

/// Pauli matrices `σ₀ = I, σ₁, σ₂, σ₃`.
pub fn pauli<T: Real>(k: usize) -> CMatrix<T> {
    let z = Amplitude::zero();
    let one = c(T::one(), T::zero());
    let i = c(T::zero(), T::one());
    let e = match k {
        0 => [one, z, z, one],
        1 => [z, one, one, z],
        2 => [z, -i, i, z],
        3 => [one, z, z, -one],
        _ => panic!("Pauli index {k} out of range"),
    };
    CMatrix::from_fn(2, |r, col| e[2 * r + col])
}

/// Hermitian, positive, unit-trace 4×4 matrix in the basis
/// `|ee⟩, |eo⟩, |oe⟩, |oo⟩`, with the cat amplitude it was built from
/// (`None` for the `γ → 0` limit basis `{|0⟩, |1⟩}`).
#[derive(Debug, Clone, PartialEq)]
pub struct QubitDensityMatrix<T> {
    matrix: CMatrix<T>,
    gamma: Option<Amplitude<T>>,
}

impl<T: Real> QubitDensityMatrix<T> {
    pub fn new(matrix: CMatrix<T>, gamma: Option<Amplitude<T>>) -> Result<Self> {
        if matrix.dim() != 4 {
            return Err(Error::InvalidQubitMatrix(format!("dimension {}", matrix.dim())));
        }
        if matrix.hermiticity_defect() > lit(1e-12) {
            return Err(Error::InvalidQubitMatrix("not Hermitian".into()));
        }
        let tr = matrix.trace().re;
        if (tr - T::one()).abs() > lit(1e-10) {
            return Err(Error::InvalidQubitMatrix(format!("trace {tr}")));
        }
        let lmin = *eigh(&matrix).values.last().expect("nonempty");
        if lmin < lit(-1e-10) {
            return Err(Error::InvalidQubitMatrix(format!("eigenvalue {lmin}")));
        }
        Ok(Self { matrix, gamma })
    }

    /// Builds `Σ w_k |k⟩⟨k|` (diagonal in the product basis).
    pub fn diagonal(weights: [T; 4], gamma: Option<Amplitude<T>>) -> Result<Self> {
        Self::new(
            CMatrix::from_fn(4, |i, j| {
                if i == j {
                    c(weights[i], T::zero())
                } else {
                    Amplitude::zero()
                }
            }),
            gamma,
        )
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn gamma(&self) -> Option<Amplitude<T>> {
        self.gamma
    }

    /// `(U_A ⊗ U_B) ρ (U_A ⊗ U_B)†`.
    pub fn conjugated(&self, ua: &CMatrix<T>, ub: &CMatrix<T>) -> Self {
        let u = ua.kron(ub);
        let m = &(&u * &self.matrix) * &u.adjoint();
        Self {
            matrix: m.hermitian_part(),
            gamma: self.gamma,
        }
    }

    /// `Tr(ρ σ_m ⊗ σ_n)`.
    pub fn pauli_expectation(&self, m: usize, n: usize) -> T {
        let op = pauli::<T>(m).kron(&pauli::<T>(n));
        (&self.matrix * &op).trace().re
    }

    pub fn reduced_a(&self) -> CMatrix<T> {
        CMatrix::from_fn(2, |i, j| self.matrix[(2 * i, 2 * j)] + self.matrix[(2 * i + 1, 2 * j + 1)])
    }

    pub fn reduced_b(&self) -> CMatrix<T> {
        CMatrix::from_fn(2, |i, j| self.matrix[(i, j)] + self.matrix[(2 + i, 2 + j)])
    }

    pub fn bloch(&self) -> BlochDecomposition<T> {
        let mut x = [T::zero(); 3];
        let mut y = [T::zero(); 3];
        let mut t = [[T::zero(); 3]; 3];
        for i in 0..3 {
            x[i] = self.pauli_expectation(i + 1, 0);
            y[i] = self.pauli_expectation(0, i + 1);
            for j in 0..3 {
                t[i][j] = self.pauli_expectation(i + 1, j + 1);
            }
        }
        BlochDecomposition { x, y, t }
    }
}

/// `ρ = ¼(I + x·σ ⊗ I + I ⊗ y·σ + Σ T_ij σ_i ⊗ σ_j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDecomposition<T> {
    pub x: [T; 3],
    pub y: [T; 3],
    pub t: [[T; 3]; 3],
}

/// Projective measurement `{(I ± n·σ)/2}` on qubit A.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementAxis {
    pub n: [f64; 3],
}

impl MeasurementAxis {
    pub fn new(v: [f64; 3]) -> Self {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        Self {
            n: [v[0] / norm, v[1] / norm, v[2] / norm],
        }
    }

    pub fn z() -> Self {
        Self { n: [0.0, 0.0, 1.0] }
    }

    /// Angle to the `z` axis, treating `n` and `−n` as the same measurement.
    pub fn angle_to_z(&self) -> f64 {
        self.n[2].abs().min(1.0).acos()
    }
}

/// Projects a two-mode operator onto the cat-qubit subspace of amplitude `γ`.
///
/// Fails with [`Error::SupportLeakage`] when more than `1e-10` of the trace
/// lies outside the subspace.
pub fn qubit_matrix<T: Real>(rho: &DyadOperator<T>, gamma: Amplitude<T>) -> Result<QubitDensityMatrix<T>> {
    if rho.modes() != 2 {
        return Err(Error::ModeMismatch {
            expected: 2,
            found: rho.modes(),
        });
    }
    let basis = CatBasis::new(gamma)?;
    let mut m = CMatrix::zeros(4);
    for t in rho.terms() {
        let ka = basis.project(t.ket[0]);
        let kb = basis.project(t.ket[1]);
        let ba = basis.project(t.bra[0]);
        let bb = basis.project(t.bra[1]);
        for r in 0..4 {
            let left = t.coeff * ka[r / 2] * kb[r % 2];
            for col in 0..4 {
                m[(r, col)] += left * (ba[col / 2] * bb[col % 2]).conj();
            }
        }
    }
    // Near γ = 0 the odd-cat dyads carry coefficients ~ 1/(1 − Γ)², and
    // the projection cancels them down to O(1); the rounding scales with
    // the coefficient mass.
    let mass: T = rho.terms().iter().map(|t| t.coeff.norm()).sum();
    let slack = lit::<T>(LEAKAGE_TOL).max(mass * lit(MASS_ROUNDING));
    let loss = (rho.trace().re - m.trace().re).abs();
    if loss > slack {
        return Err(Error::SupportLeakage(loss.to_f64().unwrap_or(f64::NAN)));
    }
    let mut m = m.hermitian_part();
    let lmin = *eigh(&m).values.last().expect("nonempty");
    if lmin < T::zero() && -lmin <= slack {
        m = eigh(&m).map_values(|v| v.max(T::zero()));
    }
    let tr = m.trace().re;
    QubitDensityMatrix::new(m.scale(c(T::one() / tr, T::zero())), Some(gamma))
}

fn matrix_entropy<T: Real>(m: &CMatrix<T>, base: LogBase) -> T {
    shannon_entropy(&eigh(m).values, base)
}

/// `h₂((1 + |b|)/2)`, the entropy of a qubit with Bloch vector `b`.
fn bloch_entropy<T: Real>(b: [T; 3], base: LogBase) -> T {
    let r = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt().min(T::one());
    let half = lit::<T>(0.5);
    shannon_entropy(&[half * (T::one() + r), half * (T::one() - r)], base)
}

/// Von Neumann entropy of the full two-qubit state.
pub fn entropy<T: Real>(rho: &QubitDensityMatrix<T>, base: LogBase) -> T {
    matrix_entropy(rho.matrix(), base)
}

/// `I = S(ρ_A) + S(ρ_B) − S(ρ)`.
pub fn mutual_information<T: Real>(rho: &QubitDensityMatrix<T>, base: LogBase) -> T {
    matrix_entropy(&rho.reduced_a(), base) + matrix_entropy(&rho.reduced_b(), base) - entropy(rho, base)
}

/// `J^Π = S(ρ_B) − Σ_± p_± S(ρ_B|±)` for the measurement along `axis` on A.
pub fn measured_correlation<T: Real>(bloch: &BlochDecomposition<T>, axis: [T; 3], base: LogBase) -> T {
    let half = lit::<T>(0.5);
    let nx: T = (0..3).map(|i| axis[i] * bloch.x[i]).sum();
    let tn: [T; 3] = std::array::from_fn(|j| (0..3).map(|i| axis[i] * bloch.t[i][j]).sum());
    let mut conditional = T::zero();
    for s in [T::one(), -T::one()] {
        let p = half * (T::one() + s * nx);
        if p <= T::zero() {
            continue;
        }
        let b: [T; 3] = std::array::from_fn(|j| (bloch.y[j] + s * tn[j]) / (T::one() + s * nx));
        conditional += p * bloch_entropy(b, base);
    }
    bloch_entropy(bloch.y, base) - conditional
}

/// Classical correlation `J = max_Π J^Π` over projective measurements on A:
/// Fibonacci-lattice seeds followed by Nelder–Mead on the sphere.
pub fn classical_correlation<T: Real>(rho: &QubitDensityMatrix<T>, base: LogBase) -> (T, MeasurementAxis) {
    let bloch = rho.bloch();
    let eval = |v: [f64; 3]| -> f64 {
        let axis: [T; 3] = std::array::from_fn(|k| lit(v[k]));
        measured_correlation(&bloch, axis, base).to_f64().unwrap_or(f64::NEG_INFINITY)
    };
    let seeds = fibonacci_sphere(AXIS_SEEDS);
    let values: Vec<f64> = seeds.par_iter().map(|&v| eval(v)).collect();
    let mut best = 0;
    for (k, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = k;
        }
    }
    let (t0, p0) = to_spherical(seeds[best]);
    let refined = nelder_mead(|x| -eval(spherical(x[0], x[1])), &[t0, p0], 0.05, 1e-15, 400);
    let (mut jv, mut axis) = (values[best], seeds[best]);
    if -refined.value > jv {
        jv = -refined.value;
        axis = spherical(refined.x[0], refined.x[1]);
    }
    (lit(jv), MeasurementAxis::new(axis))
}

/// Quantum discord `I − J` with measurements on A.
pub fn quantum_discord<T: Real>(rho: &QubitDensityMatrix<T>, base: LogBase) -> T {
    mutual_information(rho, base) - classical_correlation(rho, base).0
}

/// Local quantum uncertainty `1 − λ_max(W)`,
/// `W_ij = Tr(√ρ (σ_i ⊗ I) √ρ (σ_j ⊗ I))`.
pub fn lqu<T: Real>(rho: &QubitDensityMatrix<T>) -> T {
    let root = sqrt_psd(rho.matrix());
    let id = pauli::<T>(0);
    let ops: Vec<CMatrix<T>> = (1..4).map(|i| pauli::<T>(i).kron(&id)).collect();
    let half: Vec<CMatrix<T>> = ops.iter().map(|s| &root * s).collect();
    let mut w = vec![T::zero(); 9];
    for i in 0..3 {
        for j in 0..3 {
            w[3 * i + j] = (&half[i] * &half[j]).trace().re;
        }
    }
    (T::one() - symmetric_eigenvalues(3, &w)[0]).max(T::zero())
}

/// Geometric discord `¼(‖x‖² + ‖T‖² − λ_max(x xᵀ + T Tᵀ))`.
pub fn geometric_discord<T: Real>(rho: &QubitDensityMatrix<T>) -> T {
    let b = rho.bloch();
    let mut k = vec![T::zero(); 9];
    for i in 0..3 {
        for j in 0..3 {
            k[3 * i + j] = b.x[i] * b.x[j] + (0..3).map(|l| b.t[i][l] * b.t[j][l]).sum::<T>();
        }
    }
    let trace = k[0] + k[4] + k[8];
    let lmax = symmetric_eigenvalues(3, &k)[0];
    (lit::<T>(0.25) * (trace - lmax)).max(T::zero())
}

/// Singular values of `R_mn = Tr(ρ σ_m ⊗ σ_n)`, `m, n = 0..3`.
pub fn correlation_singular_values<T: Real>(rho: &QubitDensityMatrix<T>) -> Vec<T> {
    let r: Vec<T> = (0..16).map(|k| rho.pauli_expectation(k / 4, k % 4)).collect();
    singular_values(4, 4, &r)
}

/// Operator-Schmidt rank: singular values of `R` above `1e-12` of the largest.
pub fn correlation_rank<T: Real>(rho: &QubitDensityMatrix<T>) -> usize {
    let sv = correlation_singular_values(rho);
    let cut = sv[0] * lit(RANK_TOL);
    sv.iter().filter(|&&s| s > cut).count()
}

/// `det T`.
pub fn t_det<T: Real>(rho: &QubitDensityMatrix<T>) -> T {
    let t = rho.bloch().t;
    let flat: Vec<T> = t.iter().flatten().copied().collect();
    determinant(3, &flat)
}

/// `h₂(p, 1 − p)`-style Shannon entropy of an explicit distribution.
pub fn h<T: Real>(p: &[T], base: LogBase) -> T {
    shannon_entropy(p, base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn bell() -> QubitDensityMatrix<f64> {
        let s = 0.5;
        let mut m = CMatrix::zeros(4);
        for &(i, j) in &[(0, 0), (0, 3), (3, 0), (3, 3)] {
            m[(i, j)] = c(s, 0.0);
        }
        QubitDensityMatrix::new(m, None).unwrap()
    }

    #[test]
    fn perfectly_correlated_bit() {
        let rho = QubitDensityMatrix::diagonal([0.5, 0.0, 0.0, 0.5], None).unwrap();
        assert_abs_diff_eq!(mutual_information(&rho, LogBase::Two), 1.0, epsilon = 1e-12);
        let (j, axis) = classical_correlation(&rho, LogBase::Two);
        assert_abs_diff_eq!(j, 1.0, epsilon = 1e-10);
        assert!(axis.angle_to_z() < 1e-3);
        assert_abs_diff_eq!(quantum_discord(&rho, LogBase::Two), 0.0, epsilon = 1e-10);
        assert_eq!(correlation_rank(&rho), 2);
    }

    #[test]
    fn product_state_has_no_correlations() {
        let rho = QubitDensityMatrix::diagonal([1.0, 0.0, 0.0, 0.0], None).unwrap();
        assert_abs_diff_eq!(mutual_information(&rho, LogBase::Two), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(lqu(&rho), 0.0, epsilon = 1e-10);
        assert_abs_diff_eq!(geometric_discord(&rho), 0.0, epsilon = 1e-12);
        assert_eq!(correlation_rank(&rho), 1);
    }

    #[test]
    fn bell_state_t_determinant() {
        assert_abs_diff_eq!(t_det(&bell()), -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(lqu(&bell()), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn invalid_matrices_are_rejected() {
        assert!(QubitDensityMatrix::diagonal([0.5, 0.5, 0.5, 0.0], None).is_err());
        assert!(QubitDensityMatrix::diagonal([1.5, -0.5, 0.0, 0.0], None).is_err());
    }
}
