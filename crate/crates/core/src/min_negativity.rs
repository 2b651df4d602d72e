//! Minimum Wigner negativity over local unitaries on the cat qubit.
//!
//! Each side is rotated by `U = R_z(φ) R_y(θ) R_z(ψ)` acting on
//! `span{|γe⟩, |γo⟩}`. For states supported on that subspace the identity
//! on the complement never matters, so the search covers exactly the
//! local unitaries that stay inside the qubit. Unitaries mixing in other
//! Fock directions are not searched, and the result is an upper bound on
//! the minimum over the full local unitary group.
//!
//! A point is feasible when both transformed marginals have a Wigner
//! function above `-CLASSICALITY_TOL` on a `61²` probe grid.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::algebra::{CatBasis, DyadOperator, Mode};
use crate::error::{Error, Result};
use crate::phase_space::{single_mode_minimum, wigner_integrals, CatLineTable, QuadratureSpec, DEFAULT_MARGIN};
use crate::scalar::{c, lit, Amplitude, Real};
use crate::search::nelder_mead;

/// Marginal Wigner values down to `-1e-6 · 2/π` count as nonnegative.
pub const CLASSICALITY_TOL: f64 = 1e-6 * std::f64::consts::FRAC_2_PI;
/// Points per axis of the marginal probe grid.
pub const PROBE_POINTS: usize = 61;
const TRACE_TOL: f64 = 1e-10;
/// Coefficients are rounded to this before deduplicating grid points.
const KEY_RESOLUTION: f64 = 1e-10;

/// Euler angles `(θ, φ, ψ)` for each side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalUnitaryParams {
    pub a: [f64; 3],
    pub b: [f64; 3],
}

impl LocalUnitaryParams {
    pub const IDENTITY: Self = Self {
        a: [0.0; 3],
        b: [0.0; 3],
    };

    pub fn from_slice(x: &[f64]) -> Self {
        Self {
            a: [x[0], x[1], x[2]],
            b: [x[3], x[4], x[5]],
        }
    }

    pub fn to_vec(self) -> Vec<f64> {
        self.a.iter().chain(&self.b).copied().collect()
    }

    pub fn norm(&self) -> f64 {
        self.to_vec().iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.to_vec().iter().all(|v| v.is_finite())
    }
}

/// `R_z(φ) R_y(θ) R_z(ψ)` in the `{even, odd}` basis.
pub fn su2_matrix<T: Real>([theta, phi, psi]: [f64; 3]) -> [[Amplitude<T>; 2]; 2] {
    let (s, co) = (0.5 * theta).sin_cos();
    let e = |a: f64| c(lit::<T>(a.cos()), lit::<T>(a.sin()));
    let sum = 0.5 * (phi + psi);
    let diff = 0.5 * (phi - psi);
    [
        [e(-sum) * lit::<T>(co), -e(-diff) * lit::<T>(s)],
        [e(diff) * lit::<T>(s), e(sum) * lit::<T>(co)],
    ]
}

/// `(U_A ⊗ U_B) ρ (U_A ⊗ U_B)†` with both unitaries on the cat qubit.
pub fn apply_local_unitary<T: Real>(
    rho: &DyadOperator<T>,
    basis: &CatBasis<T>,
    params: &LocalUnitaryParams,
) -> Result<DyadOperator<T>> {
    let ua = basis.operator(su2_matrix(params.a));
    let ub = basis.operator(su2_matrix(params.b));
    let out = rho.conjugate_mode(Mode::A, &ua)?.conjugate_mode(Mode::B, &ub)?;
    let loss = (rho.trace() - out.trace()).norm();
    if loss > lit(TRACE_TOL) {
        return Err(Error::SupportLeakage(loss.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(out)
}

/// Search settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinNegativityOptions {
    /// Grid points per Euler angle.
    pub grid_points: usize,
    pub coarse_nodes: usize,
    pub fine_nodes: usize,
    /// Best grid points refined by Nelder–Mead.
    pub seeds: usize,
    pub tol: f64,
    pub max_iters: u64,
}

impl Default for MinNegativityOptions {
    fn default() -> Self {
        Self {
            grid_points: 5,
            coarse_nodes: 48,
            fine_nodes: 96,
            seeds: 3,
            tol: 1e-6,
            max_iters: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinNegativity<T> {
    pub delta: T,
    pub params: LocalUnitaryParams,
    /// False when no searched point kept both marginals nonnegative; `delta`
    /// is then the untransformed negativity volume.
    pub feasible: bool,
    /// Distinct objective evaluations on the coarse grid.
    pub grid_evaluations: usize,
}

struct Objective<'a, T> {
    rho: &'a DyadOperator<T>,
    basis: CatBasis<T>,
    half_width: T,
    coarse: Option<CatLineTable<T>>,
    fine: Option<CatLineTable<T>>,
    fine_spec: QuadratureSpec<T>,
}

impl<T: Real> Objective<'_, T> {
    fn delta(&self, state: &DyadOperator<T>, fine: bool) -> Result<T> {
        let table = if fine { &self.fine } else { &self.coarse };
        let (s, a) = match table {
            Some(t) => t.integrals(&t.coefficients(state)?),
            None => {
                let nodes = if fine { self.fine_spec.nodes } else { self.fine_spec.nodes / 2 };
                wigner_integrals(state, &self.fine_spec.with_nodes(nodes)?)?
            }
        };
        Ok((a - s).max(T::zero()))
    }

    fn side_feasible(&self, mode: Mode, angles: [f64; 3]) -> Result<bool> {
        let marginal = self.rho.partial_trace(mode)?;
        let u = self.basis.operator(su2_matrix(angles));
        let rotated = marginal.conjugate_mode(Mode::A, &u)?;
        let min = single_mode_minimum(&rotated, self.half_width, PROBE_POINTS)?;
        Ok(min >= -lit::<T>(CLASSICALITY_TOL))
    }

    fn feasible(&self, p: &LocalUnitaryParams) -> Result<bool> {
        Ok(self.side_feasible(Mode::A, p.a)? && self.side_feasible(Mode::B, p.b)?)
    }

    fn fine_value(&self, p: &LocalUnitaryParams) -> f64 {
        if !p.is_finite() || !self.feasible(p).unwrap_or(false) {
            return f64::INFINITY;
        }
        apply_local_unitary(self.rho, &self.basis, p)
            .and_then(|s| self.delta(&s, true))
            .ok()
            .and_then(|d| d.to_f64())
            .unwrap_or(f64::INFINITY)
    }
}

fn euler_grid(points: usize) -> Vec<[f64; 3]> {
    let pi = std::f64::consts::PI;
    let n = points.max(1);
    let step = |k: usize, span: f64| if n == 1 { 0.0 } else { span * k as f64 / (n - 1) as f64 };
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out.push([step(i, pi), step(j, 2.0 * pi) - pi, step(k, 2.0 * pi) - pi]);
            }
        }
    }
    out
}

fn better(a: (f64, &LocalUnitaryParams), b: (f64, &LocalUnitaryParams)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1.norm() < b.1.norm())
}

/// `min δ_NW((U_A ⊗ U_B) ρ (U_A ⊗ U_B)†)` over feasible cat-qubit unitaries.
///
/// `gamma` fixes the cat basis; `rho` must be supported on it in both
/// modes, otherwise the rotations leak trace and the call fails with
/// [`Error::SupportLeakage`].
pub fn min_negativity<T: Real>(
    rho: &DyadOperator<T>,
    gamma: Amplitude<T>,
    opts: &MinNegativityOptions,
) -> Result<MinNegativity<T>> {
    if rho.modes() != 2 {
        return Err(Error::ModeMismatch {
            expected: 2,
            found: rho.modes(),
        });
    }
    let basis = CatBasis::new(gamma)?;
    let half_width = gamma.norm() + lit(DEFAULT_MARGIN);
    let probe = apply_local_unitary(rho, &basis, &LocalUnitaryParams::IDENTITY)?;
    let obj = Objective {
        rho,
        half_width,
        coarse: CatLineTable::for_operator(&probe, half_width, opts.coarse_nodes)?,
        fine: CatLineTable::for_operator(&probe, half_width, opts.fine_nodes)?,
        fine_spec: QuadratureSpec::new(half_width, opts.fine_nodes)?,
        basis,
    };

    let side_grid = euler_grid(opts.grid_points);
    let ok_a: Vec<bool> = side_grid
        .par_iter()
        .map(|&g| obj.side_feasible(Mode::A, g))
        .collect::<Result<_>>()?;
    let ok_b: Vec<bool> = side_grid
        .par_iter()
        .map(|&g| obj.side_feasible(Mode::B, g))
        .collect::<Result<_>>()?;

    // Many angle triples give the same state (θ = 0 merges φ and ψ); key
    // on the rounded line coefficients so each state is integrated once.
    let mut unique: Vec<(LocalUnitaryParams, DyadOperator<T>)> = Vec::new();
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    for (ia, &ga) in side_grid.iter().enumerate() {
        for (ib, &gb) in side_grid.iter().enumerate() {
            if !(ok_a[ia] && ok_b[ib]) {
                continue;
            }
            let p = LocalUnitaryParams { a: ga, b: gb };
            let state = apply_local_unitary(rho, &obj.basis, &p)?;
            let key = match &obj.coarse {
                Some(t) => t
                    .coefficients(&state)?
                    .values()
                    .flat_map(|v| [v.re, v.im])
                    .map(|x| (x.to_f64().unwrap_or(0.0) / KEY_RESOLUTION).round() as i64)
                    .collect(),
                None => vec![unique.len() as i64],
            };
            match seen.get(&key) {
                Some(&i) if unique[i].0.norm() <= p.norm() => {}
                Some(&i) => unique[i].0 = p,
                None => {
                    seen.insert(key, unique.len());
                    unique.push((p, state));
                }
            }
        }
    }
    let grid_evaluations = unique.len();

    let identity_feasible = obj.feasible(&LocalUnitaryParams::IDENTITY)?;
    if unique.is_empty() && !identity_feasible {
        let raw = obj.delta(rho, true)?;
        return Ok(MinNegativity {
            delta: raw,
            params: LocalUnitaryParams::IDENTITY,
            feasible: false,
            grid_evaluations,
        });
    }

    let coarse: Vec<f64> = unique
        .par_iter()
        .map(|(_, s)| obj.delta(s, false).map(|d| d.to_f64().unwrap_or(f64::INFINITY)))
        .collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..unique.len()).collect();
    order.sort_by(|&i, &j| {
        coarse[i]
            .total_cmp(&coarse[j])
            .then(unique[i].0.norm().total_cmp(&unique[j].0.norm()))
    });

    let mut best = (f64::INFINITY, LocalUnitaryParams::IDENTITY);
    if identity_feasible {
        best.0 = obj.fine_value(&LocalUnitaryParams::IDENTITY);
    }
    let step = std::f64::consts::PI / (2 * opts.grid_points.max(2)) as f64;
    for &i in order.iter().take(opts.seeds) {
        let seed = unique[i].0;
        let m = nelder_mead(|x| obj.fine_value(&LocalUnitaryParams::from_slice(x)), &seed.to_vec(), step, opts.tol, opts.max_iters);
        let p = LocalUnitaryParams::from_slice(&m.x);
        if better((m.value, &p), (best.0, &best.1)) {
            best = (m.value, p);
        }
    }
    Ok(MinNegativity {
        delta: lit(best.0),
        params: best.1,
        feasible: true,
        grid_evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build, sx_operator, StateId};

    #[test]
    fn euler_matrix_is_unitary() {
        let u = su2_matrix::<f64>([0.7, -1.2, 2.3]);
        for i in 0..2 {
            for j in 0..2 {
                let dot: Amplitude<f64> = (0..2).map(|k| u[i][k] * u[j][k].conj()).sum();
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((dot - c(e, 0.0)).norm() < 1e-15);
            }
        }
        let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
        assert!((det - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn flip_is_reachable() {
        // θ = π, φ − ψ = π gives S_x up to a phase.
        let g = c(1.0f64, 0.0);
        let rho = build(StateId::SigmaCPM, g).unwrap();
        let basis = CatBasis::new(g).unwrap();
        let p = LocalUnitaryParams {
            a: [std::f64::consts::PI, std::f64::consts::FRAC_PI_2, -std::f64::consts::FRAC_PI_2],
            b: [0.0; 3],
        };
        let rotated = apply_local_unitary(&rho, &basis, &p).unwrap();
        let flipped = rho.conjugate_mode(Mode::A, &sx_operator(g).unwrap()).unwrap();
        assert!(rotated.approx_eq(&flipped, 1e-12));
    }

    #[test]
    fn grid_covers_each_angle() {
        let g = euler_grid(5);
        assert_eq!(g.len(), 125);
        assert_eq!(g[0], [0.0, -std::f64::consts::PI, -std::f64::consts::PI]);
    }
}
