//! Reference computations in a truncated Fock basis.
//!
//! Everything here is built from photon-number amplitudes with no use of
//! coherent-state algebra, so it serves as an independent check of the
//! closed forms in `phasecorr`. It is slow and only meant for tests.

use argmin::core::{CostFunction, Executor};
use argmin::solver::neldermead::NelderMead;
use nalgebra::{DMatrix, DVector, Matrix2, Matrix4};
use num_complex::Complex64 as C;

pub type Qubit4 = Matrix4<C>;

/// Smallest truncation the cross-checks accept at amplitude `gamma`.
pub fn min_truncation(gamma: f64) -> usize {
    ((gamma + 4.0) * (gamma + 4.0)).ceil() as usize
}

/// `|α⟩` truncated to `n` levels.
pub fn coherent(alpha: C, n: usize) -> DVector<C> {
    let mut v = DVector::zeros(n);
    let mut c = C::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for k in 0..n {
        v[k] = c;
        c = c * alpha / ((k + 1) as f64).sqrt();
    }
    v
}

/// Normalized `|γ⟩ ± |−γ⟩`; `None` if the odd cat vanishes.
pub fn cat(gamma: C, even: bool, n: usize) -> Option<DVector<C>> {
    let s = if even { 1.0 } else { -1.0 };
    let v = coherent(gamma, n) + coherent(-gamma, n) * C::new(s, 0.0);
    let norm = v.norm();
    (norm > 1e-12).then(|| v / C::new(norm, 0.0))
}

/// `a` on `n` levels.
pub fn annihilation(n: usize) -> DMatrix<C> {
    let mut a = DMatrix::zeros(n, n);
    for k in 1..n {
        a[(k - 1, k)] = C::new((k as f64).sqrt(), 0.0);
    }
    a
}

/// `D(α)` on `n` levels, columns built as `(a† − ᾱ)ᵏ|α⟩/√k!` in a
/// doubled space so that truncation does not reach the kept rows.
pub fn displacement(alpha: C, n: usize) -> DMatrix<C> {
    let big = 2 * n + 20;
    let adag = annihilation(big).adjoint();
    let mut col = coherent(alpha, big);
    let mut d = DMatrix::zeros(n, n);
    for k in 0..n {
        d.set_column(k, &col.rows(0, n).into_owned());
        col = (&adag * &col - &col * alpha.conj()) / C::new(((k + 1) as f64).sqrt(), 0.0);
    }
    d
}

/// Mixture of pure states; two-mode kets are stored as `n × n` amplitude
/// matrices `ψ[m₁, m₂]`, single-mode kets as `n × 1`.
#[derive(Debug, Clone)]
pub struct FockMixture {
    pub n: usize,
    pub modes: usize,
    pub components: Vec<(f64, DMatrix<C>)>,
}

fn pair(a: &DVector<C>, b: &DVector<C>) -> DMatrix<C> {
    a * b.transpose()
}

impl FockMixture {
    /// Normalizes each component and the weights.
    pub fn new(modes: usize, components: Vec<(f64, DMatrix<C>)>) -> Self {
        let n = components[0].1.nrows();
        let total: f64 = components.iter().map(|c| c.0).sum();
        let components = components
            .into_iter()
            .map(|(w, k)| {
                let norm = k.norm();
                (w / total, k / C::new(norm, 0.0))
            })
            .collect();
        Self { n, modes, components }
    }

    /// The catalog states by name at real or complex `γ`.
    pub fn named(name: &str, gamma: C, n: usize) -> Option<Self> {
        let g = coherent(gamma, n);
        let mg = coherent(-gamma, n);
        let two = |parts: Vec<(f64, DMatrix<C>)>| Some(Self::new(2, parts));
        let col = |v: DVector<C>| DMatrix::from_column_slice(n, 1, v.as_slice());
        if let Some(s) = match name {
            "coherent_product" => two(vec![(1.0, pair(&g, &g))]),
            "sigma_q_pp" => two(vec![(0.5, pair(&g, &g)), (0.5, pair(&mg, &mg))]),
            "sigma_q_pm" => two(vec![(0.5, pair(&g, &mg)), (0.5, pair(&mg, &g))]),
            _ => None,
        } {
            return Some(s);
        }
        let e = cat(gamma, true, n)?;
        let o = cat(gamma, false, n)?;
        match name {
            "rho_pp" => two(vec![
                (0.25, pair(&g, &g)),
                (0.25, pair(&mg, &mg)),
                (0.25, pair(&e, &e)),
                (0.25, pair(&o, &o)),
            ]),
            "rho_pm" => two(vec![
                (0.25, pair(&g, &mg)),
                (0.25, pair(&mg, &g)),
                (0.25, pair(&e, &o)),
                (0.25, pair(&o, &e)),
            ]),
            "sigma_c_pp" => two(vec![(0.5, pair(&e, &e)), (0.5, pair(&o, &o))]),
            "sigma_c_pm" => two(vec![(0.5, pair(&e, &o)), (0.5, pair(&o, &e))]),
            "marginal" => Some(Self::new(
                1,
                vec![(0.25, col(g)), (0.25, col(mg)), (0.25, col(e)), (0.25, col(o))],
            )),
            "even_cat" => Some(Self::new(1, vec![(1.0, col(e))])),
            "odd_cat" => Some(Self::new(1, vec![(1.0, col(o))])),
            _ => None,
        }
    }

    /// Eigenvalues, descending, from the Gram matrix of the weighted kets.
    pub fn spectrum(&self) -> Vec<f64> {
        let k = self.components.len();
        let gram = DMatrix::from_fn(k, k, |i, j| {
            let (wi, ki) = &self.components[i];
            let (wj, kj) = &self.components[j];
            ki.dotc(kj) * (wi * wj).sqrt()
        });
        let mut ev: Vec<f64> = gram.symmetric_eigenvalues().iter().map(|x| x.max(0.0)).collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        ev
    }

    /// `⟨a†ᵖ aᑫ ⊗ b†ʳ bˢ⟩` for `first = (p, q)`, `second = (r, s)`.
    pub fn moment(&self, first: (u32, u32), second: (u32, u32)) -> C {
        let a = annihilation(self.n);
        let pow = |m: &DMatrix<C>, k: u32| (0..k).fold(DMatrix::identity(self.n, self.n), |acc, _| acc * m);
        let op_a = pow(&a.adjoint(), first.0) * pow(&a, first.1);
        let op_b = pow(&a.adjoint(), second.0) * pow(&a, second.1);
        self.components
            .iter()
            .map(|(w, psi)| {
                let applied = if self.modes == 2 {
                    &op_a * psi * op_b.transpose()
                } else {
                    &op_a * psi
                };
                psi.dotc(&applied) * *w
            })
            .sum()
    }

    /// Wigner function `(2/π)^modes Σ w ⟨ψ|D Π D†|ψ⟩` at `(z₁[, z₂])`,
    /// with `z` in amplitude units.
    pub fn wigner(&self, z: &[C]) -> f64 {
        let parity = |m: usize| if m.is_multiple_of(2) { 1.0 } else { -1.0 };
        let da = displacement(-z[0], self.n);
        let db = (self.modes == 2).then(|| displacement(-z[1], self.n));
        let mut total = 0.0;
        for (w, psi) in &self.components {
            let phi = match &db {
                Some(db) => &da * psi * db.transpose(),
                None => &da * psi,
            };
            let mut s = 0.0;
            for (m1, row) in phi.row_iter().enumerate() {
                for (m2, v) in row.iter().enumerate() {
                    s += parity(m1) * parity(m2) * v.norm_sqr();
                }
            }
            total += w * s;
        }
        total * std::f64::consts::FRAC_2_PI.powi(self.modes as i32)
    }

    /// Qubit matrix in the basis `{ee, eo, oe, oo}` of the cat qubit at `γ`.
    pub fn qubit_matrix(&self, gamma: C) -> Option<Qubit4> {
        let basis = [cat(gamma, true, self.n)?, cat(gamma, false, self.n)?];
        Some(self.project(&basis))
    }

    fn project(&self, basis: &[DVector<C>; 2]) -> Qubit4 {
        let mut m = Qubit4::zeros();
        for (w, psi) in &self.components {
            let amp: Vec<C> = (0..4)
                .map(|i| {
                    let (k, l) = (i / 2, i % 2);
                    basis[k].dotc(&(psi * basis[l].conjugate()))
                })
                .collect();
            for i in 0..4 {
                for j in 0..4 {
                    m[(i, j)] += amp[i] * amp[j].conj() * *w;
                }
            }
        }
        m
    }

    /// Qubit matrix of the `γ → 0` limit, in which `|±γ⟩` and `|γe⟩` become
    /// `|0⟩` and `|γo⟩` becomes `|1⟩`.
    pub fn fock_limit_qubit(name: &str) -> Option<Qubit4> {
        let n = 4;
        let mut zero = DVector::zeros(n);
        zero[0] = C::new(1.0, 0.0);
        let mut one = DVector::zeros(n);
        one[1] = C::new(1.0, 0.0);
        let (g, e, o) = (&zero, &zero, &one);
        let parts = match name {
            "rho_pp" => vec![(0.25, pair(g, g)), (0.25, pair(g, g)), (0.25, pair(e, e)), (0.25, pair(o, o))],
            "rho_pm" => vec![(0.25, pair(g, g)), (0.25, pair(g, g)), (0.25, pair(e, o)), (0.25, pair(o, e))],
            "sigma_q_pp" | "sigma_q_pm" | "coherent_product" => vec![(1.0, pair(g, g))],
            "sigma_c_pp" => vec![(0.5, pair(e, e)), (0.5, pair(o, o))],
            "sigma_c_pm" => vec![(0.5, pair(e, o)), (0.5, pair(o, e))],
            _ => return None,
        };
        Some(Self::new(2, parts).project(&[zero.clone(), one.clone()]))
    }
}

fn pauli(k: usize) -> Matrix2<C> {
    let (z, o, i) = (C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 1.0));
    match k {
        0 => Matrix2::new(o, z, z, o),
        1 => Matrix2::new(z, o, o, z),
        2 => Matrix2::new(z, -i, i, z),
        _ => Matrix2::new(o, z, z, -o),
    }
}

fn kron(a: &Matrix2<C>, b: &Matrix2<C>) -> Qubit4 {
    Qubit4::from_fn(|i, j| a[(i / 2, j / 2)] * b[(i % 2, j % 2)])
}

/// `½(b₀ I + b·σ)`.
fn bloch_operator(b: &[f64]) -> Matrix2<C> {
    (0..4).fold(Matrix2::zeros(), |acc, k| acc + pauli(k) * C::new(0.5 * b[k], 0.0))
}

struct Cost<F>(F);

impl<F: Fn(&[f64]) -> f64> CostFunction for Cost<F> {
    type Param = Vec<f64>;
    type Output = f64;
    fn cost(&self, p: &Vec<f64>) -> Result<f64, argmin::core::Error> {
        Ok((self.0)(p))
    }
}

fn simplex_min(f: impl Fn(&[f64]) -> f64, x0: Vec<f64>, step: f64, iters: u64) -> (Vec<f64>, f64) {
    let mut simplex = vec![x0.clone()];
    for i in 0..x0.len() {
        let mut v = x0.clone();
        v[i] += step;
        simplex.push(v);
    }
    let solver = NelderMead::new(simplex).with_sd_tolerance(1e-16).unwrap();
    let res = Executor::new(Cost(&f), solver)
        .configure(|s| s.max_iters(iters))
        .run()
        .unwrap();
    let s = res.state();
    (s.best_param.clone().unwrap_or(x0), s.best_cost)
}

/// `min ‖ρ − χ‖²` (Hilbert–Schmidt) over classical-quantum states
/// `χ = Σ_k |k⟩⟨k| ⊗ B_k`, by direct search over the measurement axis and
/// the two conditional operators `B_k` of side B. Non-positive `B_k` are
/// penalized.
pub fn geometric_discord_brute(rho: &Qubit4) -> f64 {
    let distance = |axis: &[f64], b: &[f64]| -> f64 {
        let (t, p) = (axis[0], axis[1]);
        let n = [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()];
        let ns = (1..4).fold(Matrix2::zeros(), |acc, k| acc + pauli(k) * C::new(n[k - 1], 0.0));
        let id = pauli(0);
        let proj = [(id + ns) * C::new(0.5, 0.0), (id - ns) * C::new(0.5, 0.0)];
        let chi = kron(&proj[0], &bloch_operator(&b[0..4])) + kron(&proj[1], &bloch_operator(&b[4..8]));
        let mut penalty = 0.0;
        for bk in [&b[0..4], &b[4..8]] {
            let r = (bk[1] * bk[1] + bk[2] * bk[2] + bk[3] * bk[3]).sqrt();
            penalty += (r - bk[0]).max(0.0) * 1e3;
        }
        (rho - chi).norm_squared() + penalty
    };
    let inner = |axis: &[f64]| -> f64 {
        let start = vec![0.5, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0];
        let (x, _) = simplex_min(|b| distance(axis, b), start, 0.2, 6000);
        // restart once from the first result to escape a collapsed simplex
        simplex_min(|b| distance(axis, b), x, 0.05, 6000).1
    };
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let seeds = 200;
    let mut best = (f64::INFINITY, vec![0.0, 0.0]);
    for i in 0..seeds {
        let z = 1.0 - (2.0 * i as f64 + 1.0) / seeds as f64;
        let axis = vec![z.acos(), golden * i as f64];
        let v = inner(&axis);
        if v < best.0 {
            best = (v, axis);
        }
    }
    let (_, v) = simplex_min(inner, best.1, 0.1, 200);
    v.min(best.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coherent_is_normalized() {
        let v = coherent(C::new(1.2, -0.4), 60);
        assert!((v.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn displacement_moves_vacuum() {
        let n = 40;
        let alpha = C::new(0.7, 0.3);
        let d = displacement(alpha, n);
        let mut vac = DVector::zeros(n);
        vac[0] = C::new(1.0, 0.0);
        assert!((&d * vac - coherent(alpha, n)).norm() < 1e-12);
    }

    #[test]
    fn odd_cat_wigner_at_origin() {
        let s = FockMixture::named("odd_cat", C::new(1.0, 0.0), 40).unwrap();
        assert!((s.wigner(&[C::new(0.0, 0.0)]) + std::f64::consts::FRAC_2_PI).abs() < 1e-12);
    }

    #[test]
    fn bell_state_discord() {
        let h = C::new(0.5, 0.0);
        let mut m = Qubit4::zeros();
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            m[(i, j)] = h;
        }
        // ¼(‖x‖² + ‖T‖² − k_max) = ¼(3 − 1)
        assert!((geometric_discord_brute(&m) - 0.5).abs() < 1e-8);
    }
}
