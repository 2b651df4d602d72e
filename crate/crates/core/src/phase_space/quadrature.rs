use log::warn;
use rayon::prelude::*;

use super::cat_line::CatLineTable;
use super::Kernel;
use crate::algebra::{same_label, DyadOperator, Mode};
use crate::error::{Error, Result};
use crate::scalar::{c, lit, Amplitude, Real};

pub const DEFAULT_NODES: usize = 96;
pub const DEFAULT_MARGIN: f64 = 4.0;
pub const MAX_NODES: usize = 256;
const MIN_NODES: usize = 8;
const BLOCK: usize = 512;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { z } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = nf * (z * pn - pm) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Square box `[-R, R]²` per mode (amplitude units) with `n` nodes per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec<T> {
    pub half_width: T,
    pub nodes: usize,
}

impl<T: Real> QuadratureSpec<T> {
    pub fn new(half_width: T, nodes: usize) -> Result<Self> {
        if !(half_width > T::zero()) || !half_width.is_finite() {
            return Err(Error::InvalidQuadrature(format!("half-width {half_width} must be positive")));
        }
        if nodes < MIN_NODES {
            return Err(Error::InvalidQuadrature(format!("{nodes} nodes per axis, need at least {MIN_NODES}")));
        }
        Ok(Self { half_width, nodes })
    }

    /// `R = max |label| + margin`, `n = 96`.
    pub fn for_operator(rho: &DyadOperator<T>, margin: T) -> Result<Self> {
        Self::new(rho.max_label_norm() + margin, DEFAULT_NODES)
    }

    pub fn with_nodes(self, nodes: usize) -> Result<Self> {
        Self::new(self.half_width, nodes)
    }
}

/// Points and weights of a tensor grid on one mode's phase plane.
#[derive(Debug, Clone)]
pub struct ModeGrid<T> {
    points: Vec<Amplitude<T>>,
    weights: Vec<T>,
}

impl<T: Real> ModeGrid<T> {
    /// Tensor Gauss–Legendre rule on `[-R, R]²`.
    pub fn gauss_legendre(spec: &QuadratureSpec<T>) -> Self {
        let (x, w) = gauss_legendre(spec.nodes);
        let r = spec.half_width;
        let x: Vec<T> = x.iter().map(|&v| lit::<T>(v) * r).collect();
        let w: Vec<T> = w.iter().map(|&v| lit::<T>(v) * r).collect();
        let mut points = Vec::with_capacity(x.len() * x.len());
        let mut weights = Vec::with_capacity(x.len() * x.len());
        for (xi, wi) in x.iter().zip(&w) {
            for (yj, wj) in x.iter().zip(&w) {
                points.push(c(*xi, *yj));
                weights.push(*wi * *wj);
            }
        }
        Self { points, weights }
    }

    /// Evenly spaced probe grid including the box edges, unit weights.
    pub fn uniform(half_width: T, per_axis: usize) -> Result<Self> {
        if per_axis == 0 || !(half_width >= T::zero()) {
            return Err(Error::InvalidQuadrature(format!(
                "probe grid needs a point count > 0 and nonnegative half-width, got {per_axis} and {half_width}"
            )));
        }
        let axis: Vec<T> = if per_axis == 1 {
            vec![T::zero()]
        } else {
            let step = lit::<T>(2.0) * half_width / lit((per_axis - 1) as f64);
            (0..per_axis).map(|k| -half_width + step * lit(k as f64)).collect()
        };
        let mut points = Vec::with_capacity(per_axis * per_axis);
        for &x in &axis {
            for &y in &axis {
                points.push(c(x, y));
            }
        }
        let weights = vec![T::one(); points.len()];
        Ok(Self { points, weights })
    }

    pub fn points(&self) -> &[Amplitude<T>] {
        &self.points
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Real basis functions for one mode: for each unordered label pair the real
/// part of its kernel, plus the imaginary part when the labels differ.
#[derive(Debug, Clone)]
struct ModeBasis<T> {
    pairs: Vec<(Amplitude<T>, Amplitude<T>, usize, Option<usize>)>,
    len: usize,
}

impl<T: Real> ModeBasis<T> {
    fn from_labels(labels: &[Amplitude<T>]) -> Self {
        let mut pairs = Vec::new();
        let mut len = 0;
        for (i, &a) in labels.iter().enumerate() {
            for &b in &labels[i..] {
                let re = len;
                len += 1;
                let im = if same_label(a, b) {
                    None
                } else {
                    len += 1;
                    Some(re + 1)
                };
                pairs.push((a, b, re, im));
            }
        }
        Self { pairs, len }
    }

    /// `(re index, im index, sign)` with `K_{ket,bra} = f_re + i·sign·f_im`.
    fn lookup(&self, ket: Amplitude<T>, bra: Amplitude<T>) -> Result<(usize, Option<usize>, T)> {
        for &(a, b, re, im) in &self.pairs {
            if same_label(a, ket) && same_label(b, bra) {
                return Ok((re, im, T::one()));
            }
            if same_label(b, ket) && same_label(a, bra) {
                return Ok((re, im, -T::one()));
            }
        }
        Err(Error::LabelNotInTable(format!("|{ket}⟩⟨{bra}|")))
    }

    fn values(&self, kind: Kernel, z: Amplitude<T>, out: &mut [T]) {
        for &(a, b, re, im) in &self.pairs {
            let k = kind.eval(a, b, z);
            out[re] = k.re;
            if let Some(im) = im {
                out[im] = k.im;
            }
        }
    }
}

/// Sums over a two-mode grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSums<T> {
    /// `Σ w W`.
    pub signed: T,
    /// `Σ w |W|`.
    pub absolute: T,
    /// Smallest `w_B · W` seen; the true minimum on unit-weight grids.
    pub minimum: T,
}

/// Per-mode tables of real kernel factors on a pair of grids.
///
/// A two-mode operator over the tabulated labels is then
/// `W(z₁, z₂) = Σ_uv R_uv f_u(z₁) g_v(z₂)`, so evaluating it on the full
/// product grid needs no transcendental calls. Mode-B factors are stored
/// premultiplied by their quadrature weights.
#[derive(Debug, Clone)]
pub struct WignerFactorTable<T> {
    kind: Kernel,
    basis: [ModeBasis<T>; 2],
    fa: Vec<T>,
    wa: Vec<T>,
    gb: Vec<T>,
    mb: usize,
}

impl<T: Real> WignerFactorTable<T> {
    pub fn new(
        kind: Kernel,
        labels_a: &[Amplitude<T>],
        labels_b: &[Amplitude<T>],
        grid_a: &ModeGrid<T>,
        grid_b: &ModeGrid<T>,
    ) -> Self {
        let basis = [ModeBasis::from_labels(labels_a), ModeBasis::from_labels(labels_b)];
        let (nu, nv) = (basis[0].len, basis[1].len);
        let mut fa = vec![T::zero(); grid_a.len() * nu];
        for (i, &z) in grid_a.points().iter().enumerate() {
            basis[0].values(kind, z, &mut fa[i * nu..(i + 1) * nu]);
        }
        let mb = grid_b.len();
        let mut gb = vec![T::zero(); nv * mb];
        let mut row = vec![T::zero(); nv];
        for (j, (&z, &w)) in grid_b.points().iter().zip(grid_b.weights()).enumerate() {
            basis[1].values(kind, z, &mut row);
            for v in 0..nv {
                gb[v * mb + j] = row[v] * w;
            }
        }
        Self {
            kind,
            basis,
            fa,
            wa: grid_a.weights().to_vec(),
            gb,
            mb,
        }
    }

    /// Table covering every label of `rho` on both modes.
    pub fn for_operator(kind: Kernel, rho: &DyadOperator<T>, grid_a: &ModeGrid<T>, grid_b: &ModeGrid<T>) -> Result<Self> {
        Ok(Self::new(
            kind,
            &rho.labels(Mode::A)?,
            &rho.labels(Mode::B)?,
            grid_a,
            grid_b,
        ))
    }

    pub fn kind(&self) -> Kernel {
        self.kind
    }

    /// Row-major `R` with `Re(Σ c K_A K_B) = Σ R_uv f_u g_v`.
    pub fn coefficients(&self, rho: &DyadOperator<T>) -> Result<Vec<T>> {
        if rho.modes() != 2 {
            return Err(Error::ModeMismatch {
                expected: 2,
                found: rho.modes(),
            });
        }
        let (nu, nv) = (self.basis[0].len, self.basis[1].len);
        let mut r = vec![T::zero(); nu * nv];
        for t in rho.terms() {
            let (fr, fi, sa) = self.basis[0].lookup(t.ket[0], t.bra[0])?;
            let (gr, gi, sb) = self.basis[1].lookup(t.ket[1], t.bra[1])?;
            let (cr, ci) = (t.coeff.re, t.coeff.im);
            // Re[(cr + i ci)(fr + i sa fi)(gr + i sb gi)]
            r[fr * nv + gr] += cr;
            if let (Some(fi), Some(gi)) = (fi, gi) {
                r[fi * nv + gi] -= cr * sa * sb;
            }
            if let Some(gi) = gi {
                r[fr * nv + gi] -= ci * sb;
            }
            if let Some(fi) = fi {
                r[fi * nv + gr] -= ci * sa;
            }
        }
        Ok(r)
    }

    /// Weighted signed and absolute sums of the function with coefficients
    /// `r` over the product grid. Rows of mode A are processed in parallel
    /// and reduced in grid order, so the result does not depend on the
    /// thread count.
    pub fn sums(&self, r: &[T]) -> GridSums<T> {
        let (nu, nv) = (self.basis[0].len, self.basis[1].len);
        assert_eq!(r.len(), nu * nv);
        let mb = self.mb;
        let rows: Vec<(T, T, T)> = self
            .wa
            .par_iter()
            .enumerate()
            .map_init(
                || (vec![T::zero(); nv], vec![T::zero(); BLOCK]),
                |(h, buf), (i, &wa)| {
                    let f = &self.fa[i * nu..(i + 1) * nu];
                    for (v, hv) in h.iter_mut().enumerate() {
                        *hv = (0..nu).map(|u| f[u] * r[u * nv + v]).sum();
                    }
                    let (mut signed, mut absolute, mut minimum) = (T::zero(), T::zero(), T::infinity());
                    let mut j0 = 0;
                    while j0 < mb {
                        let len = BLOCK.min(mb - j0);
                        let buf = &mut buf[..len];
                        buf.iter_mut().for_each(|b| *b = T::zero());
                        for (v, &hv) in h.iter().enumerate() {
                            if hv == T::zero() {
                                continue;
                            }
                            let g = &self.gb[v * mb + j0..v * mb + j0 + len];
                            for (b, &gv) in buf.iter_mut().zip(g) {
                                *b += hv * gv;
                            }
                        }
                        for &b in buf.iter() {
                            signed += b;
                            absolute += b.abs();
                            minimum = minimum.min(b);
                        }
                        j0 += len;
                    }
                    (wa * signed, wa * absolute, minimum)
                },
            )
            .collect();
        let mut out = GridSums {
            signed: T::zero(),
            absolute: T::zero(),
            minimum: T::infinity(),
        };
        for (s, a, m) in rows {
            out.signed += s;
            out.absolute += a;
            out.minimum = out.minimum.min(m);
        }
        out
    }
}

/// When to stop doubling the node count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergencePolicy {
    /// Relative change between successive estimates that counts as converged.
    pub rel_tol: f64,
    /// Changes below this are converged regardless of the magnitude.
    pub abs_tol: f64,
    pub max_nodes: usize,
}

impl Default for ConvergencePolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-3,
            abs_tol: 1e-9,
            max_nodes: MAX_NODES,
        }
    }
}

impl ConvergencePolicy {
    /// A single evaluation at the starting node count.
    pub fn single() -> Self {
        Self {
            max_nodes: 0,
            ..Self::default()
        }
    }

    fn accepts(&self, prev: f64, next: f64) -> bool {
        let diff = (next - prev).abs();
        diff <= self.abs_tol || diff <= self.rel_tol * next.abs().max(prev.abs())
    }
}

/// Result of a negativity-volume computation.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativityEstimate<T> {
    /// `∫|W| − ∫W` at the finest node count used.
    pub delta: T,
    /// `∫W` over the box (should be 1).
    pub integral: T,
    pub nodes: usize,
    /// Whether the last doubling changed `delta` by less than the tolerance.
    pub converged: bool,
    /// `(nodes, delta)` for every evaluation, coarsest first.
    pub history: Vec<(usize, T)>,
}

/// Integrals `(∫W, ∫|W|)` of a two-mode operator at one node count.
///
/// Operators whose labels lie on one line `{λ, −λ}` per mode use the
/// semi-analytic [`CatLineTable`]; anything else falls back to the tensor
/// Gauss–Legendre rule.
pub fn wigner_integrals<T: Real>(rho: &DyadOperator<T>, spec: &QuadratureSpec<T>) -> Result<(T, T)> {
    if let Some(table) = CatLineTable::for_operator(rho, spec.half_width, spec.nodes)? {
        return Ok(table.integrals(&table.coefficients(rho)?));
    }
    let grid = ModeGrid::gauss_legendre(spec);
    let table = WignerFactorTable::for_operator(Kernel::Wigner, rho, &grid, &grid)?;
    let sums = table.sums(&table.coefficients(rho)?);
    Ok((sums.signed, sums.absolute))
}

/// Wigner negativity volume `∫|W| d²α₁ d²α₂ − 1` of a two-mode operator.
///
/// The negative mass is taken as `∫|W| − ∫W`, which equals the textbook form
/// for a normalized state and does not pick up the box-truncation error of
/// the normalization. The node count starts at `spec.nodes` and doubles (capped at
/// `policy.max_nodes`) until successive estimates agree; otherwise the
/// finest estimate is returned with `converged = false`.
pub fn negativity_volume<T: Real>(
    rho: &DyadOperator<T>,
    spec: &QuadratureSpec<T>,
    policy: &ConvergencePolicy,
) -> Result<NegativityEstimate<T>> {
    if rho.modes() != 2 {
        return Err(Error::ModeMismatch {
            expected: 2,
            found: rho.modes(),
        });
    }
    let recommended = rho.max_label_norm() + lit(DEFAULT_MARGIN);
    if spec.half_width < recommended {
        warn!(
            "quadrature half-width {} is below the recommended {}",
            spec.half_width, recommended
        );
    }
    let mut nodes = spec.nodes;
    let mut history = Vec::new();
    let mut converged = false;
    let mut integral;
    loop {
        let (signed, absolute) = wigner_integrals(rho, &spec.with_nodes(nodes)?)?;
        let delta = (absolute - signed).max(T::zero());
        integral = signed;
        if let Some(&(_, prev)) = history.last() {
            let prev: T = prev;
            converged = policy.accepts(prev.to_f64().unwrap_or(f64::NAN), delta.to_f64().unwrap_or(f64::NAN));
        }
        history.push((nodes, delta));
        if converged || nodes >= policy.max_nodes {
            break;
        }
        nodes = (2 * nodes).min(policy.max_nodes);
    }
    let &(nodes, delta) = history.last().expect("at least one evaluation");
    if !converged && policy.max_nodes > spec.nodes {
        warn!("negativity volume did not converge: history {history:?}");
    }
    Ok(NegativityEstimate {
        delta,
        integral,
        nodes,
        converged,
        history,
    })
}

/// Minimum of the Wigner (or Husimi) function of a two-mode operator on a
/// uniform `points⁴` probe grid of half-width `half_width` per axis.
pub fn probe_minimum<T: Real>(kind: Kernel, rho: &DyadOperator<T>, half_width: T, points: usize) -> Result<T> {
    let grid = ModeGrid::uniform(half_width, points)?;
    let table = WignerFactorTable::for_operator(kind, rho, &grid, &grid)?;
    Ok(table.sums(&table.coefficients(rho)?).minimum)
}
