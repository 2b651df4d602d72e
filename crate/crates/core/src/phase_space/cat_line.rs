//! Semi-analytic Wigner integrals for operators whose labels on each mode
//! lie on a single line `{λ, −λ}`.
//!
//! In coordinates `z = e^{iχ}(x + iy)` with `λ = g e^{iχ}`, every dyad kernel
//! factorizes as `e^{-2y²} h(x) e^{iνky}` with `k = 4g`, `ν ∈ {−1, 0, 1}` and
//! one of three real Gaussians `h`. At fixed `(x₁, y₁, x₂)` the Wigner
//! function along `y₂` is therefore `e^{-2y²}(P + M cos(ky + ψ))`, whose
//! absolute integral has a rapidly converging closed form (the Fourier
//! series of `|a + cos θ|` against a Gaussian). The `x` axes use
//! Gauss–Legendre nodes in a sinh-graded coordinate and `y₁` uses the
//! trapezoid rule, folded onto one period of the fringes when that is
//! shorter than the Gaussian envelope.

use num_traits::Zero;
use rayon::prelude::*;

use super::quadrature::gauss_legendre;
use crate::algebra::{overlap, same_label, DyadOperator, Mode};
use crate::error::{Error, Result};
use crate::scalar::{lit, Amplitude, Real};

/// Grading strength of the `x` axes; nodes near the origin are
/// `sinh β / β` times denser than the box average.
const GRADING: f64 = 3.0;
/// `e^{-2Y²}` is negligible beyond `|y| = Y`.
const Y_MAX: f64 = 5.0;
/// Fourier terms are dropped once `e^{-m²k²/8}` falls below this.
const DAMP_FLOOR: f64 = 1e-17;
const MAX_HARMONICS: usize = 4096;

/// Labels of one mode written as `±λ`.
#[derive(Debug, Clone, Copy)]
struct Line<T> {
    lambda: Amplitude<T>,
    g: T,
}

impl<T: Real> Line<T> {
    fn detect(labels: &[Amplitude<T>]) -> Option<Self> {
        let lambda = labels
            .iter()
            .copied()
            .max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap_or(std::cmp::Ordering::Equal))?;
        labels
            .iter()
            .all(|&l| same_label(l, lambda) || same_label(l, -lambda))
            .then(|| Self {
                lambda,
                g: lambda.norm(),
            })
    }

    fn k(&self) -> T {
        lit::<T>(4.0) * self.g
    }

    /// Sign `s` with `label = s·λ`.
    fn sign(&self, label: Amplitude<T>) -> Result<T> {
        if same_label(label, self.lambda) {
            Ok(T::one())
        } else if same_label(label, -self.lambda) {
            Ok(-T::one())
        } else {
            Err(Error::LabelNotInTable(format!("{label}")))
        }
    }

    /// `(function index, frequency ν)` of `|s_a λ⟩⟨s_b λ|`.
    fn classify(&self, ket: Amplitude<T>, bra: Amplitude<T>) -> Result<(usize, usize)> {
        let (sa, sb) = (self.sign(ket)?, self.sign(bra)?);
        let f = if sa != sb {
            2
        } else if sa > T::zero() {
            0
        } else {
            1
        };
        // e^{-2iy(s_a - s_b)g} = e^{iνky} with ν = (s_b - s_a)/2, stored as ν + 1
        let nu = if sa == sb {
            1
        } else if sa > T::zero() {
            0
        } else {
            2
        };
        Ok((f, nu))
    }

    /// `h₀, h₁, h₂` at `x`: the Gaussians of `|λ⟩⟨λ|`, `|−λ⟩⟨−λ|` and of the
    /// cross dyads, with the `2/π` prefactor and overlap folded in.
    fn factors(&self, x: T) -> [T; 3] {
        let two = lit::<T>(2.0);
        let pref = T::FRAC_2_PI();
        let g = self.g;
        let cross = overlap(self.lambda, -self.lambda).re;
        [
            pref * (-two * (x - g) * (x - g)).exp(),
            pref * (-two * (x + g) * (x + g)).exp(),
            pref * cross * (-two * (x - g) * (x + g)).exp(),
        ]
    }
}

/// `∫ e^{-2y²} |P + M cos(ky + ψ)| dy` for `M ≥ 0`, given `cos ψ` and the
/// damping factors `e^{-m²k²/8}`.
fn abs_gauss_cos<T: Real>(p: T, m: T, cos_psi: T, damp: &[T]) -> T {
    let root = (T::PI() / lit(2.0)).sqrt();
    let damp1 = damp.get(1).copied().unwrap_or_else(T::zero);
    if m <= T::zero() || p.abs() >= m {
        return root * (p.abs() + p.signum() * m * damp1 * cos_psi);
    }
    let a = p / m;
    let theta0 = (-a).acos();
    let (c0, s0) = (-a, (T::one() - a * a).max(T::zero()).sqrt());
    let four_pi = lit::<T>(4.0) / T::PI();
    let two = lit::<T>(2.0);
    let half = lit::<T>(0.5);
    // S_j = (4/π) sin(jθ₀)/j, S_0 = (4θ₀ − 2π)/π; sin(jθ₀) by recurrence
    let s_of = |j: usize, sin_j: T| -> T {
        if j == 0 {
            (lit::<T>(4.0) * theta0 - two * T::PI()) / T::PI()
        } else {
            four_pi * sin_j / lit(j as f64)
        }
    };
    let mut sin_prev = T::zero(); // sin(0·θ₀)
    let mut sin_cur = s0; // sin(1·θ₀)
    let mut big_s = [s_of(0, T::zero()), s_of(1, s0), T::zero()];
    let mut total = half * (a * big_s[0] + big_s[1]);
    let (mut cos_prev, mut cos_cur) = (T::one(), cos_psi);
    for j in 1..damp.len() {
        let sin_next = two * c0 * sin_cur - sin_prev;
        big_s[2] = s_of(j + 1, sin_next);
        let cj = a * big_s[1] + half * (big_s[0] + big_s[2]);
        total += cj * damp[j] * cos_cur;
        let cos_next = two * cos_psi * cos_cur - cos_prev;
        cos_prev = cos_cur;
        cos_cur = cos_next;
        sin_prev = sin_cur;
        sin_cur = sin_next;
        big_s = [big_s[1], big_s[2], T::zero()];
    }
    m * root * total
}

/// Nodes and weights on `[-R, R]`: Gauss–Legendre in `t` with
/// `x = R sinh(βt)/sinh β`.
fn graded_axis<T: Real>(half_width: T, n: usize) -> (Vec<T>, Vec<T>) {
    let (t, w) = gauss_legendre(n);
    let r = half_width.to_f64().unwrap_or(f64::NAN);
    let sb = GRADING.sinh();
    t.iter()
        .zip(&w)
        .map(|(&t, &w)| {
            (
                lit::<T>(r * (GRADING * t).sinh() / sb),
                lit::<T>(w * r * GRADING * (GRADING * t).cosh() / sb),
            )
        })
        .unzip()
}

/// `(cos θ, sin θ, weight)` samples with `Σ w f(θ) ≈ ∫ e^{-2y²} f(ky) dy`,
/// and the `y` of each sample unless they are folded onto one period.
#[allow(clippy::type_complexity)]
fn fringe_samples<T: Real>(k: f64, spacing: f64, min_per_period: usize) -> (Vec<(T, T, T)>, Option<Vec<T>>) {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut out = Vec::new();
    let mut ys = None;
    if k > 0.0 && two_pi / k <= 2.0 * Y_MAX {
        let period = two_pi / k;
        let l = ((period / spacing).ceil() as usize).max(min_per_period);
        let images = (Y_MAX * k / two_pi).ceil() as i64 + 1;
        for i in 0..l {
            let theta = two_pi * (i as f64 + 0.5) / l as f64;
            let kernel: f64 = (-images..=images)
                .map(|j| (-2.0 * ((theta + two_pi * j as f64) / k).powi(2)).exp())
                .sum();
            let w = kernel / k * two_pi / l as f64;
            out.push((lit(theta.cos()), lit(theta.sin()), lit(w)));
        }
    } else {
        let count = (2.0 * Y_MAX / spacing).ceil() as usize;
        let h = 2.0 * Y_MAX / count as f64;
        let mut pos = Vec::with_capacity(count + 1);
        for i in 0..=count {
            let y = -Y_MAX + h * i as f64;
            let theta = k * y;
            out.push((lit(theta.cos()), lit(theta.sin()), lit(h * (-2.0 * y * y).exp())));
            pos.push(lit(y));
        }
        ys = Some(pos);
    }
    (out, ys)
}

/// Coefficients `R[ν₁][ν₂][f₁][f₂]` of an operator over two lines.
#[derive(Debug, Clone, PartialEq)]
pub struct LineCoefficients<T> {
    r: [[[[Amplitude<T>; 3]; 3]; 3]; 3],
}

impl<T: Real> LineCoefficients<T> {
    /// All 81 coefficients in a fixed order.
    pub fn values(&self) -> impl Iterator<Item = Amplitude<T>> + '_ {
        self.r.iter().flatten().flatten().flatten().copied()
    }
}

/// Sample points of one integration pass.
#[derive(Debug, Clone)]
struct Axes<T> {
    xa: Vec<T>,
    ha: Vec<[T; 3]>,
    wa: Vec<T>,
    xb: Vec<T>,
    hb: Vec<[T; 3]>,
    wb: Vec<T>,
    fringes: Vec<(T, T, T)>,
    /// `y₁` of each fringe sample; `None` when folded onto one period.
    ys: Option<Vec<T>>,
}

/// Inclusive index bounds of the nodes where `W` goes negative along `y₂`.
#[derive(Debug, Clone, Copy)]
struct Support {
    a: (usize, usize),
    y: (usize, usize),
    b: (usize, usize),
}

impl Support {
    fn point(a: usize, y: usize, b: usize) -> Self {
        Self {
            a: (a, a),
            y: (y, y),
            b: (b, b),
        }
    }

    fn merge(self, o: Self) -> Self {
        let m = |p: (usize, usize), q: (usize, usize)| (p.0.min(q.0), p.1.max(q.1));
        Self {
            a: m(self.a, o.a),
            y: m(self.y, o.y),
            b: m(self.b, o.b),
        }
    }
}

fn merge_support(p: Option<Support>, q: Option<Support>) -> Option<Support> {
    match (p, q) {
        (Some(p), Some(q)) => Some(p.merge(q)),
        (p, q) => p.or(q),
    }
}

/// Nodes whose negative part is below this fraction of `∫|W| dy₂` count as
/// nonnegative.
const NEGATIVE_FLOOR: f64 = 1e-10;
/// The negative part is re-integrated on the support box when that box
/// covers at most this fraction of the full one.
const REFINE_FRACTION: f64 = 0.25;

/// Interval `[lo, hi]` spanned by the nodes `bounds` plus one neighbour on
/// each side, clipped to `[-limit, limit]`.
fn padded_span<T: Real>(pos: &[T], (lo, hi): (usize, usize), limit: T) -> (T, T) {
    let left = if lo == 0 { -limit } else { pos[lo - 1] };
    let right = if hi + 1 >= pos.len() { limit } else { pos[hi + 1] };
    (left, right)
}

/// Plain Gauss–Legendre nodes and weights on `[lo, hi]`.
fn legendre_on<T: Real>((lo, hi): (T, T), n: usize) -> (Vec<T>, Vec<T>) {
    let (t, w) = gauss_legendre(n);
    let half = (hi - lo) * lit(0.5);
    let mid = (hi + lo) * lit(0.5);
    t.iter().zip(&w).map(|(&t, &w)| (mid + half * lit(t), half * lit(w))).unzip()
}

/// Precomputed axes and factors for the semi-analytic Wigner integrals on a
/// pair of label lines.
///
/// A first pass covers the whole box. When the nodes with negative `W`
/// occupy a small corner of it, a second pass with the same node count
/// integrates the negative part on that corner alone.
#[derive(Debug, Clone)]
pub struct CatLineTable<T> {
    lines: [Line<T>; 2],
    half_width: T,
    nodes: usize,
    axes: Axes<T>,
    damp: Vec<T>,
    damp1: T,
}

impl<T: Real> CatLineTable<T> {
    /// Builds the table when every label of `rho` is `±λ_A` on mode A and
    /// `±λ_B` on mode B; `None` otherwise.
    pub fn for_operator(rho: &DyadOperator<T>, half_width: T, nodes: usize) -> Result<Option<Self>> {
        let la = Line::detect(&rho.labels(Mode::A)?);
        let lb = Line::detect(&rho.labels(Mode::B)?);
        Ok(match (la, lb) {
            (Some(a), Some(b)) => Some(Self::new([a, b], half_width, nodes)),
            _ => None,
        })
    }

    fn new(lines: [Line<T>; 2], half_width: T, nodes: usize) -> Self {
        let (xs, ws) = graded_axis(half_width, nodes);
        let spacing = 2.0 * half_width.to_f64().unwrap_or(1.0) / nodes as f64;
        let (fringes, ys) = fringe_samples(lines[0].k().to_f64().unwrap_or(0.0), spacing, nodes);
        let axes = Axes {
            ha: xs.iter().map(|&x| lines[0].factors(x)).collect(),
            hb: xs.iter().map(|&x| lines[1].factors(x)).collect(),
            xa: xs.clone(),
            xb: xs,
            wa: ws.clone(),
            wb: ws,
            fringes,
            ys,
        };
        let kb = lines[1].k().to_f64().unwrap_or(0.0);
        let mut damp = Vec::new();
        if kb > 0.0 {
            for m in 0..MAX_HARMONICS {
                let d = (-((m * m) as f64) * kb * kb / 8.0).exp();
                if d < DAMP_FLOOR {
                    break;
                }
                damp.push(lit(d));
            }
        } else {
            damp.push(T::one());
        }
        let damp1 = damp.get(1).copied().unwrap_or_else(T::zero);
        Self {
            lines,
            half_width,
            nodes,
            axes,
            damp,
            damp1,
        }
    }

    pub fn coefficients(&self, rho: &DyadOperator<T>) -> Result<LineCoefficients<T>> {
        if rho.modes() != 2 {
            return Err(Error::ModeMismatch {
                expected: 2,
                found: rho.modes(),
            });
        }
        let mut r = [[[[Amplitude::zero(); 3]; 3]; 3]; 3];
        for t in rho.terms() {
            let (fa, na) = self.lines[0].classify(t.ket[0], t.bra[0])?;
            let (fb, nb) = self.lines[1].classify(t.ket[1], t.bra[1])?;
            r[na][nb][fa][fb] += t.coeff;
        }
        Ok(LineCoefficients { r })
    }

    /// `(∫W, ∫|W|)` over the box `|x₁|, |x₂| ≤ R` and all `y₁, y₂`.
    pub fn integrals(&self, coeffs: &LineCoefficients<T>) -> (T, T) {
        let (signed, absolute, support) = self.sweep(coeffs, &self.axes);
        match support.and_then(|s| self.refined(s)) {
            Some(fine) => {
                let (s, a, _) = self.sweep(coeffs, &fine);
                (signed, signed + (a - s))
            }
            None => (signed, absolute),
        }
    }

    /// Axes confined to the padded support box, if it is small enough.
    fn refined(&self, s: Support) -> Option<Axes<T>> {
        let r = self.half_width;
        let ymax = lit::<T>(Y_MAX);
        let span_a = padded_span(&self.axes.xa, s.a, r);
        let span_b = padded_span(&self.axes.xb, s.b, r);
        let span_y = self.axes.ys.as_ref().map(|ys| padded_span(ys, s.y, ymax));
        let frac = |(lo, hi): (T, T), limit: T| ((hi - lo) / (limit + limit)).to_f64().unwrap_or(1.0);
        let volume = frac(span_a, r) * frac(span_b, r) * span_y.map_or(1.0, |y| frac(y, ymax));
        if volume > REFINE_FRACTION {
            return None;
        }
        let (xa, wa) = legendre_on(span_a, self.nodes);
        let (xb, wb) = legendre_on(span_b, self.nodes);
        let (fringes, ys) = match span_y {
            Some(span) => {
                let k = self.lines[0].k();
                let (ys, wy) = legendre_on(span, self.nodes);
                let f = ys
                    .iter()
                    .zip(&wy)
                    .map(|(&y, &w)| {
                        let (s, c) = (k * y).sin_cos();
                        (c, s, w * (lit::<T>(-2.0) * y * y).exp())
                    })
                    .collect();
                (f, Some(ys))
            }
            None => (self.axes.fringes.clone(), None),
        };
        Some(Axes {
            ha: xa.iter().map(|&x| self.lines[0].factors(x)).collect(),
            hb: xb.iter().map(|&x| self.lines[1].factors(x)).collect(),
            xa,
            wa,
            xb,
            wb,
            fringes,
            ys,
        })
    }

    /// `(∫W, ∫|W|)` on one set of axes, with the support of the negative part.
    fn sweep(&self, coeffs: &LineCoefficients<T>, axes: &Axes<T>) -> (T, T, Option<Support>) {
        let root = (T::PI() / lit(2.0)).sqrt();
        let two = lit::<T>(2.0);
        let half = lit::<T>(0.5);
        let floor = lit::<T>(NEGATIVE_FLOOR);
        let rows: Vec<(T, T, Option<Support>)> = axes
            .ha
            .par_iter()
            .zip(&axes.wa)
            .enumerate()
            .map(|(ia, (ha, &wa))| {
                // q[ν₁][ν₂][f₂] = Σ_f₁ R h_f₁(x₁)
                let mut q = [[[Amplitude::<T>::zero(); 3]; 3]; 3];
                for n1 in 0..3 {
                    for n2 in 0..3 {
                        for f2 in 0..3 {
                            q[n1][n2][f2] = (0..3).map(|f1| coeffs.r[n1][n2][f1][f2] * ha[f1]).sum();
                        }
                    }
                }
                let (mut signed, mut absolute) = (T::zero(), T::zero());
                let mut support = None;
                for (ib, (hb, &wb)) in axes.hb.iter().zip(&axes.wb).enumerate() {
                    let mut cm = [[Amplitude::<T>::zero(); 3]; 3];
                    for n1 in 0..3 {
                        for n2 in 0..3 {
                            cm[n1][n2] = (0..3).map(|f2| q[n1][n2][f2] * hb[f2]).sum();
                        }
                    }
                    let (mut s_row, mut a_row) = (T::zero(), T::zero());
                    for (iy, &(ct, st, w)) in axes.fringes.iter().enumerate() {
                        let e = Amplitude::new(ct, st);
                        let ec = e.conj();
                        // ν index 0 ↔ e^{-iθ}, 1 ↔ 1, 2 ↔ e^{iθ}
                        let d0 = (cm[0][1] * ec + cm[1][1] + cm[2][1] * e).re;
                        let up = cm[0][2] * ec + cm[1][2] + cm[2][2] * e;
                        let down = cm[0][0] * ec + cm[1][0] + cm[2][0] * e;
                        let d1 = (up + down.conj()) * half;
                        let m = two * d1.norm();
                        let cos_psi = if m > T::zero() { two * d1.re / m } else { T::one() };
                        let s_node = root * (d0 + two * self.damp1 * d1.re);
                        let a_node = abs_gauss_cos(d0, m, cos_psi, &self.damp);
                        if a_node - s_node > floor * a_node {
                            support = merge_support(support, Some(Support::point(ia, iy, ib)));
                        }
                        s_row += w * s_node;
                        a_row += w * a_node;
                    }
                    signed += wb * s_row;
                    absolute += wb * a_row;
                }
                (wa * signed, wa * absolute, support)
            })
            .collect();
        rows.into_iter()
            .fold((T::zero(), T::zero(), None), |(s, a, sup), (rs, ra, rsup)| {
                (s + rs, a + ra, merge_support(sup, rsup))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(p: f64, m: f64, psi: f64, k: f64) -> f64 {
        let n = 400_000;
        let h = 2.0 * Y_MAX / n as f64;
        (0..=n)
            .map(|i| {
                let y = -Y_MAX + h * i as f64;
                (-2.0 * y * y).exp() * (p + m * (k * y + psi).cos()).abs() * h
            })
            .sum()
    }

    fn damp(k: f64) -> Vec<f64> {
        (0..MAX_HARMONICS)
            .map(|m| (-((m * m) as f64) * k * k / 8.0).exp())
            .take_while(|&d| d >= DAMP_FLOOR)
            .collect()
    }

    #[test]
    fn closed_form_matches_brute_force() {
        for &(p, m, psi, k) in &[
            (0.3, 1.0, 0.4, 2.0),
            (-0.2, 0.7, 2.0, 10.0),
            (1.5, 1.0, 1.0, 1.0),
            (0.0, 1.0, 0.0, 0.4),
            (0.05, 0.3, -1.2, 4.0),
        ] {
            let got = abs_gauss_cos(p, m, f64::cos(psi), &damp(k));
            let want = brute(p, m, psi, k);
            assert!((got - want).abs() < 1e-8, "{p} {m} {psi} {k}: {got} vs {want}");
        }
    }

    #[test]
    fn fringe_weights_integrate_gaussian() {
        let exact = (std::f64::consts::PI / 2.0).sqrt();
        for k in [0.04, 0.4, 4.0, 10.0] {
            let (s, _): (Vec<(f64, f64, f64)>, _) = fringe_samples(k, 0.1, 32);
            let total: f64 = s.iter().map(|x| x.2).sum();
            assert!((total - exact).abs() < 1e-12, "k = {k}");
            // ∫ e^{-2y²} cos(ky) dy = √(π/2) e^{-k²/8}
            let c: f64 = s.iter().map(|x| x.2 * x.0).sum();
            assert!((c - exact * (-k * k / 8.0).exp()).abs() < 1e-12, "k = {k}");
        }
    }

    #[test]
    fn graded_axis_integrates_polynomials() {
        let (x, w) = graded_axis(3.0f64, 64);
        let m0: f64 = w.iter().sum();
        let m2: f64 = x.iter().zip(&w).map(|(x, w)| w * x * x).sum();
        assert!((m0 - 6.0).abs() < 1e-10);
        assert!((m2 - 18.0).abs() < 1e-9);
    }
}
