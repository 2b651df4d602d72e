use num_traits::Zero;

use super::{overlap, same_label, DyadOperator};
use crate::error::{Error, Result};
use crate::linalg::{eigh, CMatrix};
use crate::scalar::{lit, Amplitude, Real};

/// Gram eigenvalues below this fraction of the largest are treated as zero.
pub const RANK_CUTOFF: f64 = 1e-12;
/// Eigenvalues down to `-CLAMP_TOL` are rounding noise and clamp to zero.
pub const CLAMP_TOL: f64 = 1e-10;

/// Logarithm base for entropies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Two,
    E,
}

impl LogBase {
    pub fn log<T: Real>(self, x: T) -> T {
        match self {
            LogBase::Two => x.log2(),
            LogBase::E => x.ln(),
        }
    }
}

impl std::str::FromStr for LogBase {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "2" | "two" | "bits" => Ok(LogBase::Two),
            "e" | "nats" | "ln" => Ok(LogBase::E),
            other => Err(format!("unknown log base '{other}' (expected 2 or e)")),
        }
    }
}

/// Eigenvalues of a density operator, descending and nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    eigenvalues: Vec<T>,
}

impl<T: Real> Spectrum<T> {
    /// Sorts descending and clamps rounding-level negatives; anything below
    /// `-1e-10` is rejected.
    pub fn from_eigenvalues(mut values: Vec<T>) -> Result<Self> {
        let floor = -lit::<T>(CLAMP_TOL);
        for v in &mut values {
            if *v < floor || !v.is_finite() {
                return Err(Error::NotPositive(v.to_f64().unwrap_or(f64::NAN)));
            }
            if *v < T::zero() {
                *v = T::zero();
            }
        }
        values.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        Ok(Self {
            eigenvalues: values,
        })
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn sum(&self) -> T {
        self.eigenvalues.iter().copied().sum()
    }

    /// Eigenvalues padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Vec<T> {
        let mut v = self.eigenvalues.clone();
        v.resize(n.max(v.len()), T::zero());
        v
    }
}

/// Spectrum of a dyad operator by the Gram-matrix method.
///
/// With distinct span vectors `φ_m`, `ρ = Σ C_mn |φ_m⟩⟨φ_n|` and
/// `G_mn = ⟨φ_m|φ_n⟩ = U Λ U†`, the nonzero eigenvalues of `ρ` are those of
/// `Λ^{1/2} U† C U Λ^{1/2}` restricted to the retained Gram directions.
pub fn spectrum<T: Real>(rho: &DyadOperator<T>) -> Result<Spectrum<T>> {
    let modes = rho.modes();
    let mut span: Vec<[Amplitude<T>; 2]> = Vec::new();
    let index_of = |span: &mut Vec<[Amplitude<T>; 2]>, v: [Amplitude<T>; 2]| -> usize {
        match span
            .iter()
            .position(|s| (0..modes).all(|m| same_label(s[m], v[m])))
        {
            Some(i) => i,
            None => {
                span.push(v);
                span.len() - 1
            }
        }
    };
    let mut entries = Vec::with_capacity(rho.len());
    for t in rho.terms() {
        let i = index_of(&mut span, t.ket);
        let j = index_of(&mut span, t.bra);
        entries.push((i, j, t.coeff));
    }
    let n = span.len();
    if n == 0 {
        return Spectrum::from_eigenvalues(Vec::new());
    }
    let mut coeffs: CMatrix<T> = CMatrix::zeros(n);
    for (i, j, c) in entries {
        coeffs[(i, j)] += c;
    }
    let gram = CMatrix::from_fn(n, |i, j| {
        (0..modes).fold(Amplitude::new(T::one(), T::zero()), |acc, m| {
            acc * overlap(span[j][m], span[i][m])
        })
    });

    let ge = eigh(&gram);
    let lmax = ge.max_value();
    let cutoff = lit::<T>(RANK_CUTOFF) * lmax;
    if let Some(&lmin) = ge.values.last() {
        if lmin < -cutoff.max(T::epsilon() * lit(16.0) * lmax) {
            return Err(Error::IllConditionedGram((lmin / lmax).to_f64().unwrap_or(f64::NAN)));
        }
    }
    let kept: Vec<usize> = (0..n).filter(|&k| ge.values[k] > cutoff).collect();
    let k = kept.len();
    // B = U_k Λ_k^{1/2}, reduced = B† C B
    let b = |row: usize, col: usize| -> Amplitude<T> {
        ge.vectors[(row, kept[col])] * ge.values[kept[col]].sqrt()
    };
    let mut cb: Vec<Amplitude<T>> = vec![Amplitude::zero(); n * k];
    for r in 0..n {
        for col in 0..k {
            cb[r * k + col] = (0..n).map(|s| coeffs[(r, s)] * b(s, col)).sum();
        }
    }
    let reduced = CMatrix::from_fn(k, |i, j| (0..n).map(|r| b(r, i).conj() * cb[r * k + j]).sum());
    let mut values = eigh(&reduced).values;
    values.resize(n, T::zero());
    Spectrum::from_eigenvalues(values)
}

/// `-Σ λ log λ` with `0 log 0 = 0`.
pub fn von_neumann_entropy<T: Real>(s: &Spectrum<T>, base: LogBase) -> T {
    shannon_entropy(s.eigenvalues(), base)
}

/// Shannon entropy of a probability vector; nonpositive entries contribute 0.
pub fn shannon_entropy<T: Real>(p: &[T], base: LogBase) -> T {
    p.iter()
        .filter(|&&x| x > T::zero())
        .map(|&x| -x * base.log(x))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cat_kets, mixture_to_dyads, DyadOperator, TwoModeKet};
    use crate::scalar::c;
    use approx::assert_abs_diff_eq;

    fn assert_spectrum(s: &Spectrum<f64>, mut expected: Vec<f64>, eps: f64) {
        expected.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let got = s.padded(expected.len());
        for (g, e) in got.iter().zip(&expected) {
            assert_abs_diff_eq!(*g, *e, epsilon = eps);
        }
    }

    #[test]
    fn coherent_projector_has_unit_spectrum() {
        let s = spectrum(&DyadOperator::coherent(c(1.3, -0.4))).unwrap();
        assert_spectrum(&s, vec![1.0], 1e-14);
    }

    #[test]
    fn mixture_of_two_coherent_states() {
        // ½(|γ⟩⟨γ| + |−γ⟩⟨−γ|) has eigenvalues (1 ± Γ)/2.
        let g = c(0.8, 0.0);
        let big = (-2.0 * 0.64f64).exp();
        let rho = mixture_to_dyads(&[
            (0.5, TwoModeKet::coherent(g, c(0.0, 0.0))),
            (0.5, TwoModeKet::coherent(-g, c(0.0, 0.0))),
        ])
        .unwrap();
        let s = spectrum(&rho).unwrap();
        assert_spectrum(&s, vec![(1.0 + big) / 2.0, (1.0 - big) / 2.0], 1e-13);
    }

    #[test]
    fn even_cat_is_pure() {
        let (e, _) = cat_kets(c(0.05f64, 0.0)).unwrap();
        let s = spectrum(&DyadOperator::pure(&e).unwrap()).unwrap();
        assert_abs_diff_eq!(s.eigenvalues()[0], 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(s.sum(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn entropy_values() {
        let half = Spectrum::from_eigenvalues(vec![0.5, 0.5]).unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&half, LogBase::Two), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(von_neumann_entropy(&half, LogBase::E), 2f64.ln(), epsilon = 1e-15);
        let bell = Spectrum::from_eigenvalues(vec![0.0, 0.25, 0.5, 0.25]).unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&bell, LogBase::Two), 1.5, epsilon = 1e-15);
        let pure = Spectrum::from_eigenvalues(vec![1.0]).unwrap();
        assert_eq!(von_neumann_entropy(&pure, LogBase::Two), 0.0);
    }

    #[test]
    fn clamping_and_rejection() {
        let s = Spectrum::from_eigenvalues(vec![-1e-12, 1.0]).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0, 0.0]);
        assert!(matches!(
            Spectrum::from_eigenvalues(vec![-1e-6, 1.0]),
            Err(Error::NotPositive(_))
        ));
    }

    #[test]
    fn log_base_parses() {
        assert_eq!("2".parse::<LogBase>().unwrap(), LogBase::Two);
        assert_eq!("e".parse::<LogBase>().unwrap(), LogBase::E);
        assert!("10".parse::<LogBase>().is_err());
    }
}
