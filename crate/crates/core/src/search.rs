//! Derivative-free local refinement and sphere seeding for the small
//! optimization problems in the crate (SU(2) modes, measurement axes, local
//! unitaries).

use argmin::core::{CostFunction, Executor};
use argmin::solver::neldermead::NelderMead;

/// Outcome of a local refinement.
#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
}

struct Objective<F>(F);

impl<F: Fn(&[f64]) -> f64> CostFunction for Objective<F> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, p: &Self::Param) -> Result<f64, argmin::core::Error> {
        let v = (self.0)(p);
        Ok(if v.is_nan() { f64::INFINITY } else { v })
    }
}

/// Nelder–Mead from `x0` with an axis-aligned initial simplex of size
/// `step`, stopping when the simplex values' spread drops below `tol` or
/// after `max_iters` iterations. The starting point is returned if nothing
/// better is found.
pub fn nelder_mead(f: impl Fn(&[f64]) -> f64, x0: &[f64], step: f64, tol: f64, max_iters: u64) -> Minimum {
    let start = Minimum {
        x: x0.to_vec(),
        value: f(x0),
    };
    let mut simplex = vec![x0.to_vec()];
    for i in 0..x0.len() {
        let mut v = x0.to_vec();
        v[i] += step;
        simplex.push(v);
    }
    let solver = match NelderMead::new(simplex).with_sd_tolerance(tol) {
        Ok(s) => s,
        Err(_) => return start,
    };
    let run = Executor::new(Objective(&f), solver)
        .configure(|state| state.max_iters(max_iters))
        .run();
    match run {
        Ok(res) => {
            let state = res.state();
            match state.best_param.as_ref() {
                Some(x) if state.best_cost < start.value => Minimum {
                    x: x.clone(),
                    value: state.best_cost,
                },
                _ => start,
            }
        }
        Err(_) => start,
    }
}

/// `n` nearly uniform unit vectors (Fibonacci lattice), starting at the
/// north pole region.
pub fn fibonacci_sphere(n: usize) -> Vec<[f64; 3]> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * i as f64;
            [r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

/// Unit vector at polar angle `theta` and azimuth `phi`.
pub fn spherical(theta: f64, phi: f64) -> [f64; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

/// `(theta, phi)` of a unit vector.
pub fn to_spherical(v: [f64; 3]) -> (f64, f64) {
    (v[2].clamp(-1.0, 1.0).acos(), v[1].atan2(v[0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_minimum() {
        let m = nelder_mead(
            |x| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 0.5).powi(2),
            &[0.0, 0.0],
            0.3,
            1e-14,
            500,
        );
        assert!((m.x[0] - 1.0).abs() < 1e-5);
        assert!((m.x[1] + 0.5).abs() < 1e-5);
    }

    #[test]
    fn sphere_points_are_unit_and_balanced() {
        let pts = fibonacci_sphere(2048);
        let mut centroid = [0.0; 3];
        for p in &pts {
            let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            assert!((n - 1.0).abs() < 1e-12);
            for k in 0..3 {
                centroid[k] += p[k] / pts.len() as f64;
            }
        }
        assert!(centroid.iter().all(|c| c.abs() < 1e-3));
    }

    #[test]
    fn spherical_round_trip() {
        let v = spherical(0.7, -2.0);
        let (t, p) = to_spherical(v);
        assert!((t - 0.7).abs() < 1e-12 && (p + 2.0).abs() < 1e-12);
    }
}
