//! Timing and convergence of the negativity volume across the γ sweep.
use phasecorr::phase_space::{wigner_integrals, QuadratureSpec};
use phasecorr::scalar::c;
use phasecorr::{build, StateId};

fn main() {
    let ids = [StateId::RhoPP, StateId::RhoPM, StateId::SigmaQPP, StateId::SigmaCPP, StateId::SigmaCPM];
    for gr in [0.1f64, 0.3, 0.5, 0.8, 1.0, 2.5] {
        for id in ids {
            let rho = build(id, c(gr, 0.0)).unwrap();
            let mut row = format!("g={gr:<4} {id:<11}");
            for n in [48usize, 96, 192] {
                let spec = QuadratureSpec::new(gr + 4.0, n).unwrap();
                let t = std::time::Instant::now();
                let (s, a) = wigner_integrals(&rho, &spec).unwrap();
                row += &format!(" n{n}: {:.9} ({:.0?}, ∫W-1={:.1e})", a - s, t.elapsed(), s - 1.0);
            }
            println!("{row}");
        }
    }
}
