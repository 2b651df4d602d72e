//! Quantities tabulated by `sweep` and `report`.

use phasecorr::phase_space::QuadratureSpec;
use phasecorr::qubit::{classical_correlation, correlation_rank};
use phasecorr::scalar::c;
use phasecorr::{
    build, fock_limit_qubit, geometric_discord, lqu, mandel_q_mode, mutual_information, negativity_volume,
    non_gaussianity, quantum_discord, qubit_matrix, squeezing_d, ConvergencePolicy, DyadOperator, Mode,
    QubitDensityMatrix, StateId,
};

use crate::config::Settings;
use crate::error::CliError;
use crate::output::Cell;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Neg,
    Ng,
    QMandel,
    D1,
    D2,
    Discord,
    Lqu,
    Dg,
    I,
    J,
    Rank,
}

impl Quantity {
    pub const ALL: [Quantity; 11] = [
        Quantity::Neg,
        Quantity::Ng,
        Quantity::QMandel,
        Quantity::D1,
        Quantity::D2,
        Quantity::Discord,
        Quantity::Lqu,
        Quantity::Dg,
        Quantity::I,
        Quantity::J,
        Quantity::Rank,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::Neg => "neg",
            Quantity::Ng => "ng",
            Quantity::QMandel => "q_mandel",
            Quantity::D1 => "d1",
            Quantity::D2 => "d2",
            Quantity::Discord => "discord",
            Quantity::Lqu => "lqu",
            Quantity::Dg => "dg",
            Quantity::I => "i",
            Quantity::J => "j",
            Quantity::Rank => "rank",
        }
    }

    /// Depends only on the cat-qubit matrix, so it has a `γ = 0` limit.
    pub fn qubit_level(self) -> bool {
        matches!(
            self,
            Quantity::Discord | Quantity::Lqu | Quantity::Dg | Quantity::I | Quantity::J | Quantity::Rank
        )
    }
}

pub fn parse_quantities(list: &str) -> Result<Vec<Quantity>, CliError> {
    let qs: Vec<Quantity> = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            Quantity::ALL
                .iter()
                .copied()
                .find(|q| q.name() == s)
                .ok_or_else(|| CliError::Usage(format!("unknown quantity '{s}'")))
        })
        .collect::<Result<_, _>>()?;
    if qs.is_empty() {
        return Err(CliError::Usage("quantity list is empty".into()));
    }
    Ok(qs)
}

/// One state at one amplitude, with the expensive pieces built on demand.
pub struct Evaluation<'a> {
    pub id: StateId,
    pub gamma: f64,
    settings: &'a Settings,
    rho: Option<DyadOperator>,
    qubit: Option<QubitDensityMatrix>,
    /// The qubit matrix is the `γ → 0` limit rather than a projection.
    pub fock_limit: bool,
}

impl<'a> Evaluation<'a> {
    pub fn new(id: StateId, gamma: f64, settings: &'a Settings) -> Result<Self, CliError> {
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(CliError::Usage(format!("γ = {gamma} must be finite and nonnegative")));
        }
        if id.modes() != 2 {
            return Err(CliError::Usage(format!("{id} is a single-mode state")));
        }
        let fock_limit = gamma == 0.0;
        Ok(Self {
            id,
            gamma,
            settings,
            rho: None,
            qubit: None,
            fock_limit,
        })
    }

    fn rho(&mut self) -> Result<&DyadOperator, CliError> {
        if self.rho.is_none() {
            if self.fock_limit {
                return Err(CliError::Usage(format!(
                    "{} is only available for γ > 0; at γ = 0 use qubit-level quantities",
                    self.id
                )));
            }
            self.rho = Some(build(self.id, c(self.gamma, 0.0))?);
        }
        Ok(self.rho.as_ref().expect("built above"))
    }

    fn qubit(&mut self) -> Result<&QubitDensityMatrix, CliError> {
        if self.qubit.is_none() {
            let q = if self.fock_limit {
                fock_limit_qubit(self.id)?
            } else {
                let g = c(self.gamma, 0.0);
                qubit_matrix(self.rho()?, g)?
            };
            self.qubit = Some(q);
        }
        Ok(self.qubit.as_ref().expect("built above"))
    }

    /// Value cells of `q`: the negativity also yields a convergence flag.
    pub fn cells(&mut self, q: Quantity) -> Result<Vec<Cell>, CliError> {
        let base = self.settings.log_base;
        Ok(match q {
            Quantity::Neg => {
                let (delta, converged) = self.negativity()?;
                vec![Cell::Float(delta), Cell::Bool(converged)]
            }
            Quantity::Ng => vec![Cell::Float(non_gaussianity(self.rho()?)?)],
            Quantity::QMandel => vec![Cell::Float(mandel_q_mode(self.rho()?, Mode::A)?)],
            Quantity::D1 => vec![Cell::Float(squeezing_d(self.rho()?)?.0)],
            Quantity::D2 => vec![Cell::Float(squeezing_d(self.rho()?)?.1)],
            Quantity::Discord => vec![Cell::Float(quantum_discord(self.qubit()?, base))],
            Quantity::Lqu => vec![Cell::Float(lqu(self.qubit()?))],
            Quantity::Dg => vec![Cell::Float(geometric_discord(self.qubit()?))],
            Quantity::I => vec![Cell::Float(mutual_information(self.qubit()?, base))],
            Quantity::J => vec![Cell::Float(classical_correlation(self.qubit()?, base).0)],
            Quantity::Rank => vec![Cell::Int(correlation_rank(self.qubit()?) as i64)],
        })
    }

    pub fn negativity(&mut self) -> Result<(f64, bool), CliError> {
        let s = self.settings.clone();
        let spec = QuadratureSpec::new(self.gamma + s.margin, s.nodes)?;
        let policy = ConvergencePolicy {
            rel_tol: s.rel_tol,
            abs_tol: s.abs_tol,
            max_nodes: s.max_nodes,
        };
        let est = negativity_volume(self.rho()?, &spec, &policy)?;
        Ok((est.delta, est.converged))
    }
}

/// Column names contributed by `q` for the state suffix `s`.
pub fn columns(q: Quantity, s: &str) -> Vec<String> {
    match q {
        Quantity::Neg => vec![format!("neg_{s}"), format!("neg_{s}_converged")],
        other => vec![format!("{}_{s}", other.name())],
    }
}
