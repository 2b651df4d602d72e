//! Command-line arguments and the `key = value` configuration file.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use phasecorr::{LogBase, StateId};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "phasecorr", version, about = "Wigner negativity and quantum correlations of two-mode cat states")]
pub struct Cli {
    /// Configuration file of `key = value` lines; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads for the quadratures (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Exit with status 3 when a quadrature does not converge.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate quantities over a range of cat amplitudes.
    Sweep(SweepArgs),
    /// Dump the Wigner function of one state on a grid.
    Wigner(WignerArgs),
    /// Print every measure for the six two-mode states at one amplitude.
    Report(ReportArgs),
    /// Minimum negativity over local cat-qubit unitaries.
    Minneg(MinnegArgs),
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated state names (pp, pm, sq_pp, ...).
    #[arg(long)]
    pub states: Option<String>,
    /// Comma-separated quantities (neg, ng, q_mandel, d1, d2, discord, lqu, dg, i, j, rank).
    #[arg(long)]
    pub quantities: Option<String>,
    /// Amplitude range `start:stop:step`.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// Also write a line plot to this SVG file.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WignerArgs {
    #[arg(long)]
    pub states: String,
    #[arg(long)]
    pub gamma: f64,
    /// Axis range `lo:hi:n` in amplitude units, used for both axes.
    #[arg(long, default_value = "-4:4:81", allow_hyphen_values = true)]
    pub grid: String,
    /// For two-mode states: vary the real parts (`re`) or the imaginary
    /// parts (`im`) of both amplitudes, the other parts held at zero.
    #[arg(long, default_value = "re")]
    pub slice: String,
    /// Also write a heat map to this SVG file.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub gamma: f64,
}

#[derive(Debug, Args)]
pub struct MinnegArgs {
    #[arg(long, default_value = "sc_pp,sc_pm")]
    pub states: String,
    #[arg(long)]
    pub gamma: f64,
}

/// Numerical settings shared by the subcommands.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub nodes: usize,
    pub margin: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_nodes: usize,
    pub log_base: LogBase,
    pub threads: Option<usize>,
    pub states: Option<String>,
    pub quantities: Option<String>,
    pub gamma: Option<String>,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            nodes: phasecorr::phase_space::DEFAULT_NODES,
            margin: phasecorr::phase_space::DEFAULT_MARGIN,
            rel_tol: 1e-3,
            abs_tol: 1e-9,
            max_nodes: phasecorr::phase_space::MAX_NODES,
            log_base: LogBase::Two,
            threads: None,
            states: None,
            quantities: None,
            gamma: None,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("config: bad value '{value}' for '{key}'")))
}

impl Settings {
    /// Reads `key = value` lines; `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self, CliError> {
        let mut s = Self::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", no + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "nodes" => s.nodes = parse(key, value)?,
                "margin" => s.margin = parse(key, value)?,
                "rel_tol" => s.rel_tol = parse(key, value)?,
                "abs_tol" => s.abs_tol = parse(key, value)?,
                "max_nodes" => s.max_nodes = parse(key, value)?,
                "log_base" => {
                    s.log_base = value
                        .parse()
                        .map_err(|_| CliError::Usage(format!("config: bad log base '{value}'")))?
                }
                "threads" => s.threads = Some(parse(key, value)?),
                "states" => s.states = Some(value.to_string()),
                "quantities" => s.quantities = Some(value.to_string()),
                "gamma" => s.gamma = Some(value.to_string()),
                other => return Err(CliError::Usage(format!("config: unknown key '{other}'"))),
            }
        }
        if s.nodes < 8 || !(s.margin > 0.0) || !(s.rel_tol > 0.0) || !(s.abs_tol >= 0.0) {
            return Err(CliError::Usage("config: nodes ≥ 8, margin > 0 and tolerances > 0 required".into()));
        }
        Ok(s)
    }

    pub fn load(cli: &Cli) -> Result<Self, CliError> {
        let mut s = match &cli.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
                Self::from_text(&text)?
            }
            None => Self::default(),
        };
        if cli.threads.is_some() {
            s.threads = cli.threads;
        }
        Ok(s)
    }
}

/// `start:stop:step`, inclusive of `stop` up to rounding.
pub fn parse_range(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("range '{spec}' must be start:stop:step with start ≤ stop and step > 0"));
    let parts: Vec<f64> = spec
        .split(':')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let [start, stop, step] = parts[..] else {
        return Err(bad());
    };
    if !(start.is_finite() && stop.is_finite() && step > 0.0 && start <= stop) {
        return Err(bad());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    // Round to 12 significant digits so 0.1 + 2·0.1 prints as 0.3.
    Ok((0..count)
        .map(|k| {
            let v = start + k as f64 * step;
            format!("{v:.11e}").parse().unwrap_or(v)
        })
        .collect())
}

/// `lo:hi:n` with `n ≥ 1` points.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("grid '{spec}' must be lo:hi:n with lo < hi and n ≥ 1"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, n] = parts[..] else {
        return Err(bad());
    };
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    if n == 0 || !(lo.is_finite() && hi.is_finite()) || (n > 1 && lo >= hi) {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect())
}

pub fn parse_states(list: &str) -> Result<Vec<StateId>, CliError> {
    let states: Vec<StateId> = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse().map_err(CliError::Usage))
        .collect::<Result<_, _>>()?;
    if states.is_empty() {
        return Err(CliError::Usage("no states given".into()));
    }
    Ok(states)
}

/// Short column suffix of a state.
pub fn short_name(id: StateId) -> &'static str {
    match id {
        StateId::RhoPP => "pp",
        StateId::RhoPM => "pm",
        StateId::SigmaQPP => "sq_pp",
        StateId::SigmaQPM => "sq_pm",
        StateId::SigmaCPP => "sc_pp",
        StateId::SigmaCPM => "sc_pm",
        other => other.name(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("0.1:2.5:0.1").unwrap().len(), 25);
        assert_eq!(parse_range("0.1:2.5:0.1").unwrap()[2], 0.3);
        assert_eq!(parse_range("0.01:0.01:0.01").unwrap(), vec![0.01]);
        assert!(parse_range("1:0:0.1").is_err());
        assert!(parse_range("0:1:0").is_err());
        assert!(parse_range("0:1").is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("-1:1:3").unwrap(), vec![-1.0, 0.0, 1.0]);
        assert!(parse_grid("-1:1:0").is_err());
        assert!(parse_grid("1:-1:5").is_err());
    }

    #[test]
    fn config_text() {
        let s = Settings::from_text("# quadrature\nnodes = 48\nlog_base = e\n\nstates = pp\n").unwrap();
        assert_eq!(s.nodes, 48);
        assert_eq!(s.log_base, LogBase::E);
        assert_eq!(s.states.as_deref(), Some("pp"));
        assert!(Settings::from_text("nodes 48").is_err());
        assert!(Settings::from_text("colour = red").is_err());
    }
}
