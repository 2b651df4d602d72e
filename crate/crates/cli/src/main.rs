//! `phasecorr` command-line front end.

mod config;
mod error;
mod measures;
mod output;

use std::fmt::Write as _;

use clap::Parser;
use log::info;
use phasecorr::min_negativity::MinNegativityOptions;
use phasecorr::phase_space::PhasePoint;
use phasecorr::scalar::c;
use phasecorr::{build, min_negativity, wigner, StateId};
use rayon::prelude::*;

use config::{parse_grid, parse_range, parse_states, short_name, Cli, Command, Settings};
use error::CliError;
use measures::{columns, parse_quantities, Evaluation, Quantity};
use output::{emit, heat_map, line_plot, Cell, Table};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            std::process::exit(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(e) = run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let settings = Settings::load(cli)?;
    if let Some(n) = settings.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Sweep(a) => sweep(cli, &settings, a),
        Command::Wigner(a) => wigner_grid(cli, a),
        Command::Report(a) => report(cli, &settings, a.gamma),
        Command::Minneg(a) => minneg(cli, a),
    }
}

fn sweep(cli: &Cli, settings: &Settings, args: &config::SweepArgs) -> Result<(), CliError> {
    let states = parse_states(args.states.as_deref().or(settings.states.as_deref()).unwrap_or("pp,pm"))?;
    let quantities = parse_quantities(
        args.quantities
            .as_deref()
            .or(settings.quantities.as_deref())
            .unwrap_or("neg"),
    )?;
    let gammas = parse_range(
        args.gamma
            .as_deref()
            .or(settings.gamma.as_deref())
            .ok_or_else(|| CliError::Usage("--gamma start:stop:step is required".into()))?,
    )?;
    if let Some(id) = states.iter().find(|id| id.modes() != 2) {
        return Err(CliError::Usage(format!("{id} is a single-mode state")));
    }
    if gammas[0] == 0.0 {
        if let Some(q) = quantities.iter().find(|q| !q.qubit_level()) {
            return Err(CliError::Usage(format!("{} is undefined at γ = 0", q.name())));
        }
    }

    let mut header = vec!["gamma".to_string(), "Gamma".to_string()];
    for &q in &quantities {
        for &id in &states {
            header.extend(columns(q, short_name(id)));
        }
    }
    // Rows are independent; each is computed sequentially inside so the
    // summation order does not depend on scheduling.
    let rows: Vec<Result<(Vec<Cell>, bool), CliError>> = gammas
        .par_iter()
        .map(|&g| {
            let mut row = vec![Cell::Float(g), Cell::Float((-2.0 * g * g).exp())];
            let mut converged = true;
            let mut evals: Vec<Evaluation> = states
                .iter()
                .map(|&id| Evaluation::new(id, g, settings))
                .collect::<Result<_, _>>()?;
            for &q in &quantities {
                for ev in evals.iter_mut() {
                    let cells = ev.cells(q)?;
                    if q == Quantity::Neg && cells[1] == Cell::Bool(false) {
                        converged = false;
                    }
                    row.extend(cells);
                }
            }
            info!("γ = {g} done");
            Ok((row, converged))
        })
        .collect();
    let mut table = Table {
        header,
        rows: Vec::new(),
    };
    let mut failed = Vec::new();
    for (r, &g) in rows.into_iter().zip(&gammas) {
        let (row, ok) = r?;
        if !ok {
            failed.push(g);
        }
        table.rows.push(row);
    }
    emit(cli.out.as_deref(), &table.to_csv())?;
    if let Some(path) = &args.svg {
        let series: Vec<(String, Vec<f64>)> = table
            .header
            .iter()
            .enumerate()
            .skip(2)
            .filter(|(_, h)| !h.ends_with("_converged"))
            .map(|(k, h)| (h.clone(), table.rows.iter().filter_map(|r| r[k].as_f64()).collect()))
            .collect();
        std::fs::write(path, line_plot(&gammas, &series))?;
    }
    if cli.strict && !failed.is_empty() {
        return Err(CliError::NotConverged(format!("negativity at γ = {failed:?}")));
    }
    Ok(())
}

fn wigner_grid(cli: &Cli, args: &config::WignerArgs) -> Result<(), CliError> {
    let states = parse_states(&args.states)?;
    let [id] = states[..] else {
        return Err(CliError::Usage("wigner takes exactly one state".into()));
    };
    if !(args.gamma >= 0.0) || !args.gamma.is_finite() {
        return Err(CliError::Usage(format!("γ = {} must be finite and nonnegative", args.gamma)));
    }
    let axis = parse_grid(&args.grid)?;
    let rho = build(id, c(args.gamma, 0.0))?;
    let imag = match args.slice.as_str() {
        "re" => false,
        "im" => true,
        other => return Err(CliError::Usage(format!("slice '{other}' must be re or im"))),
    };
    let values: Vec<Vec<f64>> = axis
        .par_iter()
        .map(|&v| {
            axis.iter()
                .map(|&u| {
                    let point = if id.modes() == 1 {
                        PhasePoint::single(c(u, v))
                    } else if imag {
                        PhasePoint::pair(c(0.0, u), c(0.0, v))
                    } else {
                        PhasePoint::pair(c(u, 0.0), c(v, 0.0))
                    };
                    wigner(&rho, &point)
                })
                .collect::<Result<Vec<f64>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let header = if id.modes() == 1 {
        vec!["re_alpha".into(), "im_alpha".into(), "w".into()]
    } else {
        ["re_alpha1", "im_alpha1", "re_alpha2", "im_alpha2", "w"]
            .map(String::from)
            .to_vec()
    };
    let mut table = Table {
        header,
        rows: Vec::with_capacity(axis.len() * axis.len()),
    };
    for (i, &v) in axis.iter().enumerate() {
        for (j, &u) in axis.iter().enumerate() {
            let w = Cell::Float(values[i][j]);
            let row = match (id.modes(), imag) {
                (1, _) => vec![Cell::Float(u), Cell::Float(v), w],
                (_, false) => vec![Cell::Float(u), Cell::Float(0.0), Cell::Float(v), Cell::Float(0.0), w],
                (_, true) => vec![Cell::Float(0.0), Cell::Float(u), Cell::Float(0.0), Cell::Float(v), w],
            };
            table.rows.push(row);
        }
    }
    emit(cli.out.as_deref(), &table.to_csv())?;
    if let Some(path) = &args.svg {
        std::fs::write(path, heat_map(&axis, &axis, &values))?;
    }
    Ok(())
}

fn report(cli: &Cli, settings: &Settings, gamma: f64) -> Result<(), CliError> {
    let fock = gamma == 0.0;
    let shown: Vec<Quantity> = Quantity::ALL
        .into_iter()
        .filter(|q| !fock || q.qubit_level())
        .collect();
    let mut s = String::new();
    let _ = writeln!(s, "γ = {gamma}, Γ = {:.6e}", (-2.0 * gamma * gamma).exp());
    if fock {
        let _ = writeln!(s, "γ = 0: qubit measures use the Fock-limit basis {{|0⟩, |1⟩}}; phase-space quantities omitted");
    }
    let _ = write!(s, "{:<11}", "state");
    for q in &shown {
        let _ = write!(s, " {:>13}", q.name());
    }
    s.push('\n');
    let mut neg = std::collections::HashMap::new();
    let mut unconverged = false;
    for id in StateId::PAIRS {
        let mut ev = Evaluation::new(id, gamma, settings)?;
        let _ = write!(s, "{:<11}", id.name());
        for &q in &shown {
            let cells = ev.cells(q)?;
            let mut text = match &cells[0] {
                Cell::Float(v) => format!("{:.6e}", v + 0.0),
                other => other.render(),
            };
            if q == Quantity::Neg {
                neg.insert(id, cells[0].as_f64().unwrap_or(f64::NAN));
                if cells[1] == Cell::Bool(false) {
                    text.push('*');
                    unconverged = true;
                }
            }
            let _ = write!(s, " {text:>13}");
        }
        s.push('\n');
    }
    if let (Some(a), Some(b)) = (neg.get(&StateId::RhoPP), neg.get(&StateId::RhoPM)) {
        let d = (a - b).abs();
        let note = if d < 0.02 { " (< 0.02)" } else { "" };
        let _ = writeln!(s, "|neg_pp − neg_pm| = {d:.6e}{note}");
    }
    if unconverged {
        let _ = writeln!(s, "* quadrature did not converge");
    }
    emit(cli.out.as_deref(), &s)?;
    if cli.strict && unconverged {
        return Err(CliError::NotConverged("report negativity".into()));
    }
    Ok(())
}

fn minneg(cli: &Cli, args: &config::MinnegArgs) -> Result<(), CliError> {
    let states = parse_states(&args.states)?;
    if !(args.gamma > 0.0) || !args.gamma.is_finite() {
        return Err(CliError::Usage(format!("γ = {} must be positive", args.gamma)));
    }
    let g = c(args.gamma, 0.0);
    let mut table = Table {
        header: [
            "state", "gamma", "delta_min", "feasible", "theta_a", "phi_a", "psi_a", "theta_b", "phi_b", "psi_b",
        ]
        .map(String::from)
        .to_vec(),
        rows: Vec::new(),
    };
    for id in states {
        if id.modes() != 2 {
            return Err(CliError::Usage(format!("{id} is a single-mode state")));
        }
        let r = min_negativity(&build(id, g)?, g, &MinNegativityOptions::default())?;
        let mut row = vec![
            Cell::Text(id.name().into()),
            Cell::Float(args.gamma),
            Cell::Float(r.delta),
            Cell::Bool(r.feasible),
        ];
        row.extend(r.params.to_vec().into_iter().map(Cell::Float));
        table.rows.push(row);
    }
    emit(cli.out.as_deref(), &table.to_csv())
}
