//! End-to-end runs of the `phasecorr` binary.

use std::process::{Command, Output};

fn phasecorr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phasecorr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "status {:?}: {}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows of a CSV as floats, with the header.
fn csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

#[test]
fn odd_cat_origin_is_minus_two_over_pi() {
    let out = stdout(&phasecorr(&["wigner", "--states", "odd_cat", "--gamma", "1", "--grid", "0:0:1"]));
    let (header, rows) = csv(&out);
    assert_eq!(header, ["re_alpha", "im_alpha", "w"]);
    let w: f64 = rows[0][2].parse().unwrap();
    assert!((w + 2.0 / std::f64::consts::PI).abs() < 1e-10);
}

#[test]
fn marginal_grid_is_nonnegative() {
    let out = stdout(&phasecorr(&["wigner", "--states", "marginal", "--gamma", "2", "--grid", "-4:4:201"]));
    let (_, rows) = csv(&out);
    assert_eq!(rows.len(), 201 * 201);
    let min = rows
        .iter()
        .map(|r| r[2].parse::<f64>().unwrap())
        .fold(f64::INFINITY, f64::min);
    assert!(min >= -1e-12, "min {min}");
}

#[test]
fn two_mode_slices_have_four_coordinates() {
    let out = stdout(&phasecorr(&[
        "wigner", "--states", "pm", "--gamma", "1", "--grid", "-1:1:3", "--slice", "im",
    ]));
    let (header, rows) = csv(&out);
    assert_eq!(header.len(), 5);
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r[0] == r[2] && r[0].starts_with('0')));
}

#[test]
fn usage_errors_exit_two() {
    let cases: [&[&str]; 6] = [
        &["wigner", "--states", "pp", "--gamma", "1", "--grid", "1:0:3"],
        &["wigner", "--states", "pp", "--gamma", "1", "--grid", "-1:1:0"],
        &["sweep", "--gamma", "0.5:1:0.5", "--quantities", ""],
        &["sweep", "--gamma", "0.5:1:0.5", "--quantities", "bogus"],
        &["sweep", "--gamma", "0:1:0.5", "--quantities", "neg"],
        &["sweep", "--gamma", "0.5:1:0.5", "--states", "even_cat"],
    ];
    for args in cases {
        assert_eq!(phasecorr(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn small_amplitude_discord() {
    let out = stdout(&phasecorr(&["sweep", "--gamma", "0.01:0.01:1", "--quantities", "discord"]));
    let (header, rows) = csv(&out);
    let pp: f64 = rows[0][column(&header, "discord_pp")].parse().unwrap();
    let pm: f64 = rows[0][column(&header, "discord_pm")].parse().unwrap();
    assert!(pm < 1e-6, "pm {pm}");
    // The even-even state keeps a discord of order γ².
    assert!((pp - 9.99879240972e-5).abs() < 1e-12, "pp {pp}");
}

#[test]
fn report_lists_ranks_and_close_negativities() {
    let one = stdout(&phasecorr(&["report", "--gamma", "1"]));
    let ranks: Vec<&str> = one
        .lines()
        .filter(|l| l.starts_with("rho_") || l.starts_with("sigma_"))
        .map(|l| l.split_whitespace().last().unwrap())
        .collect();
    assert_eq!(ranks, ["3", "3", "2", "2", "2", "2"]);
    let far = stdout(&phasecorr(&["report", "--gamma", "2.5"]));
    assert!(far.contains("(< 0.02)"));
}

#[test]
fn report_flags_fock_limit() {
    let out = stdout(&phasecorr(&["report", "--gamma", "0"]));
    assert!(out.contains("Fock-limit"));
    assert!(!out.contains(" neg "));
}

#[test]
fn strict_reports_nonconvergence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("tight.cfg");
    std::fs::write(&cfg, "nodes = 16\nmax_nodes = 16\nrel_tol = 1e-14\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let lax = phasecorr(&["--config", cfg, "sweep", "--gamma", "1:1:1"]);
    assert!(stdout(&lax).contains("false"));
    let strict = phasecorr(&["--strict", "--config", cfg, "sweep", "--gamma", "1:1:1"]);
    assert_eq!(strict.status.code(), Some(3));
}

#[test]
fn sweep_writes_svg_and_file() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("s.csv");
    let svg_path = dir.path().join("s.svg");
    let out = phasecorr(&[
        "--out",
        csv_path.to_str().unwrap(),
        "sweep",
        "--gamma",
        "0.5:1.5:0.5",
        "--quantities",
        "q_mandel,lqu",
        "--svg",
        svg_path.to_str().unwrap(),
    ]);
    assert!(stdout(&out).is_empty());
    let (header, rows) = csv(&std::fs::read_to_string(&csv_path).unwrap());
    assert_eq!(header.len(), 6);
    assert_eq!(rows.len(), 3);
    assert!(std::fs::read_to_string(&svg_path).unwrap().starts_with("<svg"));
}
