//! CSV and minimal SVG writers.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use crate::error::CliError;

/// A CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl Cell {
    /// Floats use 12 significant digits.
    pub fn render(&self) -> String {
        match self {
            // Adding zero folds -0 into +0.
            Cell::Float(v) => format!("{:.11e}", v + 0.0),
            Cell::Int(v) => v.to_string(),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Cell::Float(v) => Some(v),
            Cell::Int(v) => Some(v as f64),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }
}

/// Writes to `path`, or stdout when `None`.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

const W: f64 = 640.0;
const H: f64 = 420.0;
const PAD: f64 = 50.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-300 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

/// Line plot of several series over a shared x axis.
pub fn line_plot(x: &[f64], series: &[(String, Vec<f64>)]) -> String {
    let (x0, x1) = bounds(x.iter().copied());
    let (y0, y1) = bounds(series.iter().flat_map(|(_, v)| v.iter().copied()));
    let sx = |v: f64| PAD + (v - x0) / (x1 - x0) * (W - 2.0 * PAD);
    let sy = |v: f64| H - PAD - (v - y0) / (y1 - y0) * (H - 2.0 * PAD);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="11">"#);
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path d="M{PAD},{PAD} V{} H{}" fill="none" stroke="black"/>"#,
        H - PAD,
        W - PAD
    );
    let _ = writeln!(s, r#"<text x="{PAD}" y="{}">{x0:.3}</text>"#, H - PAD + 15.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{x1:.3}</text>"#, W - PAD, H - PAD + 15.0);
    let _ = writeln!(s, r#"<text x="4" y="{}">{y0:.4}</text>"#, H - PAD);
    let _ = writeln!(s, r#"<text x="4" y="{}">{y1:.4}</text>"#, PAD);
    for (k, (name, ys)) in series.iter().enumerate() {
        let colour = PALETTE[k % PALETTE.len()];
        let mut d = String::new();
        for (i, (&xv, &yv)) in x.iter().zip(ys).enumerate() {
            let _ = write!(d, "{}{:.2},{:.2} ", if i == 0 { "M" } else { "L" }, sx(xv), sy(yv));
        }
        let _ = writeln!(s, r#"<path d="{}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#, d.trim_end());
        let _ = writeln!(s, r#"<text x="{}" y="{}" fill="{colour}">{name}</text>"#, W - PAD + 4.0, PAD + 14.0 * k as f64);
    }
    s.push_str("</svg>\n");
    s
}

/// Heat map of `z[i][j]` over `x[j]`, `y[i]`, blue negative, red positive.
pub fn heat_map(x: &[f64], y: &[f64], z: &[Vec<f64>]) -> String {
    let zmax = z.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
    let cw = (W - 2.0 * PAD) / x.len() as f64;
    let ch = (H - 2.0 * PAD) / y.len() as f64;
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}">"#);
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    for (i, row) in z.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let t = (v / zmax).clamp(-1.0, 1.0);
            let fade = (255.0 * (1.0 - t.abs())).round() as u8;
            let (r, g, b) = if t >= 0.0 { (255, fade, fade) } else { (fade, fade, 255) };
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="rgb({r},{g},{b})"/>"#,
                PAD + j as f64 * cw,
                H - PAD - (i + 1) as f64 * ch,
                cw + 0.05,
                ch + 0.05
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_cells_have_twelve_digits() {
        assert_eq!(Cell::Float(0.1).render(), "1.00000000000e-1");
        assert_eq!(Cell::Float(-2.0 / 3.0).render(), "-6.66666666667e-1");
    }

    #[test]
    fn csv_uses_lf() {
        let t = Table {
            header: vec!["a".into(), "b".into()],
            rows: vec![vec![Cell::Int(1), Cell::Bool(true)]],
        };
        assert_eq!(t.to_csv(), "a,b\n1,true\n");
    }

    #[test]
    fn svg_is_closed() {
        let s = line_plot(&[0.0, 1.0], &[("y".into(), vec![1.0, 2.0])]);
        assert!(s.starts_with("<svg") && s.ends_with("</svg>\n"));
        let h = heat_map(&[0.0, 1.0], &[0.0], &[vec![-1.0, 1.0]]);
        assert!(h.contains("rgb(0,0,255)") && h.contains("rgb(255,0,0)"));
    }
}
