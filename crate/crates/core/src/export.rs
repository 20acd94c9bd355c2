//! CSV output shared by the command-line tool.
//!
//! All files use `,` as separator, LF line endings and a mandatory header
//! row. Floating-point fields are written with 17 significant digits
//! ([`fmt_g17`]) so they round-trip exactly.

use std::io::Write;

use serde::Serialize;

use crate::dependence::{rho_closed, tau_closed, PairSample};
use crate::error::{CopulaError, Result};
use crate::region::{in_omega, RegionLabel};

/// Formats `x` like C's `%.17g`: 17 significant digits, trailing zeros
/// removed, scientific notation outside `1e-5 <= |x| < 1e17`.
pub fn fmt_g17(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    if x == 0.0 {
        return format!("{sign}0");
    }
    if (-5..17).contains(&exp) {
        let body = if exp >= 0 {
            let split = exp as usize + 1;
            format!("{}.{}", &digits[..split], &digits[split..])
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        };
        format!("{sign}{}", trim_fraction(&body))
    } else {
        let body = format!("{}.{}", &digits[..1], &digits[1..]);
        format!("{sign}{}e{exp}", trim_fraction(&body))
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn io_err(e: impl std::fmt::Display) -> CopulaError {
    CopulaError::Argument(format!("write failed: {e}"))
}

/// Writes `u,v` rows.
pub fn write_pairs_csv<W: Write>(out: W, sample: &PairSample) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["u", "v"]).map_err(io_err)?;
    for p in sample.points() {
        w.write_record([fmt_g17(p.u()), fmt_g17(p.v())])
            .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// One row of a parameter scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub a: f64,
    pub b: f64,
    pub in_omega: RegionLabel,
    pub rho: f64,
    pub tau: f64,
}

fn linspace(lo: f64, hi: f64, steps: usize) -> impl Iterator<Item = f64> {
    (0..steps).map(move |i| {
        if steps == 1 {
            lo
        } else if i == steps - 1 {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (steps - 1) as f64
        }
    })
}

/// Region label and closed-form rho/tau on a `steps x steps` grid, `a`
/// varying fastest within each `b`.
pub fn scan(a_range: (f64, f64), b_range: (f64, f64), steps: usize) -> Result<Vec<ScanRow>> {
    let (a_min, a_max) = a_range;
    let (b_min, b_max) = b_range;
    if steps == 0 {
        return Err(CopulaError::Argument("steps must be at least 1".into()));
    }
    for (name, x) in [
        ("a-min", a_min),
        ("a-max", a_max),
        ("b-min", b_min),
        ("b-max", b_max),
    ] {
        if !x.is_finite() {
            return Err(CopulaError::Argument(format!(
                "{name} must be finite, got {x}"
            )));
        }
    }
    if a_min > a_max || b_min > b_max {
        return Err(CopulaError::Argument(format!(
            "empty scan range: a in [{a_min}, {a_max}], b in [{b_min}, {b_max}]"
        )));
    }
    let mut rows = Vec::with_capacity(steps * steps);
    for b in linspace(b_min, b_max, steps) {
        for a in linspace(a_min, a_max, steps) {
            rows.push(ScanRow {
                a,
                b,
                in_omega: in_omega(a, b),
                rho: rho_closed(a, b),
                tau: tau_closed(a, b),
            });
        }
    }
    Ok(rows)
}

/// Writes `a,b,in_omega,rho,tau` rows.
pub fn write_scan_csv<W: Write>(out: W, rows: &[ScanRow]) -> Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["a", "b", "in_omega", "rho", "tau"])
        .map_err(io_err)?;
    for r in rows {
        w.write_record([
            fmt_g17(r.a),
            fmt_g17(r.b),
            r.in_omega.as_str().to_string(),
            fmt_g17(r.rho),
            fmt_g17(r.tau),
        ])
        .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}
