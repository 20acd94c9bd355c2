//! `mfgm` command-line tool.
//!
//! Exit codes: 0 success, 1 invalid parameters (or `validate` outside the
//! region), 2 certification failure, 64 usage error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mfgm::certifier::{self, CertificateReport, Location};
use mfgm::copula::{self, CopulaParams, UnitPoint};
use mfgm::dependence::DependenceMeasures;
use mfgm::export::{self, fmt_g17};
use mfgm::region::{self, RegionLabel};
use mfgm::sampler::{self, SamplerConfig};
use mfgm::CopulaError;

const EXIT_INVALID: u8 = 1;
const EXIT_CERT_FAILED: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "mfgm",
    version,
    about = "Two-parameter FGM-type copula toolkit"
)]
struct Cli {
    /// Output format. Tabular commands default to CSV, the others to text.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify (a, b) against the parameter region.
    Validate {
        #[command(flatten)]
        params: ParamArgs,
        /// Also print the exact density-nonnegativity interval for b.
        #[arg(long)]
        exact: bool,
    },
    /// Evaluate the CDF and optionally the density / conditional CDF.
    Eval {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_num)]
        u: f64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_num)]
        v: f64,
        #[arg(long)]
        density: bool,
        #[arg(long)]
        conditional: bool,
    },
    /// Draw pairs by conditional inversion.
    Sample {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spearman's rho and Kendall's tau.
    Dep {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, conflicts_with_all = ["quad", "mc"])]
        closed: bool,
        /// Gauss-Legendre quadrature of the defining integrals.
        #[arg(long, conflicts_with = "mc")]
        quad: bool,
        /// Rank estimates from N sampled pairs.
        #[arg(long, value_name = "N")]
        mc: Option<usize>,
        #[arg(long, requires = "mc", default_value_t = 0)]
        seed: u64,
    },
    /// Region label and closed-form rho/tau over a K x K grid.
    Scan(ScanArgs),
    /// Check the copula axioms on a lattice.
    Certify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = certifier::DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value_t = certifier::DEFAULT_TOL, value_parser = parse_num)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Dependence parameter; decimals or fractions such as -1/4.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_num)]
    a: f64,
    /// Shape parameter; decimals or fractions.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_num)]
    b: f64,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_num)]
    a_min: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_num)]
    a_max: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_num)]
    b_min: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_num)]
    b_max: f64,
    #[arg(long)]
    steps: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `0.25`, `-1e-3` or a simple fraction such as `-1/4`.
fn parse_num(s: &str) -> Result<f64, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("`{s}` is not a number or fraction"))
    };
    let x = match s.split_once('/') {
        Some((num, den)) => {
            let den = parse(den)?;
            if den == 0.0 {
                return Err(format!("`{s}` divides by zero"));
            }
            parse(num)? / den
        }
        None => parse(s)?,
    };
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<CopulaError> for Failure {
    fn from(e: CopulaError) -> Self {
        let code = match e {
            CopulaError::Argument(_) => EXIT_USAGE,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: format!("i/o error: {e}"),
        }
    }
}

fn json_line<T: Serialize>(out: &mut dyn Write, rows: &[T]) -> io::Result<()> {
    serde_json::to_writer(&mut *out, rows)?;
    writeln!(out)
}

fn open_output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

#[derive(Serialize)]
struct ValidateRow {
    a: f64,
    b: f64,
    label: RegionLabel,
    omega_a_min: f64,
    omega_a_max: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_a_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_a_max: Option<f64>,
}

fn validate(p: &ParamArgs, exact: bool, json: bool, out: &mut dyn Write) -> Result<u8, Failure> {
    let label = region::in_omega(p.a, p.b);
    let omega = region::omega_a_interval(p.b).interval;
    let dens = exact.then(|| region::density_admissible_interval(p.b));
    if json {
        json_line(
            out,
            &[ValidateRow {
                a: p.a,
                b: p.b,
                label,
                omega_a_min: omega.a_min,
                omega_a_max: omega.a_max,
                exact_a_min: dens.map(|d| d.a_min),
                exact_a_max: dens.map(|d| d.a_max),
            }],
        )?;
    } else {
        writeln!(
            out,
            "{label} [{}, {}]",
            fmt_g17(omega.a_min),
            fmt_g17(omega.a_max)
        )?;
        if let Some(d) = dens {
            writeln!(out, "exact [{}, {}]", fmt_g17(d.a_min), fmt_g17(d.a_max))?;
        }
    }
    Ok(if label == RegionLabel::Outside {
        EXIT_INVALID
    } else {
        0
    })
}

#[derive(Serialize)]
struct EvalRow {
    u: f64,
    v: f64,
    cdf: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pdf: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conditional_cdf: Option<f64>,
}

fn eval(
    params: &CopulaParams,
    point: UnitPoint,
    density: bool,
    conditional: bool,
    json: bool,
    out: &mut dyn Write,
) -> Result<u8, Failure> {
    let row = EvalRow {
        u: point.u(),
        v: point.v(),
        cdf: copula::cdf(params, point),
        pdf: density.then(|| copula::pdf(params, point)),
        conditional_cdf: if conditional {
            Some(copula::conditional_cdf(params, point.u(), point.v())?)
        } else {
            None
        },
    };
    if json {
        json_line(out, &[row])?;
    } else {
        let mut line = format!("cdf={}", fmt_g17(row.cdf));
        if let Some(pdf) = row.pdf {
            line += &format!(" pdf={}", fmt_g17(pdf));
        }
        if let Some(cc) = row.conditional_cdf {
            line += &format!(" conditional_cdf={}", fmt_g17(cc));
        }
        writeln!(out, "{line}")?;
    }
    Ok(0)
}

fn print_measures(m: DependenceMeasures, json: bool, out: &mut dyn Write) -> io::Result<()> {
    if json {
        json_line(out, &[m])
    } else {
        writeln!(out, "rho={} tau={}", fmt_g17(m.rho), fmt_g17(m.tau))
    }
}

fn describe(loc: &Location) -> String {
    match *loc {
        Location::Point { u, v } => format!("at (u,v)=({},{})", fmt_g17(u), fmt_g17(v)),
        Location::Cell { u1, v1, u2, v2 } => format!(
            "in cell [{},{}]x[{},{}]",
            fmt_g17(u1),
            fmt_g17(u2),
            fmt_g17(v1),
            fmt_g17(v2)
        ),
    }
}

fn print_report(r: &CertificateReport, json: bool, out: &mut dyn Write) -> io::Result<()> {
    if json {
        return json_line(out, std::slice::from_ref(r));
    }
    let status = if r.passed { "passed" } else { "failed" };
    writeln!(out, "{status} grid={} tol={}", r.grid_n, fmt_g17(r.tol))?;
    for v in &r.violations {
        writeln!(
            out,
            "{:?} magnitude={} {} count={}",
            v.kind,
            fmt_g17(v.magnitude),
            describe(&v.location),
            r.count(v.kind)
        )?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let json = cli.format == Some(Format::Json);
    match cli.command {
        Command::Validate { params, exact } => {
            let mut out = open_output(&None)?;
            let code = validate(&params, exact, json, &mut out)?;
            out.flush()?;
            Ok(code)
        }
        Command::Eval {
            params,
            u,
            v,
            density,
            conditional,
        } => {
            let p = CopulaParams::new(params.a, params.b)?;
            let point = UnitPoint::new(u, v)?;
            let mut out = open_output(&None)?;
            let code = eval(&p, point, density, conditional, json, &mut out)?;
            out.flush()?;
            Ok(code)
        }
        Command::Sample {
            params,
            n,
            seed,
            out,
        } => {
            let cfg = SamplerConfig::new(CopulaParams::new(params.a, params.b)?, seed, n)?;
            let sample = sampler::sample_pairs_parallel(&cfg)?;
            let mut w = open_output(&out)?;
            if json {
                json_line(&mut w, sample.points())?;
            } else {
                export::write_pairs_csv(&mut w, &sample)?;
            }
            w.flush()?;
            Ok(0)
        }
        Command::Dep {
            params,
            closed: _,
            quad,
            mc,
            seed,
        } => {
            let p = CopulaParams::new(params.a, params.b)?;
            let m = if let Some(n) = mc {
                let cfg = SamplerConfig::new(p, seed, n)?;
                DependenceMeasures::from_sample(&sampler::sample_pairs_parallel(&cfg)?)?
            } else if quad {
                DependenceMeasures::quadrature(&p)
            } else {
                DependenceMeasures::closed(params.a, params.b)
            };
            let mut out = open_output(&None)?;
            print_measures(m, json, &mut out)?;
            out.flush()?;
            Ok(0)
        }
        Command::Scan(s) => {
            let rows = export::scan((s.a_min, s.a_max), (s.b_min, s.b_max), s.steps)?;
            let mut w = open_output(&s.out)?;
            if json {
                json_line(&mut w, &rows)?;
            } else {
                export::write_scan_csv(&mut w, &rows)?;
            }
            w.flush()?;
            Ok(0)
        }
        Command::Certify { params, grid, tol } => {
            let p = CopulaParams::new(params.a, params.b)?;
            let report = certifier::certify_params(&p, grid, tol)?;
            let mut out = open_output(&None)?;
            print_report(&report, json, &mut out)?;
            out.flush()?;
            Ok(if report.passed { 0 } else { EXIT_CERT_FAILED })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
