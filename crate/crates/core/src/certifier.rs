//! Grid-based checking of the copula axioms.
//!
//! On an equispaced `(grid_n+1)^2` lattice the certifier checks
//!
//! 1. margins: `C(u,0) = C(0,v) = 0`, `C(u,1) = u`, `C(1,v) = v`;
//! 2. range: `0 <= C <= 1`;
//! 3. the rectangle inequality on every adjacent lattice cell;
//! 4. if a density is supplied, `c >= 0` at every lattice point.
//!
//! This is a falsifier, not a prover: a reported violation is a genuine
//! counterexample (up to `tol`), while a pass only says none was found on the
//! lattice. For this family the density is a polynomial whose exact extremes
//! are known (see [`crate::region::density_admissible_interval`]), which is
//! the analytic complement to a passing certificate.

use rayon::prelude::*;
use serde::Serialize;

use crate::copula::{self, CopulaParams};
use crate::error::{CopulaError, Result};

pub const DEFAULT_GRID: usize = 200;
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ViolationKind {
    Margin,
    Range01,
    Rectangle,
    DensitySign,
}

impl ViolationKind {
    pub const ALL: [ViolationKind; 4] = [
        ViolationKind::Margin,
        ViolationKind::Range01,
        ViolationKind::Rectangle,
        ViolationKind::DensitySign,
    ];

    fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Location {
    Point {
        u: f64,
        v: f64,
    },
    /// Lower-left and upper-right corners of a lattice cell.
    Cell {
        u1: f64,
        v1: f64,
        u2: f64,
        v2: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub location: Location,
    /// Amount by which the axiom fails; always greater than `tol`.
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport {
    pub passed: bool,
    /// Worst violation of each kind that occurred, largest magnitude first.
    pub violations: Vec<Violation>,
    /// Number of violating lattice points or cells per kind, in
    /// [`ViolationKind::ALL`] order.
    pub counts: [usize; 4],
    pub grid_n: usize,
    pub tol: f64,
}

impl CertificateReport {
    pub fn worst(&self, kind: ViolationKind) -> Option<&Violation> {
        self.violations.iter().find(|v| v.kind == kind)
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.counts[kind.index()]
    }
}

pub type Surface<'a> = &'a (dyn Fn(f64, f64) -> f64 + Sync);

struct Tally {
    tol: f64,
    worst: [Option<Violation>; 4],
    counts: [usize; 4],
}

impl Tally {
    fn new(tol: f64) -> Self {
        Self {
            tol,
            worst: [None; 4],
            counts: [0; 4],
        }
    }

    fn record(&mut self, kind: ViolationKind, location: Location, magnitude: f64) {
        // NaN counts as a violation of unbounded size
        let magnitude = if magnitude.is_nan() {
            f64::INFINITY
        } else {
            magnitude
        };
        if magnitude <= self.tol {
            return;
        }
        let k = kind.index();
        self.counts[k] += 1;
        if self.worst[k].is_none_or(|w| magnitude > w.magnitude) {
            self.worst[k] = Some(Violation {
                kind,
                location,
                magnitude,
            });
        }
    }
}

/// Checks `cdf` (and `pdf`, if given) against the copula axioms.
pub fn certify(
    cdf: Surface<'_>,
    pdf: Option<Surface<'_>>,
    grid_n: usize,
    tol: f64,
) -> Result<CertificateReport> {
    if grid_n < 3 {
        return Err(CopulaError::Argument(format!(
            "grid_n must be at least 3, got {grid_n}"
        )));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CopulaError::Argument(format!(
            "tol must be positive and finite, got {tol}"
        )));
    }

    let n = grid_n;
    let t: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
    let surface: Vec<Vec<f64>> = t
        .par_iter()
        .map(|&u| t.iter().map(|&v| cdf(u, v)).collect())
        .collect();
    let density: Option<Vec<Vec<f64>>> = pdf.map(|pdf| {
        t.par_iter()
            .map(|&u| t.iter().map(|&v| pdf(u, v)).collect())
            .collect()
    });

    let mut tally = Tally::new(tol);
    let point = |i: usize, j: usize| Location::Point { u: t[i], v: t[j] };

    for i in 0..=n {
        tally.record(ViolationKind::Margin, point(i, 0), surface[i][0].abs());
        tally.record(ViolationKind::Margin, point(0, i), surface[0][i].abs());
        tally.record(
            ViolationKind::Margin,
            point(i, n),
            (surface[i][n] - t[i]).abs(),
        );
        tally.record(
            ViolationKind::Margin,
            point(n, i),
            (surface[n][i] - t[i]).abs(),
        );
    }

    for i in 0..=n {
        for j in 0..=n {
            let c = surface[i][j];
            tally.record(ViolationKind::Range01, point(i, j), (-c).max(c - 1.0));
            if let Some(d) = &density {
                tally.record(ViolationKind::DensitySign, point(i, j), -d[i][j]);
            }
        }
    }

    for i in 0..n {
        for j in 0..n {
            let mass =
                surface[i + 1][j + 1] - surface[i + 1][j] - surface[i][j + 1] + surface[i][j];
            let cell = Location::Cell {
                u1: t[i],
                v1: t[j],
                u2: t[i + 1],
                v2: t[j + 1],
            };
            tally.record(ViolationKind::Rectangle, cell, -mass);
        }
    }

    let mut violations: Vec<Violation> = tally.worst.iter().flatten().copied().collect();
    violations.sort_by(|a, b| {
        b.magnitude
            .total_cmp(&a.magnitude)
            .then(a.kind.cmp(&b.kind))
    });
    Ok(CertificateReport {
        passed: violations.is_empty(),
        violations,
        counts: tally.counts,
        grid_n,
        tol,
    })
}

/// [`certify`] applied to the family's CDF and density.
pub fn certify_params(params: &CopulaParams, grid_n: usize, tol: f64) -> Result<CertificateReport> {
    let cdf = |u, v| copula::cdf_unchecked(params, u, v);
    let pdf = |u, v| copula::pdf_unchecked(params, u, v);
    certify(&cdf, Some(&pdf), grid_n, tol)
}
