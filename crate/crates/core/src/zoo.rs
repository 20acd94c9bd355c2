//! Related FGM-type families and the identities linking them to
//! [`crate::copula`].
//!
//! | Family | CDF | Parameter range |
//! |--------|-----|-----------------|
//! | FGM | `uv[1 + a(1-u)(1-v)]` | `-1 <= a <= 1` |
//! | Huang–Kotz type 1 | `uv[1 + a(1-u^b)(1-v^b)]` | `b > 0`, `-1/b^2 <= a <= 1/b` |
//! | Huang–Kotz type 2 | `uv[1 + a(1-u)^b(1-v)^b]` | `b > 1`, `-1 <= a <= ((b+1)/(b-1))^(b-1)` |
//! | sign-flipped cubic | `uv[1 + a(1-u)(1-v)(1-bu)(1-bv)]` | `0 <= b < 1`, no certified `a`-range |
//! | iterated FGM | `uv[1 + a(1-u)(1-v) + b uv(1-u)(1-v)]` | see [`IFGMParams`] |
//!
//! The published `a`-range `[-1, 1/(1-b)]` of the sign-flipped family is known
//! to be wrong and no corrected range exists, so [`FamilyParams::Ebaid`]
//! is always marked as not certified.

use serde::Serialize;

use crate::copula::{self, CopulaParams};
use crate::error::{CopulaError, Result};

fn param_err(msg: String) -> CopulaError {
    CopulaError::InvalidParams(msg)
}

fn check_fgm(a: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&a) {
        Ok(())
    } else {
        Err(param_err(format!("FGM requires -1 <= a <= 1, got a = {a}")))
    }
}

fn check_hk1(a: f64, b: f64) -> Result<()> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(param_err(format!(
            "Huang-Kotz type 1 requires b > 0, got b = {b}"
        )));
    }
    let (lo, hi) = (-1.0 / (b * b), 1.0 / b);
    if !(lo <= a && a <= hi) {
        return Err(param_err(format!(
            "Huang-Kotz type 1 with b = {b} requires a in [{lo}, {hi}], got a = {a}"
        )));
    }
    Ok(())
}

fn hk2_upper(b: f64) -> f64 {
    ((b + 1.0) / (b - 1.0)).powf(b - 1.0)
}

fn check_hk2(a: f64, b: f64) -> Result<()> {
    if !(b > 1.0 && b.is_finite()) {
        return Err(param_err(format!(
            "Huang-Kotz type 2 requires b > 1, got b = {b}"
        )));
    }
    let hi = hk2_upper(b);
    if !(-1.0 <= a && a <= hi) {
        return Err(param_err(format!(
            "Huang-Kotz type 2 with b = {b} requires a in [-1, {hi}], got a = {a}"
        )));
    }
    Ok(())
}

pub fn fgm_cdf(a: f64, u: f64, v: f64) -> Result<f64> {
    check_fgm(a)?;
    Ok(u * v * (1.0 + a * (1.0 - u) * (1.0 - v)))
}

pub fn hk1_cdf(a: f64, b: f64, u: f64, v: f64) -> Result<f64> {
    check_hk1(a, b)?;
    Ok(u * v * (1.0 + a * (1.0 - u.powf(b)) * (1.0 - v.powf(b))))
}

pub fn hk2_cdf(a: f64, b: f64, u: f64, v: f64) -> Result<f64> {
    check_hk2(a, b)?;
    Ok(u * v * (1.0 + a * (1.0 - u).powf(b) * (1.0 - v).powf(b)))
}

/// The sign-flipped cubic family. No parameter check: the published range
/// is unreliable, see [`FamilyParams::Ebaid`].
pub fn ebaid_cdf(a: f64, b: f64, u: f64, v: f64) -> f64 {
    u * v * (1.0 + a * (1.0 - u) * (1.0 - v) * (1.0 - b * u) * (1.0 - b * v))
}

/// Shape pair of the single iterated FGM copula.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IFGMParams {
    a: f64,
    b: f64,
}

impl IFGMParams {
    /// Upper bound `(3 - a + sqrt(9 - 6a - 3a^2)) / 2` on `b`.
    pub fn b_upper(a: f64) -> f64 {
        // the radicand is 12 - 3(a+1)^2 >= 0 on [-1, 1]; clamp rounding at a = 1
        (3.0 - a + (9.0 - 6.0 * a - 3.0 * a * a).max(0.0).sqrt()) / 2.0
    }

    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&a) {
            return Err(param_err(format!(
                "iterated FGM requires -1 <= a <= 1, got a = {a}"
            )));
        }
        if !b.is_finite() || a + b < -1.0 {
            return Err(param_err(format!(
                "iterated FGM requires a + b >= -1, got a + b = {}",
                a + b
            )));
        }
        let hi = Self::b_upper(a);
        if b > hi {
            return Err(param_err(format!(
                "iterated FGM with a = {a} requires b <= {hi}, got b = {b}"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

pub fn ifgm_cdf(params: &IFGMParams, u: f64, v: f64) -> f64 {
    let (a, b) = (params.a, params.b);
    let w = (1.0 - u) * (1.0 - v);
    u * v * (1.0 + a * w + b * u * v * w)
}

/// One of the related families, with its parameter range checked at
/// construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family")]
pub enum FamilyParams {
    Fgm {
        a: f64,
    },
    Hk1 {
        a: f64,
        b: f64,
    },
    Hk2 {
        a: f64,
        b: f64,
    },
    /// Accepted for any `a` with `0 <= b < 1`; `certified` is always false.
    Ebaid {
        a: f64,
        b: f64,
        certified: bool,
    },
    Ifgm(IFGMParams),
}

impl FamilyParams {
    pub fn fgm(a: f64) -> Result<Self> {
        check_fgm(a)?;
        Ok(Self::Fgm { a })
    }

    pub fn hk1(a: f64, b: f64) -> Result<Self> {
        check_hk1(a, b)?;
        Ok(Self::Hk1 { a, b })
    }

    pub fn hk2(a: f64, b: f64) -> Result<Self> {
        check_hk2(a, b)?;
        Ok(Self::Hk2 { a, b })
    }

    pub fn ebaid(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !(0.0..1.0).contains(&b) {
            return Err(param_err(format!(
                "sign-flipped cubic family requires finite a and 0 <= b < 1, got ({a}, {b})"
            )));
        }
        Ok(Self::Ebaid {
            a,
            b,
            certified: false,
        })
    }

    pub fn ifgm(a: f64, b: f64) -> Result<Self> {
        Ok(Self::Ifgm(IFGMParams::new(a, b)?))
    }

    /// False only for the sign-flipped family, whose admissible range is
    /// unknown; use [`crate::certifier`] on specific points instead.
    pub fn is_certified(&self) -> bool {
        !matches!(self, Self::Ebaid { .. })
    }

    pub fn cdf(&self, u: f64, v: f64) -> f64 {
        match *self {
            Self::Fgm { a } => u * v * (1.0 + a * (1.0 - u) * (1.0 - v)),
            Self::Hk1 { a, b } => u * v * (1.0 + a * (1.0 - u.powf(b)) * (1.0 - v.powf(b))),
            Self::Hk2 { a, b } => u * v * (1.0 + a * (1.0 - u).powf(b) * (1.0 - v).powf(b)),
            Self::Ebaid { a, b, .. } => ebaid_cdf(a, b, u, v),
            Self::Ifgm(p) => ifgm_cdf(&p, u, v),
        }
    }
}

/// Lattice resolution used by [`limit_identity_gap`].
pub const GAP_GRID: usize = 200;

/// `sup |C(u, v; alpha/(1+b)^2, b) - C_IFGM(u, v; 0, alpha)|` over a
/// `(GAP_GRID+1)^2` lattice. Shrinks like `1/|b|`.
pub fn limit_identity_gap(alpha: f64, b: f64) -> f64 {
    let scaled = CopulaParams::Standard {
        a: alpha / ((1.0 + b) * (1.0 + b)),
        b,
    };
    let limit = IFGMParams { a: 0.0, b: alpha };
    let n = GAP_GRID;
    let mut gap: f64 = 0.0;
    for i in 0..=n {
        let u = i as f64 / n as f64;
        for j in 0..=n {
            let v = j as f64 / n as f64;
            let d = copula::cdf_unchecked(&scaled, u, v) - ifgm_cdf(&limit, u, v);
            gap = gap.max(d.abs());
        }
    }
    gap
}
