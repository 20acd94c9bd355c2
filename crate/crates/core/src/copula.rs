//! Evaluation of the two-parameter copula
//! `C(u, v; a, b) = uv {1 + a(1-u)(1-v)(1+bu)(1+bv)}`.
//!
//! Writing `g(u) = u(1-u)(1+bu)`, the copula is `uv + a g(u) g(v)` and
//! `g'(u) = -f(u, b)` with `f(u, b) = 3bu^2 + 2u(1-b) - 1`. Density and
//! conditional CDF follow directly:
//!
//! ```text
//! c(u, v)   = 1 + a f(u,b) f(v,b)
//! F(v | u)  = dC/du = v - a f(u,b) g(v,b)
//! ```
//!
//! The `b -> +-inf` limit with `a = alpha / (1+b)^2` is carried by
//! [`CopulaParams::Limit`] and evaluates to the iterated FGM copula
//! `uv [1 + alpha uv(1-u)(1-v)]`.

use serde::Serialize;

use crate::error::{CopulaError, Result};
use crate::region::{self, RegionLabel};
use crate::roots::{newton_bisect, RootConfig};

/// Shape parameters of the copula.
///
/// Construction checks finiteness only. Use [`CopulaParams::new_in_omega`]
/// for the validated variant or the [`region`] queries for explicit checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum CopulaParams {
    Standard {
        a: f64,
        b: f64,
    },
    /// `lim_{b -> +-inf} C(u, v; alpha/(1+b)^2, b)`, both signs give the same limit.
    Limit {
        alpha: f64,
    },
}

impl CopulaParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(CopulaError::InvalidParams(format!(
                "a = {a} and b = {b} must both be finite"
            )));
        }
        Ok(Self::Standard { a, b })
    }

    /// Like [`CopulaParams::new`] but rejects `(a, b)` outside the closed
    /// region returned by [`region::in_omega`].
    pub fn new_in_omega(a: f64, b: f64) -> Result<Self> {
        let params = Self::new(a, b)?;
        if region::in_omega(a, b) == RegionLabel::Outside {
            let iv = region::omega_a_interval(b).interval;
            return Err(CopulaError::InvalidParams(format!(
                "(a, b) = ({a}, {b}) is outside the region; a must lie in [{}, {}]",
                iv.a_min, iv.a_max
            )));
        }
        Ok(params)
    }

    pub fn limit(alpha: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&alpha) {
            return Err(CopulaError::InvalidParams(format!(
                "limit parameter alpha = {alpha} must lie in [-1, 1]"
            )));
        }
        Ok(Self::Limit { alpha })
    }

    /// True when the density is nonnegative on the whole unit square.
    pub fn is_density_admissible(&self) -> bool {
        match *self {
            Self::Standard { a, b } => region::density_admissible_interval(b).contains(a),
            Self::Limit { alpha } => (-1.0..=1.0).contains(&alpha),
        }
    }

    /// `(w, phi, phi')` such that `C(u, v) = uv + w phi(u) phi(v)`.
    fn perturbation(&self) -> (f64, Kernel) {
        match *self {
            Self::Standard { a, b } => (a, Kernel::Cubic { b }),
            Self::Limit { alpha } => (alpha, Kernel::Iterated),
        }
    }
}

#[derive(Clone, Copy)]
enum Kernel {
    /// `phi = u(1-u)(1+bu)`, `phi' = -f(u, b)`.
    Cubic { b: f64 },
    /// `phi = u^2 (1-u)`, `phi' = 2u - 3u^2`.
    Iterated,
}

impl Kernel {
    fn phi(self, u: f64) -> f64 {
        match self {
            Kernel::Cubic { b } => g_unchecked(u, b),
            Kernel::Iterated => u * u * (1.0 - u),
        }
    }

    fn dphi(self, u: f64) -> f64 {
        match self {
            Kernel::Cubic { b } => -f_unchecked(u, b),
            Kernel::Iterated => u * (2.0 - 3.0 * u),
        }
    }
}

/// A point of the closed unit square.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitPoint {
    u: f64,
    v: f64,
}

impl UnitPoint {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        check_unit("u", u)?;
        check_unit("v", v)?;
        Ok(Self { u, v })
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn v(&self) -> f64 {
        self.v
    }
}

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(CopulaError::Domain { name, value })
    }
}

#[inline]
pub(crate) fn f_unchecked(u: f64, b: f64) -> f64 {
    3.0 * b * u * u + 2.0 * u * (1.0 - b) - 1.0
}

#[inline]
pub(crate) fn g_unchecked(u: f64, b: f64) -> f64 {
    u * (1.0 - u) * (1.0 + b * u)
}

/// Density kernel `f(u, b) = 3bu^2 + 2u(1-b) - 1`.
pub fn kernel_f(u: f64, b: f64) -> Result<f64> {
    check_unit("u", u)?;
    Ok(f_unchecked(u, b))
}

/// CDF kernel `g(u, b) = u(1-u)(1+bu)`; `dg/du = -f(u, b)`.
pub fn kernel_g(u: f64, b: f64) -> Result<f64> {
    check_unit("u", u)?;
    Ok(g_unchecked(u, b))
}

/// Copula CDF at `p`.
pub fn cdf(params: &CopulaParams, p: UnitPoint) -> f64 {
    cdf_unchecked(params, p.u, p.v)
}

pub(crate) fn cdf_unchecked(params: &CopulaParams, u: f64, v: f64) -> f64 {
    match *params {
        // grouped so that swapping u and v gives bit-identical results
        CopulaParams::Standard { a, b } => {
            let side = |x: f64| (1.0 - x) * (1.0 + b * x);
            u * v * (1.0 + a * (side(u) * side(v)))
        }
        CopulaParams::Limit { alpha } => {
            let side = |x: f64| x * (1.0 - x);
            u * v * (1.0 + alpha * (side(u) * side(v)))
        }
    }
}

/// Copula density at `p`. Negative values are returned as-is.
pub fn pdf(params: &CopulaParams, p: UnitPoint) -> f64 {
    pdf_unchecked(params, p.u, p.v)
}

pub(crate) fn pdf_unchecked(params: &CopulaParams, u: f64, v: f64) -> f64 {
    match *params {
        CopulaParams::Standard { a, b } => 1.0 + a * (f_unchecked(u, b) * f_unchecked(v, b)),
        CopulaParams::Limit { .. } => {
            let (w, k) = params.perturbation();
            1.0 + w * (k.dphi(u) * k.dphi(v))
        }
    }
}

/// `F(v | u) = dC/du (u, v)`, the distribution of `V` given `U = u`.
pub fn conditional_cdf(params: &CopulaParams, u: f64, v: f64) -> Result<f64> {
    check_unit("u", u)?;
    check_unit("v", v)?;
    Ok(conditional_cdf_unchecked(params, u, v))
}

pub(crate) fn conditional_cdf_unchecked(params: &CopulaParams, u: f64, v: f64) -> f64 {
    let (w, k) = params.perturbation();
    v + w * k.dphi(u) * k.phi(v)
}

/// Inverts [`conditional_cdf`] in `v`.
///
/// Requires a nonnegative density so that `F(. | u)` is monotone. Solved by
/// safeguarded Newton with bisection fallback to an absolute residual of
/// `1e-12`.
pub fn conditional_quantile(params: &CopulaParams, u: f64, prob: f64) -> Result<f64> {
    if !params.is_density_admissible() {
        return Err(CopulaError::InvalidParams(format!(
            "{params:?} has a negative density somewhere; the conditional CDF is not monotone"
        )));
    }
    check_unit("u", u)?;
    check_unit("prob", prob)?;
    conditional_quantile_unchecked(params, u, prob)
}

pub(crate) fn conditional_quantile_unchecked(
    params: &CopulaParams,
    u: f64,
    prob: f64,
) -> Result<f64> {
    if prob == 0.0 || prob == 1.0 {
        return Ok(prob);
    }
    let (w, k) = params.perturbation();
    let slope = w * k.dphi(u);
    if slope == 0.0 {
        return Ok(prob);
    }
    newton_bisect(
        |v| (v + slope * k.phi(v) - prob, 1.0 + slope * k.dphi(v)),
        0.0,
        1.0,
        prob,
        RootConfig::default(),
    )
}
