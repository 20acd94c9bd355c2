//! Safeguarded Newton iteration for monotone scalar equations.

use crate::error::{CopulaError, Result};

/// Stopping rule for [`newton_bisect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootConfig {
    /// Absolute tolerance on the residual `|q(x)|`.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iter: 200,
        }
    }
}

/// Finds `x` in `[lo, hi]` with `|q(x)| <= tol` for a nondecreasing `q`.
///
/// `eval` returns `(q(x), q'(x))`. The bracket must satisfy
/// `q(lo) <= 0 <= q(hi)`; each iteration takes a Newton step when it lands
/// inside the current bracket and shrinks it at least as fast as bisection
/// would, and bisects otherwise. Flat stretches (`q' = 0`) therefore cannot
/// stall the iteration.
pub fn newton_bisect<F>(eval: F, lo: f64, hi: f64, x0: f64, cfg: RootConfig) -> Result<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    if lo.is_nan() || hi.is_nan() || lo > hi {
        return Err(CopulaError::Argument(format!("empty bracket [{lo}, {hi}]")));
    }
    let (q_lo, _) = eval(lo);
    if q_lo.abs() <= cfg.tol {
        return Ok(lo);
    }
    let (q_hi, _) = eval(hi);
    if q_hi.abs() <= cfg.tol {
        return Ok(hi);
    }
    if q_lo > 0.0 || q_hi < 0.0 {
        return Err(CopulaError::Argument(format!(
            "root not bracketed: q({lo}) = {q_lo}, q({hi}) = {q_hi}"
        )));
    }

    let (mut lo, mut hi) = (lo, hi);
    let mut x = x0.clamp(lo, hi);
    let mut last_step = hi - lo;
    let mut residual = f64::INFINITY;

    for _ in 0..cfg.max_iter {
        let (q, dq) = eval(x);
        residual = q.abs();
        if residual <= cfg.tol {
            return Ok(x);
        }
        if q < 0.0 {
            lo = x;
        } else {
            hi = x;
        }

        let newton = if dq > 0.0 && dq.is_finite() {
            Some(x - q / dq)
        } else {
            None
        };
        let next = match newton {
            Some(cand) if cand > lo && cand < hi && (q / dq).abs() * 2.0 <= last_step => {
                last_step = (q / dq).abs();
                cand
            }
            _ => {
                last_step = 0.5 * (hi - lo);
                lo + 0.5 * (hi - lo)
            }
        };
        if next == x {
            // bracket exhausted at floating-point resolution
            break;
        }
        x = next;
    }

    Err(CopulaError::Convergence {
        iterations: cfg.max_iter,
        residual,
        tol: cfg.tol,
    })
}
