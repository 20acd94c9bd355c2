//! Parameter regions.
//!
//! Two different sets are exposed here and they should not be confused:
//!
//! * [`in_omega`] / [`omega_a_interval`]: the closed, branch-wise region
//!   on which the family is known to be a copula. For `b > 1` and `b < -2`
//!   its `a`-range is `[-1/(1+b)^2, 1/(1+b)^2]`; for `-2 <= b <= 0` it is
//!   `[-1, 0]`.
//! * [`density_admissible_interval`]: the exact set of `a` for which the
//!   density `1 + a f(u,b) f(v,b)` is nonnegative on the whole square. It
//!   contains the region's interval for every `b` and is strictly larger
//!   for `b > 1` and for `b < 0` (e.g. `[-1/16, 9/52]` against
//!   `[-1/16, 1/16]` at `b = 3`).

use serde::Serialize;

/// Which branch of the region a parameter pair falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RegionLabel {
    /// `b >= 0` branches. `b = 0` is always labelled here.
    OmegaPlus,
    /// `b < 0` branches.
    OmegaMinus,
    Outside,
}

impl RegionLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegionLabel::OmegaPlus => "OmegaPlus",
            RegionLabel::OmegaMinus => "OmegaMinus",
            RegionLabel::Outside => "Outside",
        }
    }
}

impl std::fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A closed interval `[a_min, a_max]` of the dependence parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AInterval {
    pub a_min: f64,
    pub a_max: f64,
}

impl AInterval {
    pub fn new(a_min: f64, a_max: f64) -> Self {
        debug_assert!(a_min <= a_max, "[{a_min}, {a_max}]");
        Self { a_min, a_max }
    }

    pub fn contains(&self, a: f64) -> bool {
        self.a_min <= a && a <= self.a_max
    }

    pub fn width(&self) -> f64 {
        self.a_max - self.a_min
    }
}

/// The region branch selected by `b` together with its `a`-interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OmegaInterval {
    pub label: RegionLabel,
    pub interval: AInterval,
}

/// Branch-wise membership of `(a, b)`; all bounds are closed.
pub fn in_omega(a: f64, b: f64) -> RegionLabel {
    if !a.is_finite() || !b.is_finite() {
        return RegionLabel::Outside;
    }
    let branch = omega_a_interval(b);
    if branch.interval.contains(a) {
        branch.label
    } else {
        RegionLabel::Outside
    }
}

/// The `a`-interval of the region branch containing `b`.
pub fn omega_a_interval(b: f64) -> OmegaInterval {
    let sq = 1.0 / ((1.0 + b) * (1.0 + b));
    if b >= 0.0 {
        let a_max = if b <= 1.0 { 1.0 / (1.0 + b) } else { sq };
        OmegaInterval {
            label: RegionLabel::OmegaPlus,
            interval: AInterval::new(-sq, a_max),
        }
    } else if b >= -2.0 {
        OmegaInterval {
            label: RegionLabel::OmegaMinus,
            interval: AInterval::new(-1.0, 0.0),
        }
    } else {
        OmegaInterval {
            label: RegionLabel::OmegaMinus,
            interval: AInterval::new(-sq, sq),
        }
    }
}

/// Exact minimum and maximum of `f(., b)` over `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FExtremes {
    pub min: f64,
    pub max: f64,
    /// Interior critical point `(b-1)/(3b)` when it lies in `(0, 1)`.
    pub critical_u: Option<f64>,
}

/// Candidate extreme of `f` with its reciprocal computed in closed form, so
/// that bounds such as `1/(|m| M)` come out exact at rational `b`.
#[derive(Clone, Copy)]
struct Extreme {
    value: f64,
    recip: f64,
}

fn extreme_candidates(b: f64) -> (Vec<Extreme>, Option<f64>) {
    let mut out = vec![
        Extreme {
            value: -1.0,
            recip: -1.0,
        },
        Extreme {
            value: b + 1.0,
            recip: 1.0 / (b + 1.0),
        },
    ];
    // b = 0 is the linear case 2u - 1: no interior critical point
    if b == 0.0 {
        return (out, None);
    }
    let uc = (b - 1.0) / (3.0 * b);
    if uc > 0.0 && uc < 1.0 {
        // f(uc) = -1 - (1-b)^2/(3b) = -(b^2 + b + 1)/(3b)
        let q = b * b + b + 1.0;
        out.push(Extreme {
            value: -q / (3.0 * b),
            recip: -3.0 * b / q,
        });
        (out, Some(uc))
    } else {
        (out, None)
    }
}

fn min_max(cands: &[Extreme]) -> (Extreme, Extreme) {
    let mut lo = cands[0];
    let mut hi = cands[0];
    for c in &cands[1..] {
        if c.value < lo.value {
            lo = *c;
        }
        if c.value > hi.value {
            hi = *c;
        }
    }
    (lo, hi)
}

/// Exact extremes of the density kernel `f(u, b) = 3bu^2 + 2u(1-b) - 1`
/// over `u` in `[0, 1]`.
///
/// The endpoints give `f(0) = -1` and `f(1) = b + 1`; the quadratic has a
/// critical point at `(b-1)/(3b)` with value `-1 - (1-b)^2/(3b)` which is
/// included whenever it is interior.
pub fn f_extremes(b: f64) -> FExtremes {
    let (cands, critical_u) = extreme_candidates(b);
    let (lo, hi) = min_max(&cands);
    FExtremes {
        min: lo.value,
        max: hi.value,
        critical_u,
    }
}

/// The largest interval of `a` with `1 + a f(u,b) f(v,b) >= 0` on `[0,1]^2`.
///
/// With `m = min f <= -1` and `M = max f > 0`, the product `f(u) f(v)`
/// ranges over `[m M, max(m^2, M^2)]`, so `a` must lie in
/// `[-1/max(m^2, M^2), 1/(|m| M)]`.
pub fn density_admissible_interval(b: f64) -> AInterval {
    let (cands, _) = extreme_candidates(b);
    let (m, big_m) = min_max(&cands);
    debug_assert!(m.value <= -1.0 && big_m.value > 0.0, "b = {b}");
    let a_max = -m.recip * big_m.recip;
    let r = m.recip.abs().min(big_m.recip.abs());
    AInterval::new(-r * r, a_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copula::f_unchecked;
    use proptest::prelude::*;

    /// Brute-force extremes of f on an equispaced grid with `n` cells.
    fn grid_extremes(b: f64, n: usize) -> (f64, f64) {
        (0..=n)
            .map(|i| f_unchecked(i as f64 / n as f64, b))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), f| {
                (lo.min(f), hi.max(f))
            })
    }

    #[test]
    fn in_omega_examples() {
        assert_eq!(in_omega(0.5, 1.0), RegionLabel::OmegaPlus);
        assert_eq!(in_omega(-1.0, -1.0), RegionLabel::OmegaMinus);
        assert_eq!(in_omega(0.6, 1.0), RegionLabel::Outside);
        assert_eq!(in_omega(-0.5, 0.5), RegionLabel::Outside);
        assert_eq!(in_omega(0.1, -1.0), RegionLabel::Outside);
        assert_eq!(in_omega(f64::NAN, 0.0), RegionLabel::Outside);
    }

    #[test]
    fn b_zero_is_labelled_omega_plus() {
        for a in [-1.0, -0.5, 0.0, 0.5, 1.0] {
            assert_eq!(in_omega(a, 0.0), RegionLabel::OmegaPlus);
        }
        assert_eq!(in_omega(1.0 + 1e-12, 0.0), RegionLabel::Outside);
    }

    #[test]
    fn branch_joint_at_b_one_uses_closed_lower_branch() {
        // b = 1 belongs to the 0 <= b <= 1 branch: cap 1/2 rather than 1/4
        assert_eq!(omega_a_interval(1.0).interval, AInterval::new(-0.25, 0.5));
        assert_eq!(in_omega(0.4, 1.0), RegionLabel::OmegaPlus);
        let just_above = 1.0 + 1e-9;
        assert_eq!(in_omega(0.4, just_above), RegionLabel::Outside);
        assert_eq!(in_omega(0.24, just_above), RegionLabel::OmegaPlus);
    }

    #[test]
    fn branch_edges_are_closed() {
        assert_eq!(in_omega(-1.0, -2.0), RegionLabel::OmegaMinus);
        assert_eq!(in_omega(0.0, -2.0), RegionLabel::OmegaMinus);
        assert_eq!(in_omega(1.0 / 16.0, -5.0), RegionLabel::OmegaMinus);
        assert_eq!(in_omega(-1.0 / 16.0, 3.0), RegionLabel::OmegaPlus);
        assert_eq!(in_omega(1.0 / 16.0 + 1e-12, 3.0), RegionLabel::Outside);
    }

    #[test]
    fn omega_a_interval_examples() {
        assert_eq!(omega_a_interval(0.0).interval, AInterval::new(-1.0, 1.0));
        assert_eq!(
            omega_a_interval(3.0).interval,
            AInterval::new(-1.0 / 16.0, 1.0 / 16.0)
        );
        let iv = omega_a_interval(0.5).interval;
        assert!((iv.a_min + 4.0 / 9.0).abs() < 1e-15);
        assert!((iv.a_max - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(omega_a_interval(-1.5).interval, AInterval::new(-1.0, 0.0));
        assert_eq!(omega_a_interval(-1.5).label, RegionLabel::OmegaMinus);
    }

    #[test]
    fn f_extremes_examples() {
        let e = f_extremes(0.5);
        assert_eq!((e.min, e.max), (-1.0, 1.5));
        let e = f_extremes(3.0);
        assert!((e.min + 13.0 / 9.0).abs() < 1e-15);
        assert_eq!(e.max, 4.0);
        assert!((e.critical_u.unwrap() - 2.0 / 9.0).abs() < 1e-15);
        let e = f_extremes(-1.0);
        assert_eq!(e.min, -1.0);
        assert!((e.max - 1.0 / 3.0).abs() < 1e-15);
        let e = f_extremes(0.0);
        assert_eq!((e.min, e.max, e.critical_u), (-1.0, 1.0, None));
    }

    #[test]
    fn density_interval_examples() {
        assert_eq!(density_admissible_interval(1.0), AInterval::new(-0.25, 0.5));
        assert_eq!(density_admissible_interval(-1.0), AInterval::new(-1.0, 3.0));
        assert_eq!(
            density_admissible_interval(3.0),
            AInterval::new(-1.0 / 16.0, 9.0 / 52.0)
        );
        assert_eq!(density_admissible_interval(0.0), AInterval::new(-1.0, 1.0));
    }

    #[test]
    fn f_extremes_match_brute_force() {
        // grid error is at most 3|b| h^2 / 4, below 1e-9 for |b| <= 10
        for i in 0..=400 {
            let b = -10.0 + i as f64 * 0.05;
            let e = f_extremes(b);
            let (lo, hi) = grid_extremes(b, 100_000);
            assert!((e.min - lo).abs() < 1e-9, "b={b}: {} vs {lo}", e.min);
            assert!((e.max - hi).abs() < 1e-9, "b={b}: {} vs {hi}", e.max);
        }
    }

    #[test]
    fn density_interval_equals_omega_on_unit_branch() {
        for i in 0..=100 {
            let b = i as f64 / 100.0;
            let exact = density_admissible_interval(b);
            let omega = omega_a_interval(b).interval;
            assert!(
                (exact.a_min - omega.a_min).abs() <= 1e-15 * omega.a_min.abs(),
                "b={b}"
            );
            assert!(
                (exact.a_max - omega.a_max).abs() <= 1e-15 * omega.a_max.abs(),
                "b={b}"
            );
        }
    }

    #[test]
    fn density_upper_bound_is_sharp() {
        for b in [-6.0, -1.0, 0.0, 0.5, 1.0, 3.0, 12.0] {
            let iv = density_admissible_interval(b);
            for a in [iv.a_min, iv.a_max] {
                // every extreme of f is a grid point of the 2-d lattice or hit by the critical point
                let e = f_extremes(b);
                let mut pts: Vec<f64> = (0..=400).map(|i| i as f64 / 400.0).collect();
                pts.extend(e.critical_u);
                let mut min_pdf = f64::INFINITY;
                for &u in &pts {
                    for &v in &pts {
                        min_pdf = min_pdf.min(1.0 + a * f_unchecked(u, b) * f_unchecked(v, b));
                    }
                }
                assert!(min_pdf.abs() < 1e-9, "b={b} a={a}: {min_pdf}");
            }
        }
    }

    proptest! {
        #[test]
        fn omega_is_inside_density_interval(b in -60.0f64..60.0, t in 0.0f64..=1.0) {
            let omega = omega_a_interval(b).interval;
            let exact = density_admissible_interval(b);
            let a = (omega.a_min + t * omega.width()).min(omega.a_max);
            prop_assert!(exact.a_min <= omega.a_min + 1e-15 * omega.a_min.abs());
            prop_assert!(exact.a_max >= omega.a_max - 1e-15 * omega.a_max.abs());
            prop_assert!(in_omega(a, b) != RegionLabel::Outside);
        }

        #[test]
        fn density_interval_keeps_density_nonnegative(b in -30.0f64..30.0, t in 0.0f64..=1.0, u in 0.0f64..=1.0, v in 0.0f64..=1.0) {
            let iv = density_admissible_interval(b);
            let a = iv.a_min + t * iv.width();
            prop_assert!(1.0 + a * f_unchecked(u, b) * f_unchecked(v, b) >= -1e-12);
        }
    }
}
