//! Spearman's rho and Kendall's tau: closed forms for the family, quadrature
//! oracles from the defining integrals, and rank estimators for samples.
//!
//! For this family
//!
//! ```text
//! rho = a (2+b)^2 / 12,     tau = a (2+b)^2 / 18.
//! ```
//!
//! The quadrature routes use `rho = 12 ∫∫ C - 3` and
//! `tau = 4 ∫∫ C c - 1`, which hold for any absolutely continuous copula and
//! so check the closed forms independently.

use serde::Serialize;

use crate::copula::{self, CopulaParams, UnitPoint};
use crate::error::{CopulaError, Result};
use crate::quadrature::GaussLegendre;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DependenceMeasures {
    pub rho: f64,
    pub tau: f64,
}

impl DependenceMeasures {
    pub fn closed(a: f64, b: f64) -> Self {
        Self {
            rho: rho_closed(a, b),
            tau: tau_closed(a, b),
        }
    }

    /// Quadrature values for any parameter variant, including the limit.
    pub fn quadrature(params: &CopulaParams) -> Self {
        let cdf = |u, v| copula::cdf_unchecked(params, u, v);
        let pdf = |u, v| copula::pdf_unchecked(params, u, v);
        Self {
            rho: rho_quadrature(cdf),
            tau: tau_quadrature(cdf, pdf),
        }
    }

    pub fn from_sample(sample: &PairSample) -> Result<Self> {
        Ok(Self {
            rho: sample_spearman(sample)?,
            tau: sample_kendall(sample)?,
        })
    }
}

pub fn rho_closed(a: f64, b: f64) -> f64 {
    a * (2.0 + b) * (2.0 + b) / 12.0
}

pub fn tau_closed(a: f64, b: f64) -> f64 {
    a * (2.0 + b) * (2.0 + b) / 18.0
}

/// `12 ∫∫ C(u,v) du dv - 3` by 32×32 Gauss–Legendre.
pub fn rho_quadrature<C: Fn(f64, f64) -> f64>(cdf: C) -> f64 {
    12.0 * GaussLegendre::default().integrate_square(cdf) - 3.0
}

/// `4 ∫∫ C(u,v) c(u,v) du dv - 1` by 32×32 Gauss–Legendre.
pub fn tau_quadrature<C, D>(cdf: C, pdf: D) -> f64
where
    C: Fn(f64, f64) -> f64,
    D: Fn(f64, f64) -> f64,
{
    4.0 * GaussLegendre::default().integrate_square(|u, v| cdf(u, v) * pdf(u, v)) - 1.0
}

/// An ordered collection of observations in the unit square.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PairSample {
    points: Vec<UnitPoint>,
}

impl PairSample {
    pub fn new(points: Vec<UnitPoint>) -> Self {
        Self { points }
    }

    pub fn from_pairs<I: IntoIterator<Item = (f64, f64)>>(pairs: I) -> Result<Self> {
        pairs
            .into_iter()
            .map(|(u, v)| UnitPoint::new(u, v))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[UnitPoint] {
        &self.points
    }

    pub fn us(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.u())
    }

    pub fn vs(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.v())
    }
}

impl FromIterator<UnitPoint> for PairSample {
    fn from_iter<I: IntoIterator<Item = UnitPoint>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

fn check_rank_input(s: &PairSample) -> Result<()> {
    if s.len() < 2 {
        return Err(CopulaError::Degenerate(format!(
            "need at least 2 observations, got {}",
            s.len()
        )));
    }
    let constant = |mut it: Box<dyn Iterator<Item = f64> + '_>| {
        let first = it.next().unwrap();
        it.all(|x| x == first)
    };
    if constant(Box::new(s.us())) {
        return Err(CopulaError::Degenerate("u coordinate is constant".into()));
    }
    if constant(Box::new(s.vs())) {
        return Err(CopulaError::Degenerate("v coordinate is constant".into()));
    }
    Ok(())
}

/// 1-based ranks with ties replaced by their average rank.
fn midranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&i, &j| xs[i].total_cmp(&xs[j]));
    let mut ranks = vec![0.0; xs.len()];
    let mut start = 0;
    while start < idx.len() {
        let mut end = start + 1;
        while end < idx.len() && xs[idx[end]] == xs[idx[start]] {
            end += 1;
        }
        // positions start..end share ranks start+1 ..= end
        let rank = (start + end + 1) as f64 / 2.0;
        for &k in &idx[start..end] {
            ranks[k] = rank;
        }
        start = end;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    sxy / (sxx * syy).sqrt()
}

/// Spearman's rank correlation: Pearson correlation of midranks.
pub fn sample_spearman(s: &PairSample) -> Result<f64> {
    check_rank_input(s)?;
    let ru = midranks(&s.us().collect::<Vec<_>>());
    let rv = midranks(&s.vs().collect::<Vec<_>>());
    Ok(pearson(&ru, &rv))
}

/// Kendall's tau-a, `(concordant - discordant) / C(n, 2)`, ties counted as
/// neither. `O(n log n)` via merge-sort inversion counting.
pub fn sample_kendall(s: &PairSample) -> Result<f64> {
    check_rank_input(s)?;
    let mut pts: Vec<(f64, f64)> = s.points().iter().map(|p| (p.u(), p.v())).collect();
    pts.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));

    let n = pts.len() as i128;
    let n0 = n * (n - 1) / 2;
    let tied_u = tie_pairs(pts.iter().map(|p| p.0));
    let tied_both = tie_pairs_by(&pts, |p, q| p == q);

    let mut ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let mut buf = vec![0.0; ys.len()];
    let discordant = count_inversions(&mut ys, &mut buf) as i128;
    // ys is now sorted
    let tied_v = tie_pairs(ys.iter().copied());

    let diff = n0 - tied_u - tied_v + tied_both - 2 * discordant;
    Ok(diff as f64 / n0 as f64)
}

/// Reference `O(n^2)` implementation of [`sample_kendall`].
pub fn sample_kendall_naive(s: &PairSample) -> Result<f64> {
    check_rank_input(s)?;
    let pts = s.points();
    let mut net: i128 = 0;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let prod = (pts[i].u() - pts[j].u()) * (pts[i].v() - pts[j].v());
            if prod > 0.0 {
                net += 1;
            } else if prod < 0.0 {
                net -= 1;
            }
        }
    }
    let n = pts.len() as i128;
    Ok(net as f64 / (n * (n - 1) / 2) as f64)
}

/// Number of tied pairs in a sorted sequence.
fn tie_pairs<I: Iterator<Item = f64>>(sorted: I) -> i128 {
    let v: Vec<f64> = sorted.collect();
    tie_pairs_by(&v, |a, b| a == b)
}

fn tie_pairs_by<T, F: Fn(&T, &T) -> bool>(sorted: &[T], eq: F) -> i128 {
    let mut total = 0i128;
    let mut run = 1i128;
    for w in sorted.windows(2) {
        if eq(&w[0], &w[1]) {
            run += 1;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    total + run * (run - 1) / 2
}

/// Sorts `xs` ascending and returns the number of pairs `i < j` with
/// `xs[i] > xs[j]`.
fn count_inversions(xs: &mut [f64], buf: &mut [f64]) -> u64 {
    let n = xs.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (left, right) = xs.split_at_mut(mid);
        let (bl, br) = buf.split_at_mut(mid);
        count_inversions(left, bl) + count_inversions(right, br)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if xs[i] <= xs[j] {
            buf[k] = xs[i];
            i += 1;
        } else {
            buf[k] = xs[j];
            count += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&xs[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&xs[j..n]);
    xs.copy_from_slice(&buf[..n]);
    count
}
