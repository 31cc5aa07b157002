//! Centroid interval of a sampled footprint by the enhanced Karnik-Mendel
//! iteration.
//!
//! `c_l` is the smallest centroid over all embedded type-1 sets; it is
//! attained by upper weights left of a switch point and lower weights right
//! of it. `c_r` is the mirror case. The iteration moves the switch point to
//! the grid interval containing the current centroid and stops when it no
//! longer moves. Sums are updated incrementally while searching, and the
//! final centroid is recomputed directly at the converged switch point.

use serde::{Deserialize, Serialize};

use crate::bayes::SampledFou;
use crate::error::{Error, Result};

/// Default sample count for the type-reduction grid.
pub const DEFAULT_GRID_POINTS: usize = 2001;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentroidResult {
    pub c_l: f64,
    pub c_r: f64,
    pub midpoint: f64,
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

/// Weight of sample `i` for switch point `k` (samples `0..k` are left of it).
#[inline]
fn weight(side: Side, i: usize, k: usize, upper: &[f64], lower: &[f64]) -> f64 {
    match (side, i < k) {
        (Side::Left, true) | (Side::Right, false) => upper[i],
        _ => lower[i],
    }
}

fn centroid_at(side: Side, k: usize, x: &[f64], upper: &[f64], lower: &[f64]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, xi) in x.iter().enumerate() {
        let w = weight(side, i, k, upper, lower);
        num += xi * w;
        den += w;
    }
    num / den
}

/// Switch point for centroid `y`: the number of samples strictly below `y`,
/// kept in `1..n`. Ties go to the smaller index.
fn switch_for(x: &[f64], y: f64) -> usize {
    x.partition_point(|&v| v < y).clamp(1, x.len() - 1)
}

/// Runs the iteration from the initial switch point `k` (`1 ≤ k < n`), on
/// samples whose first and last upper memberships are positive.
fn ekm_side(side: Side, mut k: usize, x: &[f64], upper: &[f64], lower: &[f64]) -> f64 {
    let n = x.len();
    let (mut num, mut den) = (0.0, 0.0);
    for (i, xi) in x.iter().enumerate() {
        let w = weight(side, i, k, upper, lower);
        num += xi * w;
        den += w;
    }
    // each pass strictly moves k in one direction, so n passes suffice
    for _ in 0..=n {
        let next = switch_for(x, num / den);
        if next == k {
            break;
        }
        let (from, to) = (k.min(next), k.max(next));
        let mut dn = 0.0;
        let mut dd = 0.0;
        for i in from..to {
            let d = upper[i] - lower[i];
            dn += x[i] * d;
            dd += d;
        }
        // moving k right turns samples from "right of k" into "left of k"
        let sign = match (side, next > k) {
            (Side::Left, true) | (Side::Right, false) => 1.0,
            _ => -1.0,
        };
        num += sign * dn;
        den += sign * dd;
        k = next;
    }
    centroid_at(side, k, x, upper, lower)
}

/// Initial switch points as fractions `1/2.4` and `1/1.7` of the length.
fn default_starts(n: usize) -> (usize, usize) {
    let clamp = |v: f64| (v.floor() as usize).clamp(1, n - 1);
    (clamp(n as f64 / 2.4), clamp(n as f64 / 1.7))
}

/// Centroid interval from explicit initial switch points, given as indices
/// into the samples of positive upper membership.
pub fn ekm_centroid_from(fou: &SampledFou, start_l: usize, start_r: usize) -> Result<CentroidResult> {
    let first = fou.upper.iter().position(|&u| u > 0.0).ok_or(Error::ZeroUpperMembership)?;
    let last = fou.upper.iter().rposition(|&u| u > 0.0).unwrap_or(first);
    let x = &fou.x[first..=last];
    let upper = &fou.upper[first..=last];
    let lower = &fou.lower[first..=last];
    let n = x.len();
    if n == 1 {
        return Ok(CentroidResult {
            c_l: x[0],
            c_r: x[0],
            midpoint: x[0],
        });
    }
    let k_l = start_l.clamp(1, n - 1);
    let k_r = start_r.clamp(1, n - 1);
    let c_l = ekm_side(Side::Left, k_l, x, upper, lower);
    let c_r = ekm_side(Side::Right, k_r, x, upper, lower);
    Ok(CentroidResult {
        c_l,
        c_r,
        midpoint: 0.5 * (c_l + c_r),
    })
}

/// Centroid interval `[c_l, c_r]` and its midpoint.
pub fn ekm_centroid(fou: &SampledFou) -> Result<CentroidResult> {
    let first = fou.upper.iter().position(|&u| u > 0.0).ok_or(Error::ZeroUpperMembership)?;
    let last = fou.upper.iter().rposition(|&u| u > 0.0).unwrap_or(first);
    let n = last - first + 1;
    if n == 1 {
        return ekm_centroid_from(fou, 0, 0);
    }
    let (k_l, k_r) = default_starts(n);
    ekm_centroid_from(fou, k_l, k_r)
}
