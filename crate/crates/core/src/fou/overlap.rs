use crate::interval::{Interval, IntervalSet};

use super::{FouCategory, OverlapResult, ReducedSets};

/// Overlap `[max lo, min hi]` when it has positive width, otherwise the mean
/// of all `2n` endpoints.
pub fn compute_overlap(set: &IntervalSet) -> OverlapResult {
    let ivs = set.intervals();
    let o_l = ivs.iter().map(Interval::lo).fold(f64::NEG_INFINITY, f64::max);
    let o_r = ivs.iter().map(Interval::hi).fold(f64::INFINITY, f64::min);
    if o_l < o_r {
        OverlapResult::NonNull {
            interval: Interval::from_ordered(o_l, o_r),
        }
    } else {
        // summed in sorted order so the mean does not depend on input order
        let mut endpoints: Vec<f64> = ivs.iter().flat_map(|iv| [iv.lo(), iv.hi()]).collect();
        endpoints.sort_by(f64::total_cmp);
        let sum: f64 = endpoints.iter().sum();
        OverlapResult::Null {
            mean: sum / endpoints.len() as f64,
        }
    }
}

/// Fractions of intervals whose left endpoint equals the lower bound and
/// whose right endpoint equals the upper bound. An absent bound contributes
/// a fraction of zero. Equality is exact.
pub fn axis_intercept_fractions(
    intervals: &[Interval],
    lower_bound: Option<f64>,
    upper_bound: Option<f64>,
) -> (f64, f64) {
    if intervals.is_empty() {
        return (0.0, 0.0);
    }
    let mut at_lower = 0usize;
    let mut at_upper = 0usize;
    for iv in intervals {
        if lower_bound.is_some_and(|l| iv.lo() == l) {
            at_lower += 1;
        }
        if upper_bound.is_some_and(|u| iv.hi() == u) {
            at_upper += 1;
        }
    }
    let n = intervals.len() as f64;
    (at_lower as f64 / n, at_upper as f64 / n)
}

pub fn classify_fou(set: &IntervalSet) -> FouCategory {
    classify_with_overlap(set, &compute_overlap(set))
}

/// Categorization given a precomputed overlap.
pub fn classify_with_overlap(set: &IntervalSet, overlap: &OverlapResult) -> FouCategory {
    let (x0, x1) = axis_intercept_fractions(set.intervals(), set.lower_bound(), set.upper_bound());
    let partial = |f: f64| f > 0.0 && f < 1.0;
    if partial(x0) && partial(x1) {
        return FouCategory::InteriorDroop;
    }
    if partial(x0) && x1 == 0.0 {
        return FouCategory::LeftDroop;
    }
    if x0 == 0.0 && partial(x1) {
        return FouCategory::RightDroop;
    }
    if let OverlapResult::NonNull { interval } = overlap {
        if set.lower_bound() == Some(interval.lo()) {
            return FouCategory::LeftShoulder;
        }
        if set.upper_bound() == Some(interval.hi()) {
            return FouCategory::RightShoulder;
        }
    }
    FouCategory::Interior
}

/// Left and right reduced interval sets.
///
/// With an overlap, every interval contributes `[lo, o_ℓ]` to the left set
/// and `[o_r, hi]` to the right set. Without one, intervals wholly left of
/// the mean `m` (inclusive) go left, wholly right (inclusive) go right, and
/// straddlers are split at `m` into both; `[m, m]` lands in both.
pub fn reduce_intervals(set: &IntervalSet, overlap: &OverlapResult) -> ReducedSets {
    let ivs = set.intervals();
    match *overlap {
        OverlapResult::NonNull { interval } => ReducedSets {
            left: ivs
                .iter()
                .map(|iv| Interval::from_ordered(iv.lo(), interval.lo()))
                .collect(),
            right: ivs
                .iter()
                .map(|iv| Interval::from_ordered(interval.hi(), iv.hi()))
                .collect(),
        },
        OverlapResult::Null { mean } => {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for iv in ivs {
                if iv.hi() <= mean {
                    left.push(*iv);
                }
                if iv.lo() >= mean {
                    right.push(*iv);
                }
                if iv.lo() < mean && mean < iv.hi() {
                    left.push(Interval::from_ordered(iv.lo(), mean));
                    right.push(Interval::from_ordered(mean, iv.hi()));
                }
            }
            ReducedSets { left, right }
        }
    }
}

/// Interval-consistency exponent: full endpoint range over overlap width,
/// or `+∞` when there is no overlap.
pub fn select_r(set: &IntervalSet, overlap: &OverlapResult) -> f64 {
    match overlap {
        OverlapResult::NonNull { interval } => (set.max_hi() - set.min_lo()) / interval.width(),
        OverlapResult::Null { .. } => f64::INFINITY,
    }
}
