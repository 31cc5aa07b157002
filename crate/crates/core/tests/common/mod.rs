#![allow(dead_code)]

use it2bayes::{IntervalSet, SampledFou};

pub const PRODUCTION: [(f64, f64); 5] = [
    (900_000.0, 1_200_000.0),
    (850_000.0, 1_100_000.0),
    (850_000.0, 1_300_000.0),
    (1_000_000.0, 1_500_000.0),
    (800_000.0, 1_300_000.0),
];

pub const PRODUCTION_NULL: [(f64, f64); 5] = [
    (900_000.0, 1_200_000.0),
    (850_000.0, 1_100_000.0),
    (850_000.0, 1_200_000.0),
    (1_400_000.0, 1_600_000.0),
    (800_000.0, 1_300_000.0),
];

pub const LEFT_DROOP: [(f64, f64); 5] = [(0.0, 0.3), (0.0, 0.5), (0.0, 0.3), (0.1, 0.5), (0.2, 0.4)];
pub const RIGHT_DROOP: [(f64, f64); 5] = [(0.4, 0.7), (0.6, 1.0), (0.8, 1.0), (0.5, 1.0), (0.7, 0.9)];
pub const INTERIOR_DROOP: [(f64, f64); 5] = [(0.0, 0.3), (0.0, 0.5), (0.0, 0.6), (0.5, 1.0), (0.7, 0.9)];

pub const OPENING_NEG: [(f64, f64); 10] = [
    (-430.0, -389.0),
    (-394.0, -356.0),
    (-383.0, -347.0),
    (-394.0, -356.0),
    (-451.0, -408.0),
    (-441.0, -399.0),
    (-441.0, -399.0),
    (-420.0, -380.0),
    (-420.0, -380.0),
    (-478.0, -432.0),
];
pub const CLOSING_NEG: [(f64, f64); 10] = [
    (-357.0, -323.0),
    (-394.0, -356.0),
    (-352.0, -318.0),
    (-499.0, -451.0),
    (-357.0, -323.0),
    (-420.0, -380.0),
    (-420.0, -380.0),
    (-367.0, -332.0),
    (-420.0, -380.0),
    (-407.0, -369.0),
];
pub const OPENING_MIXED: [(f64, f64); 10] = [
    (95.0, 105.0),
    (95.0, 105.0),
    (95.0, 105.0),
    (101.0, 111.0),
    (-110.0, -100.0),
    (102.0, 112.0),
    (-115.0, -104.0),
    (102.0, 112.0),
    (-110.0, -100.0),
    (106.0, 118.0),
];
// The published row [-111, -199] is inverted; -99 keeps the ten-point
// spread of its neighbours.
pub const CLOSING_MIXED: [(f64, f64); 10] = [
    (104.0, 115.0),
    (100.0, 110.0),
    (104.0, 115.0),
    (101.0, 111.0),
    (99.0, 109.0),
    (95.0, 105.0),
    (95.0, 105.0),
    (-111.0, -99.0),
    (95.0, 105.0),
    (-106.0, -96.0),
];

/// Likelihood, prior and evidence estimates of the wide-evidence example.
pub const WIDE: [[(f64, f64); 6]; 3] = [
    [(0.4, 0.6), (0.55, 0.65), (0.5, 0.6), (0.45, 0.65), (0.5, 0.65), (0.45, 0.65)],
    [(0.2, 0.4), (0.35, 0.5), (0.15, 0.45), (0.3, 0.4), (0.25, 0.6), (0.45, 0.65)],
    [(0.4, 0.6), (0.4, 0.5), (0.4, 0.7), (0.4, 0.8), (0.35, 0.75), (0.45, 0.65)],
];

/// Likelihood, prior and evidence estimates of the narrow-estimate example.
pub const NARROW: [[(f64, f64); 6]; 3] = [
    [(0.4, 0.5), (0.55, 0.6), (0.5, 0.55), (0.45, 0.55), (0.5, 0.6), (0.45, 0.5)],
    [(0.25, 0.35), (0.35, 0.4), (0.25, 0.3), (0.3, 0.35), (0.3, 0.35), (0.35, 0.4)],
    [(0.55, 0.6), (0.45, 0.5), (0.45, 0.55), (0.5, 0.6), (0.45, 0.55), (0.55, 0.65)],
];

pub fn unbounded(pairs: &[(f64, f64)]) -> IntervalSet {
    IntervalSet::from_pairs(pairs, None, None).unwrap()
}

pub fn unit(pairs: &[(f64, f64)]) -> IntervalSet {
    IntervalSet::from_pairs(pairs, Some(0.0), Some(1.0)).unwrap()
}

pub fn pairs(set: &[it2bayes::Interval]) -> Vec<(f64, f64)> {
    set.iter().map(|iv| (iv.lo(), iv.hi())).collect()
}

/// Centroid of the embedded set with `upper` on samples `0..k` and `lower`
/// after (or the reverse), summed in index order.
fn switch_centroid(fou: &SampledFou, k: usize, upper_first: bool) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..fou.x.len() {
        let w = if (i < k) == upper_first { fou.upper[i] } else { fou.lower[i] };
        num += fou.x[i] * w;
        den += w;
    }
    num / den
}

/// Exhaustive search over every switch point.
pub fn brute_force_centroid(fou: &SampledFou) -> (f64, f64) {
    let n = fou.x.len();
    let mut c_l = f64::INFINITY;
    let mut c_r = f64::NEG_INFINITY;
    for k in 0..=n {
        let l = switch_centroid(fou, k, true);
        if l.is_finite() {
            c_l = c_l.min(l);
        }
        let r = switch_centroid(fou, k, false);
        if r.is_finite() {
            c_r = c_r.max(r);
        }
    }
    (c_l, c_r)
}
