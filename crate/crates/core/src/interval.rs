//! Closed real intervals and the nonnegative interval arithmetic applied to
//! alpha-cuts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` with finite endpoints. Zero width is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::NonFinite { lo, hi });
        }
        if lo > hi {
            return Err(Error::Inverted { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    /// Zero-width interval at `x`.
    pub fn point(x: f64) -> Result<Self> {
        Interval::new(x, x)
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn is_nonnegative(&self) -> bool {
        self.lo >= 0.0
    }

    /// Reflection about zero: `[-hi, -lo]`.
    pub fn mirror(&self) -> Interval {
        Interval {
            lo: negate(self.hi),
            hi: negate(self.lo),
        }
    }

    // Endpoints are already ordered and finite.
    pub(crate) fn from_ordered(lo: f64, hi: f64) -> Interval {
        debug_assert!(lo <= hi, "unordered endpoints [{lo}, {hi}]");
        Interval { lo, hi }
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;

    fn try_from(v: [f64; 2]) -> Result<Self> {
        Interval::new(v[0], v[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(iv: Interval) -> Self {
        [iv.lo, iv.hi]
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Negation that maps `0.0` to `+0.0` rather than `-0.0`.
#[inline]
pub(crate) fn negate(x: f64) -> f64 {
    -x + 0.0
}

fn require_nonnegative(iv: &Interval) -> Result<()> {
    if iv.lo < 0.0 {
        return Err(Error::NegativeOperand {
            lo: iv.lo,
            hi: iv.hi,
        });
    }
    Ok(())
}

/// Product of two nonnegative intervals: `[a.lo·b.lo, a.hi·b.hi]`.
pub fn iv_mul(a: Interval, b: Interval) -> Result<Interval> {
    require_nonnegative(&a)?;
    require_nonnegative(&b)?;
    Ok(Interval::from_ordered(a.lo * b.lo, a.hi * b.hi))
}

/// Quotient of a nonnegative interval by a strictly positive one:
/// `[num.lo/den.hi, num.hi/den.lo]`.
pub fn iv_div(num: Interval, den: Interval) -> Result<Interval> {
    require_nonnegative(&num)?;
    if den.lo <= 0.0 {
        return Err(Error::DivisionDomain {
            lo: den.lo,
            hi: den.hi,
        });
    }
    Ok(Interval::from_ordered(num.lo / den.hi, num.hi / den.lo))
}

/// A non-empty collection of expert intervals for one quantity, with optional
/// natural domain bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
    lower_bound: Option<f64>,
    upper_bound: Option<f64>,
}

impl IntervalSet {
    pub fn new(
        intervals: Vec<Interval>,
        lower_bound: Option<f64>,
        upper_bound: Option<f64>,
    ) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::EmptySet);
        }
        for b in [lower_bound, upper_bound].into_iter().flatten() {
            if !b.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "natural bound must be finite, got {b}"
                )));
            }
        }
        if let (Some(lower), Some(upper)) = (lower_bound, upper_bound) {
            if lower > upper {
                return Err(Error::InvalidBounds { lower, upper });
            }
        }
        for (index, iv) in intervals.iter().enumerate() {
            let below = lower_bound.is_some_and(|l| iv.lo < l);
            let above = upper_bound.is_some_and(|u| iv.hi > u);
            if below || above {
                return Err(Error::BoundViolation {
                    index,
                    lo: iv.lo,
                    hi: iv.hi,
                });
            }
        }
        Ok(IntervalSet {
            intervals,
            lower_bound,
            upper_bound,
        })
    }

    pub fn unbounded(intervals: Vec<Interval>) -> Result<Self> {
        IntervalSet::new(intervals, None, None)
    }

    /// Builds a set from `(lo, hi)` pairs.
    pub fn from_pairs(
        pairs: &[(f64, f64)],
        lower_bound: Option<f64>,
        upper_bound: Option<f64>,
    ) -> Result<Self> {
        let intervals = pairs
            .iter()
            .map(|&(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        IntervalSet::new(intervals, lower_bound, upper_bound)
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn lower_bound(&self) -> Option<f64> {
        self.lower_bound
    }

    pub fn upper_bound(&self) -> Option<f64> {
        self.upper_bound
    }

    pub fn min_lo(&self) -> f64 {
        self.intervals
            .iter()
            .map(Interval::lo)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_hi(&self) -> f64 {
        self.intervals
            .iter()
            .map(Interval::hi)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Reflection of every interval and of the bounds about zero. Order of
    /// the intervals is preserved.
    pub fn mirror(&self) -> IntervalSet {
        IntervalSet {
            intervals: self.intervals.iter().map(Interval::mirror).collect(),
            lower_bound: self.upper_bound.map(negate),
            upper_bound: self.lower_bound.map(negate),
        }
    }
}
