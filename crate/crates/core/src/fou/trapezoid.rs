//! Truncated trapezoidal membership curves.

use serde::{Deserialize, Serialize};

use crate::interval::negate;

/// One truncated trapezoid: linear rise from `(left_bottom, 0)` to
/// `(left_top, height)`, plateau to `right_top`, linear fall to
/// `(right_bottom, 0)`, and zero membership outside `[clip_lo, clip_hi]`.
///
/// A clip inside a sloped edge produces a vertical drop at the domain
/// bound; the sloped edge's root is then a virtual point outside the
/// clipped range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrapezoidSpec {
    pub left_bottom: f64,
    pub left_top: f64,
    pub right_top: f64,
    pub right_bottom: f64,
    pub clip_lo: f64,
    pub clip_hi: f64,
    pub height: f64,
}

impl TrapezoidSpec {
    /// Unit-height trapezoid with no truncation.
    pub fn new(left_bottom: f64, left_top: f64, right_top: f64, right_bottom: f64) -> Self {
        TrapezoidSpec {
            left_bottom,
            left_top,
            right_top,
            right_bottom,
            clip_lo: left_bottom,
            clip_hi: right_bottom,
            height: 1.0,
        }
    }

    /// Unit membership on `[lo, hi]`, zero elsewhere.
    pub fn rectangle(lo: f64, hi: f64) -> Self {
        TrapezoidSpec::new(lo, lo, hi, hi)
    }

    pub fn is_valid(&self) -> bool {
        let finite = [
            self.left_bottom,
            self.left_top,
            self.right_top,
            self.right_bottom,
            self.clip_lo,
            self.clip_hi,
        ]
        .iter()
        .all(|v| v.is_finite());
        finite
            && self.left_bottom <= self.clip_lo
            && self.clip_lo <= self.left_top
            && self.left_top <= self.right_top
            && self.right_top <= self.clip_hi
            && self.clip_hi <= self.right_bottom
            && self.height > 0.0
            && self.height <= 1.0
    }

    /// Membership at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        if x < self.clip_lo || x > self.clip_hi {
            0.0
        } else if x < self.left_top {
            // clip_lo ≥ left_bottom, so the edge has positive run here
            self.height * (x - self.left_bottom) / (self.left_top - self.left_bottom)
        } else if x <= self.right_top {
            self.height
        } else {
            self.height * (self.right_bottom - x) / (self.right_bottom - self.right_top)
        }
    }

    /// Closure of the support, `[clip_lo, clip_hi]`.
    pub fn support(&self) -> (f64, f64) {
        (self.clip_lo, self.clip_hi)
    }

    /// Membership at the left clip abscissa.
    pub fn left_boundary_height(&self) -> f64 {
        self.eval(self.clip_lo)
    }

    /// Membership at the right clip abscissa.
    pub fn right_boundary_height(&self) -> f64 {
        self.eval(self.clip_hi)
    }

    /// Slope of the rising edge (`None` when it is vertical).
    pub fn left_slope(&self) -> Option<f64> {
        let run = self.left_top - self.left_bottom;
        (run > 0.0).then(|| self.height / run)
    }

    /// Slope of the falling edge (`None` when it is vertical).
    pub fn right_slope(&self) -> Option<f64> {
        let run = self.right_bottom - self.right_top;
        (run > 0.0).then(|| -self.height / run)
    }

    /// Reflection about `x = 0` with the parameter order reversed.
    pub fn mirror(&self) -> TrapezoidSpec {
        TrapezoidSpec {
            left_bottom: negate(self.right_bottom),
            left_top: negate(self.right_top),
            right_top: negate(self.left_top),
            right_bottom: negate(self.left_bottom),
            clip_lo: negate(self.clip_hi),
            clip_hi: negate(self.clip_lo),
            height: self.height,
        }
    }
}
