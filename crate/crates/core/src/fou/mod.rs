//! Synthesis of interval type-2 membership functions from sets of expert
//! interval estimates.
//!
//! The pipeline for one quantity is: find the unanimous-agreement overlap
//! (or the endpoint mean when there is none), categorize the footprint of
//! uncertainty from how the intervals meet the natural domain bounds, strip
//! the overlap to get reduced left/right interval sets, and aggregate the
//! reduced endpoints with weighted power means into upper and lower
//! trapezoids. Tails that meet a domain bound at intermediate membership
//! ("droop") are built from boundary-intercept fractions instead.

mod overlap;
mod params;
mod synth;
mod trapezoid;
mod wpm;

use serde::{Deserialize, Serialize};

use crate::interval::{negate, Interval};

pub use overlap::{
    axis_intercept_fractions, classify_fou, classify_with_overlap, compute_overlap,
    reduce_intervals, select_r,
};
pub use params::{droop_params, shoulder_interior_params, DroopGeometry, TailLine};
pub use synth::{
    expand_single_sme, synthesize, synthesize_signed, synthesize_traced, GroupTrace,
    SynthesisTrace,
};
pub use trapezoid::TrapezoidSpec;
pub use wpm::{wpm, wpm_unit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FouCategory {
    LeftShoulder,
    RightShoulder,
    Interior,
    LeftDroop,
    RightDroop,
    InteriorDroop,
    SignedComposite,
}

impl FouCategory {
    /// Category of the reflection about `x = 0`.
    pub fn mirror(self) -> FouCategory {
        use FouCategory::*;
        match self {
            LeftShoulder => RightShoulder,
            RightShoulder => LeftShoulder,
            LeftDroop => RightDroop,
            RightDroop => LeftDroop,
            other => other,
        }
    }

    pub fn is_droop(self) -> bool {
        matches!(
            self,
            FouCategory::LeftDroop | FouCategory::RightDroop | FouCategory::InteriorDroop
        )
    }

    pub fn has_left_tail(self) -> bool {
        !matches!(self, FouCategory::LeftShoulder)
    }

    pub fn has_right_tail(self) -> bool {
        !matches!(self, FouCategory::RightShoulder)
    }
}

/// Region of unanimous agreement among the intervals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OverlapResult {
    /// `[max lo, min hi]`, strictly positive width.
    NonNull { interval: Interval },
    /// No common agreement; `mean` is the mean of all interval endpoints.
    Null { mean: f64 },
}

impl OverlapResult {
    pub fn is_null(&self) -> bool {
        matches!(self, OverlapResult::Null { .. })
    }

    /// Where the left tail attaches to the plateau (`o_ℓ`, or `m`).
    pub fn left_attach(&self) -> f64 {
        match *self {
            OverlapResult::NonNull { interval } => interval.lo(),
            OverlapResult::Null { mean } => mean,
        }
    }

    /// Where the right tail attaches to the plateau (`o_r`, or `m`).
    pub fn right_attach(&self) -> f64 {
        match *self {
            OverlapResult::NonNull { interval } => interval.hi(),
            OverlapResult::Null { mean } => mean,
        }
    }

    pub fn mirror(&self) -> OverlapResult {
        match *self {
            OverlapResult::NonNull { interval } => OverlapResult::NonNull {
                interval: interval.mirror(),
            },
            OverlapResult::Null { mean } => OverlapResult::Null { mean: negate(mean) },
        }
    }
}

/// Intervals left of (and right of) the plateau after removing the overlap
/// or splitting at the endpoint mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedSets {
    pub left: Vec<Interval>,
    pub right: Vec<Interval>,
}

/// Membership of the upper and lower curves where a drooping tail meets the
/// domain bound. `None` on sides that do not droop.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DroopHeights {
    pub upper_left: Option<f64>,
    pub upper_right: Option<f64>,
    pub lower_left: Option<f64>,
    pub lower_right: Option<f64>,
}

impl DroopHeights {
    pub fn mirror(&self) -> DroopHeights {
        DroopHeights {
            upper_left: self.upper_right,
            upper_right: self.upper_left,
            lower_left: self.lower_right,
            lower_right: self.lower_left,
        }
    }
}

/// Interval type-2 membership function: an upper and a lower trapezoid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct It2MembershipFunction {
    pub umf: TrapezoidSpec,
    pub lmf: TrapezoidSpec,
    pub category: FouCategory,
    pub lower_bound: Option<f64>,
    pub upper_bound: Option<f64>,
    pub droop_heights: Option<DroopHeights>,
}

impl It2MembershipFunction {
    /// `(upper, lower)` membership at `x`.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        (self.umf.eval(x), self.lmf.eval(x))
    }

    /// Reflection about `x = 0`.
    pub fn mirror(&self) -> It2MembershipFunction {
        It2MembershipFunction {
            umf: self.umf.mirror(),
            lmf: self.lmf.mirror(),
            category: self.category.mirror(),
            lower_bound: self.upper_bound.map(negate),
            upper_bound: self.lower_bound.map(negate),
            droop_heights: self.droop_heights.map(|d| d.mirror()),
        }
    }

    /// Uniform grid over the upper support with `(x, upper, lower)` samples.
    pub fn sample(&self, grid_points: usize) -> Vec<(f64, f64, f64)> {
        let (lo, hi) = self.umf.support();
        crate::bayes::uniform_grid(lo, hi, grid_points)
            .into_iter()
            .map(|x| {
                let (u, l) = self.eval(x);
                (x, u, l)
            })
            .collect()
    }
}

/// How the tail-width exponent is chosen for a quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExponentChoice {
    /// Ratio of the full endpoint range to the overlap width (`+∞` when
    /// there is no overlap).
    Auto,
    /// Explicit exponent, `r ≥ 1` (`+∞` allowed).
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthesisConfig {
    pub r: ExponentChoice,
    /// Exponent for the lower left boundary intercept of a droop tail.
    pub r0: f64,
    /// Exponent for the lower right boundary intercept of a droop tail.
    pub r1: f64,
    pub single_sme_pairs: usize,
    pub seed: u64,
}

impl Default for SynthesisConfig {
    fn default() -> Self {
        SynthesisConfig {
            r: ExponentChoice::Auto,
            r0: 1.0,
            r1: 1.0,
            single_sme_pairs: 50,
            seed: 0,
        }
    }
}

impl SynthesisConfig {
    pub fn with_r(r: f64) -> Self {
        SynthesisConfig {
            r: ExponentChoice::Fixed(r),
            ..Default::default()
        }
    }
}
