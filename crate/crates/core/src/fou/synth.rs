use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{Interval, IntervalSet};

use super::overlap::{
    axis_intercept_fractions, classify_with_overlap, compute_overlap, reduce_intervals, select_r,
};
use super::params::{droop_params, shoulder_interior_params};
use super::{
    DroopHeights, ExponentChoice, FouCategory, It2MembershipFunction, OverlapResult, ReducedSets,
    SynthesisConfig, TrapezoidSpec,
};

/// Intermediate results for one same-sign group of intervals, expressed in
/// the caller's coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupTrace {
    pub category: FouCategory,
    pub overlap: OverlapResult,
    pub intercept_fractions: (f64, f64),
    pub reduced: ReducedSets,
    pub r: f64,
}

impl GroupTrace {
    fn mirror(&self) -> GroupTrace {
        let flip = |v: &[Interval]| v.iter().map(Interval::mirror).collect::<Vec<_>>();
        GroupTrace {
            category: self.category.mirror(),
            overlap: self.overlap.mirror(),
            intercept_fractions: (self.intercept_fractions.1, self.intercept_fractions.0),
            reduced: ReducedSets {
                left: flip(&self.reduced.right),
                right: flip(&self.reduced.left),
            },
            r: self.r,
        }
    }
}

/// A synthesized membership function together with the per-group traces
/// that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisTrace {
    pub mf: It2MembershipFunction,
    pub nonnegative: Option<GroupTrace>,
    pub nonpositive: Option<GroupTrace>,
}

fn synthesize_group(
    set: &IntervalSet,
    cfg: &SynthesisConfig,
) -> Result<(It2MembershipFunction, GroupTrace)> {
    if let Some((index, iv)) = set.intervals().iter().enumerate().find(|(_, iv)| !iv.is_nonnegative()) {
        return Err(Error::NegativeInterval { index, lo: iv.lo() });
    }
    let overlap = compute_overlap(set);
    let category = classify_with_overlap(set, &overlap);
    let reduced = reduce_intervals(set, &overlap);
    let r = match cfg.r {
        ExponentChoice::Auto => select_r(set, &overlap),
        ExponentChoice::Fixed(r) => r,
    };
    let (umf, lmf, droop_heights) = if category.is_droop() {
        let (u, l, h) = droop_params(
            &reduced,
            &overlap,
            category,
            set.lower_bound(),
            set.upper_bound(),
            r,
            cfg.r0,
            cfg.r1,
        )?;
        (u, l, Some(h))
    } else {
        let (u, l) = shoulder_interior_params(&reduced, &overlap, category, r)?;
        (u, l, None)
    };
    let mf = It2MembershipFunction {
        umf,
        lmf,
        category,
        lower_bound: set.lower_bound(),
        upper_bound: set.upper_bound(),
        droop_heights,
    };
    let trace = GroupTrace {
        category,
        overlap,
        intercept_fractions: axis_intercept_fractions(
            set.intervals(),
            set.lower_bound(),
            set.upper_bound(),
        ),
        reduced,
        r,
    };
    Ok((mf, trace))
}

/// Interval type-2 membership function for a set of nonnegative intervals.
pub fn synthesize(set: &IntervalSet, cfg: &SynthesisConfig) -> Result<It2MembershipFunction> {
    synthesize_group(set, cfg).map(|(mf, _)| mf)
}

/// Membership function for intervals of any sign.
///
/// All-nonpositive sets are mirrored about zero, synthesized, and mirrored
/// back. Mixed sets are split at zero (straddlers contribute to both
/// groups); the composite takes its left tail from the nonpositive group,
/// its right tail from the nonnegative group, and unit membership between
/// the two attach points.
pub fn synthesize_signed(set: &IntervalSet, cfg: &SynthesisConfig) -> Result<It2MembershipFunction> {
    synthesize_traced(set, cfg).map(|t| t.mf)
}

/// Like [`synthesize_signed`], also returning the per-group traces.
pub fn synthesize_traced(set: &IntervalSet, cfg: &SynthesisConfig) -> Result<SynthesisTrace> {
    let ivs = set.intervals();
    let any_negative = ivs.iter().any(|iv| iv.lo() < 0.0);
    let any_positive = ivs.iter().any(|iv| iv.hi() > 0.0);

    if !any_negative {
        let (mf, trace) = synthesize_group(set, cfg)?;
        return Ok(SynthesisTrace {
            mf,
            nonnegative: Some(trace),
            nonpositive: None,
        });
    }
    if !any_positive {
        let (mf, trace) = synthesize_group(&set.mirror(), cfg)?;
        return Ok(SynthesisTrace {
            mf: mf.mirror(),
            nonnegative: None,
            nonpositive: Some(trace.mirror()),
        });
    }

    // Zero is a split point here, not a natural bound of either group.
    let positive: Vec<Interval> = ivs
        .iter()
        .filter(|iv| iv.hi() > 0.0 || iv.lo() >= 0.0)
        .map(|iv| Interval::from_ordered(iv.lo().max(0.0), iv.hi()))
        .collect();
    let negative: Vec<Interval> = ivs
        .iter()
        .filter(|iv| iv.lo() < 0.0 || iv.hi() <= 0.0)
        .map(|iv| Interval::from_ordered(iv.lo(), iv.hi().min(0.0)))
        .collect();
    let pos_set = IntervalSet::new(positive, None, set.upper_bound())?;
    let neg_set = IntervalSet::new(negative, set.lower_bound(), None)?;

    let (pos_mf, pos_trace) = synthesize_group(&pos_set, cfg)?;
    let (neg_mirrored, neg_trace) = synthesize_group(&neg_set.mirror(), cfg)?;
    let neg_mf = neg_mirrored.mirror();

    let join = |left: &TrapezoidSpec, right: &TrapezoidSpec| TrapezoidSpec {
        left_bottom: left.left_bottom,
        left_top: left.left_top,
        right_top: right.right_top,
        right_bottom: right.right_bottom,
        clip_lo: left.clip_lo,
        clip_hi: right.clip_hi,
        height: 1.0,
    };
    let neg_h = neg_mf.droop_heights.unwrap_or_default();
    let pos_h = pos_mf.droop_heights.unwrap_or_default();
    let heights = DroopHeights {
        upper_left: neg_h.upper_left,
        lower_left: neg_h.lower_left,
        upper_right: pos_h.upper_right,
        lower_right: pos_h.lower_right,
    };
    let any_droop = heights != DroopHeights::default();
    let mf = It2MembershipFunction {
        umf: join(&neg_mf.umf, &pos_mf.umf),
        lmf: join(&neg_mf.lmf, &pos_mf.lmf),
        category: FouCategory::SignedComposite,
        lower_bound: set.lower_bound(),
        upper_bound: set.upper_bound(),
        droop_heights: any_droop.then_some(heights),
    };
    Ok(SynthesisTrace {
        mf,
        nonnegative: Some(pos_trace),
        nonpositive: Some(neg_trace.mirror()),
    })
}

/// Expands a single expert's minimum and maximum ranges into `pairs`
/// intervals `[u, v]`, `u` uniform on `min_iv` and `v` uniform on `max_iv`.
pub fn expand_single_sme(
    min_iv: Interval,
    max_iv: Interval,
    pairs: usize,
    seed: u64,
) -> Result<IntervalSet> {
    if min_iv.hi() > max_iv.lo() {
        return Err(Error::OverlappingSmeRanges {
            min_lo: min_iv.lo(),
            min_hi: min_iv.hi(),
            max_lo: max_iv.lo(),
            max_hi: max_iv.hi(),
        });
    }
    if pairs == 0 {
        return Err(Error::InvalidArgument("pair count must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |iv: Interval| {
        let t: f64 = rng.random();
        // t ∈ [0, 1) keeps the draw inside iv
        (iv.lo() + t * iv.width()).min(iv.hi())
    };
    let intervals = (0..pairs)
        .map(|_| {
            let u = draw(min_iv);
            let v = draw(max_iv);
            Interval::from_ordered(u, v)
        })
        .collect();
    IntervalSet::unbounded(intervals)
}
