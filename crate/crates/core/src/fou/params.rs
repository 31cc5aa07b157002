use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;

use super::wpm::wpm_unit;
use super::{DroopHeights, FouCategory, OverlapResult, ReducedSets, TrapezoidSpec};

fn check_r(r: f64) -> Result<()> {
    if r.is_nan() || r < 1.0 {
        return Err(Error::InvalidExponent(r));
    }
    Ok(())
}

fn sorted(values: impl Iterator<Item = f64>) -> Vec<f64> {
    // a fixed summation order keeps the means independent of input order
    let mut v: Vec<f64> = values.collect();
    v.sort_by(f64::total_cmp);
    v
}

/// `(upper, lower)` left-bottom abscissae from the reduced left set.
fn left_tail(left: &[Interval], r: f64) -> Result<(f64, f64)> {
    let lows = sorted(left.iter().map(Interval::lo));
    Ok((wpm_unit(&lows, 2.0 - r)?, wpm_unit(&lows, r)?))
}

/// `(upper, lower)` right-bottom abscissae from the reduced right set.
fn right_tail(right: &[Interval], r: f64) -> Result<(f64, f64)> {
    let highs = sorted(right.iter().map(Interval::hi));
    Ok((wpm_unit(&highs, r)?, wpm_unit(&highs, 2.0 - r)?))
}

/// Upper and lower trapezoids for shoulder and interior footprints.
///
/// Tails aggregate the reduced endpoints with exponent `r` for the wider
/// curve and `2 - r` for the narrower one, so the upper curve dominates the
/// lower for every `r ≥ 1` and the two coincide at `r = 1`. Shoulders put
/// the plateau edge on the overlap endpoint, which equals the domain bound.
pub fn shoulder_interior_params(
    reduced: &ReducedSets,
    overlap: &OverlapResult,
    category: FouCategory,
    r: f64,
) -> Result<(TrapezoidSpec, TrapezoidSpec)> {
    check_r(r)?;
    let left_top = overlap.left_attach();
    let right_top = overlap.right_attach();
    let (umf_lb, lmf_lb) = match category {
        FouCategory::LeftShoulder => (left_top, left_top),
        FouCategory::RightShoulder | FouCategory::Interior => left_tail(&reduced.left, r)?,
        other => {
            return Err(Error::InvalidArgument(format!(
                "{other:?} is not a shoulder or interior category"
            )))
        }
    };
    let (umf_rb, lmf_rb) = match category {
        FouCategory::RightShoulder => (right_top, right_top),
        _ => right_tail(&reduced.right, r)?,
    };
    Ok((
        TrapezoidSpec::new(umf_lb, left_top, right_top, umf_rb),
        TrapezoidSpec::new(lmf_lb, left_top, right_top, lmf_rb),
    ))
}

/// Rising edge through `(bound, boundary)` and `(top, 1)`, clipped at
/// `bound`. Returns `(left_bottom, left_top)`; a boundary height of 1 gives a
/// flat edge, represented by moving the plateau out to the bound.
fn drooping_left_edge(bound: f64, top: f64, boundary: f64) -> (f64, f64) {
    if boundary >= 1.0 || top <= bound {
        return (bound, bound);
    }
    let slope = (1.0 - boundary) / (top - bound);
    (bound - boundary / slope, top)
}

/// Falling edge through `(top, 1)` and `(bound, boundary)`, clipped at
/// `bound`. Returns `(right_top, right_bottom)`.
fn drooping_right_edge(bound: f64, top: f64, boundary: f64) -> (f64, f64) {
    if boundary >= 1.0 || top >= bound {
        return (bound, bound);
    }
    let slope = (boundary - 1.0) / (bound - top);
    (top, bound - boundary / slope)
}

fn bound_for(side: &str, bound: Option<f64>) -> Result<f64> {
    bound.ok_or_else(|| Error::InvalidArgument(format!("a drooping {side} tail needs a finite {side} bound")))
}

/// Upper and lower trapezoids for droop footprints, plus the boundary
/// heights.
///
/// On a drooping side the upper curve meets the bound at the fraction of
/// reduced intervals that end on it; the lower curve meets it at the power
/// mean of that fraction and zero (exponent `r0` on the left, `r1` on the
/// right). Both edges pass through the plateau corner at membership 1. A
/// side that does not droop uses the ordinary tail aggregation with `r`.
#[allow(clippy::too_many_arguments)]
pub fn droop_params(
    reduced: &ReducedSets,
    overlap: &OverlapResult,
    category: FouCategory,
    lower_bound: Option<f64>,
    upper_bound: Option<f64>,
    r: f64,
    r0: f64,
    r1: f64,
) -> Result<(TrapezoidSpec, TrapezoidSpec, DroopHeights)> {
    check_r(r)?;
    for e in [r0, r1] {
        if e.is_nan() {
            return Err(Error::InvalidExponent(e));
        }
    }
    let (left_droops, right_droops) = match category {
        FouCategory::LeftDroop => (true, false),
        FouCategory::RightDroop => (false, true),
        FouCategory::InteriorDroop => (true, true),
        other => {
            return Err(Error::InvalidArgument(format!(
                "{other:?} is not a droop category"
            )))
        }
    };
    let attach_l = overlap.left_attach();
    let attach_r = overlap.right_attach();
    let mut heights = DroopHeights::default();
    let mut umf = TrapezoidSpec::new(0.0, attach_l, attach_r, 0.0);
    let mut lmf = umf;

    if left_droops {
        let x_l = bound_for("left", lower_bound)?;
        let on_bound = reduced.left.iter().filter(|iv| iv.lo() == x_l).count();
        let upper = on_bound as f64 / reduced.left.len() as f64;
        let lower = wpm_unit(&[upper, 0.0], r0)?;
        heights.upper_left = Some(upper);
        heights.lower_left = Some(lower);
        (umf.left_bottom, umf.left_top) = drooping_left_edge(x_l, attach_l, upper);
        (lmf.left_bottom, lmf.left_top) = drooping_left_edge(x_l, attach_l, lower);
        umf.clip_lo = x_l;
        lmf.clip_lo = x_l;
    } else {
        let (u, l) = left_tail(&reduced.left, r)?;
        umf.left_bottom = u;
        umf.clip_lo = u;
        lmf.left_bottom = l;
        lmf.clip_lo = l;
    }

    if right_droops {
        let x_r = bound_for("right", upper_bound)?;
        let on_bound = reduced.right.iter().filter(|iv| iv.hi() == x_r).count();
        let upper = on_bound as f64 / reduced.right.len() as f64;
        let lower = wpm_unit(&[upper, 0.0], r1)?;
        heights.upper_right = Some(upper);
        heights.lower_right = Some(lower);
        (umf.right_top, umf.right_bottom) = drooping_right_edge(x_r, attach_r, upper);
        (lmf.right_top, lmf.right_bottom) = drooping_right_edge(x_r, attach_r, lower);
        umf.clip_hi = x_r;
        lmf.clip_hi = x_r;
    } else {
        let (u, l) = right_tail(&reduced.right, r)?;
        umf.right_bottom = u;
        umf.clip_hi = u;
        lmf.right_bottom = l;
        lmf.clip_hi = l;
    }

    Ok((umf, lmf, heights))
}

/// A sloped trapezoid edge as `y = slope·x + intercept`, with its root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailLine {
    pub slope: f64,
    pub intercept: f64,
    pub root: f64,
}

impl TailLine {
    fn through_root(root: f64, slope: f64) -> TailLine {
        TailLine {
            slope,
            intercept: -slope * root,
            root,
        }
    }
}

/// Edge lines of the upper and lower curves; `None` for vertical edges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DroopGeometry {
    pub upper_left: Option<TailLine>,
    pub upper_right: Option<TailLine>,
    pub lower_left: Option<TailLine>,
    pub lower_right: Option<TailLine>,
}

impl DroopGeometry {
    pub fn of(umf: &TrapezoidSpec, lmf: &TrapezoidSpec) -> DroopGeometry {
        let left = |t: &TrapezoidSpec| t.left_slope().map(|s| TailLine::through_root(t.left_bottom, s));
        let right =
            |t: &TrapezoidSpec| t.right_slope().map(|s| TailLine::through_root(t.right_bottom, s));
        DroopGeometry {
            upper_left: left(umf),
            upper_right: right(umf),
            lower_left: left(lmf),
            lower_right: right(lmf),
        }
    }
}
