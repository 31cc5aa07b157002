//! Bayes' theorem over interval type-2 membership functions.
//!
//! Each input is discretized into alpha-cuts of its upper and lower curves.
//! The numerator `P(E|H)·P(H)` is the cut-wise interval product. Before
//! dividing, every evidence cut that reaches below the right end of the
//! numerator cut is replaced by `[max(PE_r, E_ℓ), max(PE_r, E_r)]`, which
//! enforces `P(E) ≥ P(E|H)·P(H)` while changing the evidence as little as
//! possible. Posterior cuts then stay inside `[0, 1]`; where the replacement
//! fired, their right endpoint is exactly 1.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fou::{It2MembershipFunction, TrapezoidSpec};
use crate::interval::{iv_div, iv_mul, Interval};

/// Default number of alpha levels (`0, 0.01, …, 1`).
pub const DEFAULT_ALPHA_LEVELS: usize = 101;

/// Per-level alpha-cuts of an upper and a lower membership curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaCutFou {
    alphas: Vec<f64>,
    umf_cuts: Vec<Interval>,
    lmf_cuts: Vec<Interval>,
}

impl AlphaCutFou {
    /// Validates grid shape, nesting of each cut sequence, and containment
    /// of every lower cut in the matching upper cut.
    pub fn new(alphas: Vec<f64>, umf_cuts: Vec<Interval>, lmf_cuts: Vec<Interval>) -> Result<Self> {
        if alphas.is_empty() || alphas.len() != umf_cuts.len() || alphas.len() != lmf_cuts.len() {
            return Err(Error::InvalidArgument(format!(
                "alpha grid of {} levels with {} upper and {} lower cuts",
                alphas.len(),
                umf_cuts.len(),
                lmf_cuts.len()
            )));
        }
        if alphas.iter().any(|a| !(0.0..=1.0).contains(a)) || alphas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "alpha levels must be strictly ascending in [0, 1]".into(),
            ));
        }
        for (name, cuts) in [("upper", &umf_cuts), ("lower", &lmf_cuts)] {
            if let Some(k) = cuts.windows(2).position(|w| !w[1].is_subset_of(&w[0])) {
                return Err(Error::InvalidArgument(format!(
                    "{name} cuts are not nested between alpha {} and {}",
                    alphas[k],
                    alphas[k + 1]
                )));
            }
        }
        if let Some(k) = (0..alphas.len()).find(|&k| !lmf_cuts[k].is_subset_of(&umf_cuts[k])) {
            return Err(Error::InvalidArgument(format!(
                "lower cut exceeds upper cut at alpha {}",
                alphas[k]
            )));
        }
        Ok(AlphaCutFou {
            alphas,
            umf_cuts,
            lmf_cuts,
        })
    }

    /// Zero-width cuts at `p` on every level.
    pub fn crisp(p: f64, levels: usize) -> Result<Self> {
        let alphas = alpha_grid(levels)?;
        let cut = Interval::point(p)?;
        AlphaCutFou::new(alphas, vec![cut; levels], vec![cut; levels])
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn umf_cuts(&self) -> &[Interval] {
        &self.umf_cuts
    }

    pub fn lmf_cuts(&self) -> &[Interval] {
        &self.lmf_cuts
    }

    pub fn levels(&self) -> usize {
        self.alphas.len()
    }

    fn within(&self, lo: f64, hi: f64) -> bool {
        self.umf_cuts
            .iter()
            .chain(&self.lmf_cuts)
            .all(|c| c.lo() >= lo && c.hi() <= hi)
    }
}

/// `levels` uniform alpha levels from 0 to 1 inclusive.
pub fn alpha_grid(levels: usize) -> Result<Vec<f64>> {
    if levels < 2 {
        return Err(Error::InvalidArgument(format!(
            "at least 2 alpha levels are needed, got {levels}"
        )));
    }
    let last = (levels - 1) as f64;
    Ok((0..levels).map(|k| k as f64 / last).collect())
}

fn trapezoid_cut(t: &TrapezoidSpec, alpha: f64) -> Result<Interval> {
    if t.height < 1.0 {
        return Err(Error::NonNormal(t.height));
    }
    if alpha == 0.0 {
        return Ok(Interval::from_ordered(t.clip_lo, t.clip_hi));
    }
    // Measured from the plateau corners so the cuts are exactly nested.
    let drop = 1.0 - alpha;
    let lo = (t.left_top - drop * (t.left_top - t.left_bottom)).max(t.clip_lo);
    let hi = (t.right_top + drop * (t.right_bottom - t.right_top)).min(t.clip_hi);
    Ok(Interval::from_ordered(lo, hi))
}

/// Alpha-cuts of both curves of `mf` on a uniform grid of `levels` levels.
pub fn alpha_cuts(mf: &It2MembershipFunction, levels: usize) -> Result<AlphaCutFou> {
    let alphas = alpha_grid(levels)?;
    let cuts = |t: &TrapezoidSpec| {
        alphas
            .iter()
            .map(|&a| trapezoid_cut(t, a))
            .collect::<Result<Vec<_>>>()
    };
    let umf_cuts = cuts(&mf.umf)?;
    let lmf_cuts = cuts(&mf.lmf)?;
    AlphaCutFou::new(alphas, umf_cuts, lmf_cuts)
}

/// Cut-wise interval product of two probability footprints.
pub fn product_fou(a: &AlphaCutFou, b: &AlphaCutFou) -> Result<AlphaCutFou> {
    if a.alphas != b.alphas {
        return Err(Error::GridMismatch);
    }
    let mul = |x: &[Interval], y: &[Interval]| {
        x.iter()
            .zip(y)
            .map(|(p, q)| iv_mul(*p, *q))
            .collect::<Result<Vec<_>>>()
    };
    AlphaCutFou::new(
        a.alphas.clone(),
        mul(&a.umf_cuts, &b.umf_cuts)?,
        mul(&a.lmf_cuts, &b.lmf_cuts)?,
    )
}

/// Evidence cut after enforcing `P(E) ≥ P(E|H)·P(H)` against the numerator
/// cut, and whether the replacement fired.
pub fn adjust_denominator(prod_cut: Interval, ev_cut: Interval) -> (Interval, bool) {
    let pe_r = prod_cut.hi();
    if ev_cut.lo() < pe_r {
        (
            Interval::from_ordered(pe_r.max(ev_cut.lo()), pe_r.max(ev_cut.hi())),
            true,
        )
    } else {
        (ev_cut, false)
    }
}

/// The three probability footprints entering Bayes' theorem.
#[derive(Debug, Clone)]
pub struct BayesInputs {
    pub likelihood: AlphaCutFou,
    pub prior: AlphaCutFou,
    pub evidence: AlphaCutFou,
}

impl BayesInputs {
    pub fn new(likelihood: AlphaCutFou, prior: AlphaCutFou, evidence: AlphaCutFou) -> Result<Self> {
        if likelihood.alphas != prior.alphas || likelihood.alphas != evidence.alphas {
            return Err(Error::GridMismatch);
        }
        for (name, f) in [("likelihood", &likelihood), ("prior", &prior), ("evidence", &evidence)] {
            if !f.within(0.0, 1.0) {
                return Err(Error::InvalidArgument(format!(
                    "{name} cuts must lie within [0, 1]"
                )));
            }
        }
        Ok(BayesInputs {
            likelihood,
            prior,
            evidence,
        })
    }

    /// Cuts `levels` alpha levels from three membership functions.
    pub fn from_mfs(
        likelihood: &It2MembershipFunction,
        prior: &It2MembershipFunction,
        evidence: &It2MembershipFunction,
        levels: usize,
    ) -> Result<Self> {
        BayesInputs::new(
            alpha_cuts(likelihood, levels)?,
            alpha_cuts(prior, levels)?,
            alpha_cuts(evidence, levels)?,
        )
    }
}

/// Posterior footprint with per-level flags recording where the evidence
/// replacement fired, separately for the upper and lower channels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Posterior {
    pub cuts: AlphaCutFou,
    pub umf_adjusted: Vec<bool>,
    pub lmf_adjusted: Vec<bool>,
}

fn posterior_cut(num: Interval, ev: Interval, alpha: f64) -> Result<(Interval, bool)> {
    let (den, adjusted) = adjust_denominator(num, ev);
    if den.lo() <= 0.0 {
        // only reachable with a zero numerator
        if den.hi() > 0.0 {
            return Ok((Interval::from_ordered(0.0, 0.0), adjusted));
        }
        return Err(Error::DegenerateInputs { alpha });
    }
    let q = iv_div(num, den)?;
    let hi = q.hi().min(1.0);
    Ok((Interval::from_ordered(q.lo().min(hi), hi), adjusted))
}

/// Posterior `P(H|E)` footprint. Upper and lower channels are adjusted and
/// divided independently.
pub fn posterior_fou(inputs: &BayesInputs) -> Result<Posterior> {
    let numerator = product_fou(&inputs.likelihood, &inputs.prior)?;
    let alphas = numerator.alphas.clone();
    let channel = |num: &[Interval], ev: &[Interval]| -> Result<(Vec<Interval>, Vec<bool>)> {
        num.iter()
            .zip(ev)
            .zip(&alphas)
            .map(|((n, e), &a)| posterior_cut(*n, *e, a))
            .collect::<Result<Vec<_>>>()
            .map(|v| v.into_iter().unzip())
    };
    let (umf_cuts, umf_adjusted) = channel(&numerator.umf_cuts, &inputs.evidence.umf_cuts)?;
    let (lmf_cuts, lmf_adjusted) = channel(&numerator.lmf_cuts, &inputs.evidence.lmf_cuts)?;
    Ok(Posterior {
        cuts: AlphaCutFou::new(alphas, umf_cuts, lmf_cuts)?,
        umf_adjusted,
        lmf_adjusted,
    })
}

/// Upper and lower membership sampled on a shared ascending `x` grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampledFou {
    pub x: Vec<f64>,
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
}

impl SampledFou {
    pub fn new(x: Vec<f64>, upper: Vec<f64>, lower: Vec<f64>) -> Result<Self> {
        if x.is_empty() || x.len() != upper.len() || x.len() != lower.len() {
            return Err(Error::InvalidArgument(format!(
                "sample lengths differ: {} x, {} upper, {} lower",
                x.len(),
                upper.len(),
                lower.len()
            )));
        }
        if x.iter().any(|v| !v.is_finite()) || x.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument("x grid must be finite and ascending".into()));
        }
        if let Some(i) = (0..x.len()).find(|&i| !(upper[i] >= lower[i] && lower[i] >= 0.0 && upper[i] <= 1.0)) {
            return Err(Error::InvalidArgument(format!(
                "need 1 >= upper >= lower >= 0, got upper {} lower {} at x = {}",
                upper[i], lower[i], x[i]
            )));
        }
        Ok(SampledFou { x, upper, lower })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// `n` uniformly spaced points on `[lo, hi]`; one point when the range is
/// degenerate.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n <= 1 || lo == hi {
        return vec![lo];
    }
    let last = (n - 1) as f64;
    let width = hi - lo;
    (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + width * (i as f64 / last) })
        .collect()
}

/// Largest alpha whose cut contains `x`, interpolated linearly towards the
/// next level by where `x` falls between the two cut edges.
fn membership_at(alphas: &[f64], cuts: &[Interval], x: f64) -> f64 {
    let inside = cuts.partition_point(|c| c.contains(x));
    if inside == 0 {
        return 0.0;
    }
    let k = inside - 1;
    if k + 1 == cuts.len() {
        return alphas[k];
    }
    let (outer, inner) = (cuts[k], cuts[k + 1]);
    let t = if x < inner.lo() {
        (x - outer.lo()) / (inner.lo() - outer.lo())
    } else {
        (outer.hi() - x) / (outer.hi() - inner.hi())
    };
    alphas[k] + t * (alphas[k + 1] - alphas[k])
}

/// Samples both membership curves of a cut table on a uniform grid over the
/// support of the lowest upper cut.
pub fn fou_from_cuts(cuts: &AlphaCutFou, grid_points: usize) -> Result<SampledFou> {
    if grid_points == 0 {
        return Err(Error::InvalidArgument("grid needs at least one point".into()));
    }
    let support = cuts.umf_cuts[0];
    let x = uniform_grid(support.lo(), support.hi(), grid_points);
    let upper = x
        .iter()
        .map(|&v| membership_at(&cuts.alphas, &cuts.umf_cuts, v))
        .collect();
    let lower = x
        .iter()
        .map(|&v| membership_at(&cuts.alphas, &cuts.lmf_cuts, v))
        .collect();
    SampledFou::new(x, upper, lower)
}
