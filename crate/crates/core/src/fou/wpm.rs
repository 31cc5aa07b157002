//! Weighted power mean in an overflow-safe form: inputs are scaled by their
//! maximum (positive exponents) or minimum (negative exponents) before
//! exponentiation.
//!
//! The exponent runs over the extended reals: `r = -∞` gives the minimum,
//! `r = -1` the harmonic mean, `r = 0` the geometric mean, `r = 1` the
//! arithmetic mean, `r = 2` the root mean square and `r = +∞` the maximum.
//! For strictly positive inputs the mean is nondecreasing in `r`.

use crate::error::{Error, Result};

/// Weighted power mean of nonnegative `x` with positive weights `w`.
pub fn wpm(x: &[f64], w: &[f64], r: f64) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::InvalidMeanInput("empty input".into()));
    }
    if x.len() != w.len() {
        return Err(Error::InvalidMeanInput(format!(
            "{} values but {} weights",
            x.len(),
            w.len()
        )));
    }
    if let Some(v) = x.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(Error::InvalidMeanInput(format!(
            "values must be finite and nonnegative, got {v}"
        )));
    }
    if let Some(v) = w.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(Error::InvalidMeanInput(format!(
            "weights must be finite and positive, got {v}"
        )));
    }
    if r.is_nan() {
        return Err(Error::InvalidExponent(r));
    }

    let x_min = x.iter().copied().fold(f64::INFINITY, f64::min);
    let x_max = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if r == f64::INFINITY {
        return Ok(x_max);
    }
    if r == f64::NEG_INFINITY || x_min == x_max {
        return Ok(x_min);
    }
    if r <= 0.0 && x_min == 0.0 {
        return Ok(0.0);
    }

    let total: f64 = w.iter().sum();
    let mean = if r == 1.0 {
        x.iter().zip(w).map(|(xi, wi)| wi * xi).sum::<f64>() / total
    } else if r == 0.0 {
        let log_mean: f64 = x
            .iter()
            .zip(w)
            .map(|(xi, wi)| wi / total * xi.ln())
            .sum();
        log_mean.exp()
    } else {
        // Scale by the extreme that keeps every ratio^r in [0, 1], and carry
        // the sum as an offset from 1 so exponents near zero keep precision.
        let pivot = if r > 0.0 { x_max } else { x_min };
        let offset: f64 = x
            .iter()
            .zip(w)
            .map(|(xi, wi)| wi * (r * (xi / pivot).ln()).exp_m1())
            .sum::<f64>()
            / total;
        pivot * (offset.ln_1p() / r).exp()
    };
    // rounding must not push the mean outside the range of its inputs
    Ok(mean.clamp(x_min, x_max))
}

/// Weighted power mean with unit weights.
pub fn wpm_unit(x: &[f64], r: f64) -> Result<f64> {
    wpm(x, &vec![1.0; x.len()], r)
}
