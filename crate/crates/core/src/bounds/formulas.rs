//! The boundary estimates as pure functions of `|z - w|`, `d(z)` and `d(w)`.
//!
//! Lower bounds may come out negative; callers compare against
//! `max(0, bound)` since distances are nonnegative.

use crate::distances::atanh_split;
use crate::{Error, Result};

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::DegenerateInput(format!("{name} must be positive and finite, got {v}")))
    }
}

fn nonnegative(name: &str, v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::DegenerateInput(format!("{name} must be nonnegative and finite, got {v}")))
    }
}

/// `½ log(d_z / d_w)`: a lower bound for `c_D` on convex domains, from a
/// supporting half-space at the boundary point nearest to `w`.
pub fn bound_support_lower(dz: f64, dw: f64) -> Result<f64> {
    positive("d_z", dz)?;
    positive("d_w", dw)?;
    Ok(0.5 * (dz / dw).ln())
}

/// `|z - w| log(d_z / d_w) / (d_z - d_w)`, or `|z - w| / d_w` when the two
/// distances agree: the integral of `1/d` along the segment with `d`
/// interpolated linearly, an upper bound for `l_D` on convex domains.
pub fn bound_convex_upper(dist: f64, dz: f64, dw: f64) -> Result<f64> {
    nonnegative("|z - w|", dist)?;
    positive("d_z", dz)?;
    positive("d_w", dw)?;
    // symmetric in d_z, d_w; log(1 + x)/x with x = (big - small)/small ≥ 0
    // stays accurate as x → 0 and never nears the log's pole
    let (small, big) = (dz.min(dw), dz.max(dw));
    let x = (big - small) / small;
    let factor = if x == 0.0 { 1.0 } else { x.ln_1p() / x };
    Ok(dist * factor / small)
}

/// `¼ log(d_z / (4 d_w))`: the lower bound for `c_D` on `C`-convex domains.
pub fn bound_koebe_lower(dz: f64, dw: f64) -> Result<f64> {
    positive("d_z", dz)?;
    positive("d_w", dw)?;
    Ok(0.25 * (dz / (4.0 * dw)).ln())
}

/// `s + ½ log d_w`, bounded as `w` approaches a Dini-smooth boundary point.
pub fn envelope_residual(s: f64, dw: f64) -> f64 {
    s + 0.5 * dw.ln()
}

fn sandwich_args(dist: f64, dz: f64, dw: f64, c: f64) -> Result<f64> {
    nonnegative("|z - w|", dist)?;
    positive("d_z", dz)?;
    positive("d_w", dw)?;
    if !(c >= 1.0) || !c.is_finite() {
        return Err(Error::DegenerateInput(format!("sandwich constant must be at least 1, got {c}")));
    }
    Ok(dz * dw)
}

/// `m`-scale bounds `(lower, upper)` with
/// `lower ≤ tanh c_D(z, w) ≤ tanh l_D(z, w) ≤ upper`:
/// `lower = |z-w| / sqrt(c d_z d_w + |z-w|²)`,
/// `upper = |z-w| / sqrt(d_z d_w / c + |z-w|²)`.
pub fn sandwich(dist: f64, dz: f64, dw: f64, c: f64) -> Result<(f64, f64)> {
    let p = sandwich_args(dist, dz, dw, c)?;
    let a2 = dist * dist;
    Ok((dist / (c * p + a2).sqrt(), dist / (p / c + a2).sqrt()))
}

/// The same bounds in the `tanh⁻¹` scale, with `1 - m²` taken exactly so that
/// they keep relative precision near the boundary.
pub fn sandwich_atanh(dist: f64, dz: f64, dw: f64, c: f64) -> Result<(f64, f64)> {
    let p = sandwich_args(dist, dz, dw, c)?;
    let a2 = dist * dist;
    let side = |q: f64| atanh_split(dist / (q + a2).sqrt(), q / (q + a2));
    Ok((side(c * p), side(p / c)))
}

/// The logarithmic form, halved to the distance scale:
/// `½ log(1 + s/c + s²/c) ≤ c_D ≤ l_D ≤ ½ log(1 + c s + c s²)` with
/// `s = |z-w| / sqrt(d_z d_w)`.
pub fn sandwich_log(dist: f64, dz: f64, dw: f64, c: f64) -> Result<(f64, f64)> {
    let p = sandwich_args(dist, dz, dw, c)?;
    let s = dist / p.sqrt();
    Ok((0.5 * (s / c + s * s / c).ln_1p(), 0.5 * (c * s + c * s * s).ln_1p()))
}

/// Constants for which the `tanh` form with constant `c` implies the log
/// form: `(lower, upper)`.
pub fn log_constants(c: f64) -> (f64, f64) {
    (c, 4.0 * c)
}

/// Constants for which the log form with constant `c` implies the `tanh`
/// form: `(lower, upper)`.
pub fn tanh_constants(c: f64) -> (f64, f64) {
    (4.0 * c * c, c * c)
}
