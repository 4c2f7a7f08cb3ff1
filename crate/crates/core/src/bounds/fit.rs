//! Smallest constants that make a sampled family of inequalities hold.

use crate::{Error, Result};

/// Largest constant tried before the family is declared unbounded.
pub const MAX_CONSTANT: f64 = 1e6;

/// Result of a constant fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fit {
    pub constant: f64,
    /// Smallest margin over the samples at `constant`.
    pub worst_margin: f64,
}

/// Bisection for the smallest `c ≥ floor` with `margin(c)_i ≥ -tol` for
/// every sample. `margins(c)` must be nondecreasing in `c` componentwise.
/// Fails with `NoFiniteConstant` when violations persist at
/// [`MAX_CONSTANT`].
pub fn fit_min_constant<F>(floor: f64, tol: f64, margins: F) -> Result<Fit>
where
    F: Fn(f64) -> Result<Vec<f64>>,
{
    fit_min_constant_to(floor, tol, 1e-13, margins)
}

/// [`fit_min_constant`] stopping once the bracket is within `rel` of its
/// upper end. The answer is always the upper end, so a coarse `rel` rounds
/// the constant up, which leaves room for sampling noise on fresh points.
pub fn fit_min_constant_to<F>(floor: f64, tol: f64, rel: f64, margins: F) -> Result<Fit>
where
    F: Fn(f64) -> Result<Vec<f64>>,
{
    let worst = |c: f64| -> Result<f64> {
        let m = margins(c)?;
        // NaN margins count as violations
        Ok(m.iter().fold(f64::INFINITY, |a, &b| if b.is_nan() { f64::NEG_INFINITY } else { a.min(b) }))
    };
    let ok = |w: f64| w >= -tol;
    let w0 = worst(floor)?;
    if ok(w0) {
        return Ok(Fit { constant: floor, worst_margin: w0 });
    }
    let mut lo = floor;
    let mut hi = floor.max(0.5) * 2.0;
    loop {
        if hi >= MAX_CONSTANT {
            let w = worst(MAX_CONSTANT)?;
            if !ok(w) {
                return Err(Error::NoFiniteConstant(format!("violations persist at c = {MAX_CONSTANT:e} (worst margin {w:e})")));
            }
            hi = MAX_CONSTANT;
            break;
        }
        if ok(worst(hi)?) {
            break;
        }
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        if hi - lo <= rel * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if ok(worst(mid)?) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Fit { constant: hi, worst_margin: worst(hi)? })
}

/// Least-squares line `y ≈ slope·x + intercept` and the root-mean-square
/// residual.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs.iter().zip(ys).map(|(x, y)| (y - slope * x - intercept).powi(2)).sum();
    (slope, intercept, (rss / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_the_threshold() {
        // c ≥ x_i for x = 0.3, 2.5, 7.25
        let xs = [0.3, 2.5, 7.25];
        let f = fit_min_constant(0.0, 0.0, |c| Ok(xs.iter().map(|x| c - x).collect())).unwrap();
        assert!((f.constant - 7.25).abs() < 1e-9 && f.worst_margin >= 0.0);
    }

    #[test]
    fn floor_is_returned_when_it_suffices() {
        let f = fit_min_constant(1.0, 0.0, |c| Ok(vec![c - 0.5])).unwrap();
        assert_eq!(f.constant, 1.0);
    }

    #[test]
    fn unbounded_family_is_reported() {
        let e = fit_min_constant(0.0, 0.0, |c| Ok(vec![c - 1e7])).unwrap_err();
        assert!(matches!(e, Error::NoFiniteConstant(_)));
        let e = fit_min_constant(0.0, 0.0, |_| Ok(vec![f64::NAN])).unwrap_err();
        assert!(matches!(e, Error::NoFiniteConstant(_)));
    }

    #[test]
    fn line_fit() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys: Vec<f64> = xs.iter().map(|x| 0.5 * x + 1.0).collect();
        let (s, i, r) = linear_fit(&xs, &ys);
        assert!((s - 0.5).abs() < 1e-15 && (i - 1.0).abs() < 1e-15 && r < 1e-15);
    }
}
