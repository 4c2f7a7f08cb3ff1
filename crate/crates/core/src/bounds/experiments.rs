//! Sweeps that show how sharp the estimates are: ratios and slopes along
//! sequences approaching the boundary.

use std::f64::consts::SQRT_2;

use crate::bounds::fit::{fit_min_constant, linear_fit};
use crate::bounds::formulas::{bound_convex_upper, bound_koebe_lower};
use crate::bounds::report::{BoundReport, Row, Table};
use crate::distances::{AnnulusModel, DistanceKind, PlanarModel};
use crate::domains::PlanarDomain;
use crate::{Error, Result, C64};

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn unit_interval(name: &str, xs: &[f64]) -> Result<()> {
    if xs.iter().all(|&x| x > 0.0 && x < 1.0) {
        Ok(())
    } else {
        Err(Error::DegenerateInput(format!("{name} must lie in (0, 1)")))
    }
}

/// `l(1, x)` against the convex upper bound `R(1, x)` in the sector
/// `|arg z| < θ`, with columns `theta, x, l, R, ratio`.
pub fn experiment_sector_ratio(theta: f64, xs: &[f64]) -> Result<Table> {
    unit_interval("x", xs)?;
    let dom = PlanarDomain::sector(theta)?;
    let model = PlanarModel::new(dom.clone())?;
    let d1 = dom.boundary_distance(c(1.0))?;
    let mut t = Table::new("sector-ratio", &["theta", "x", "l", "R", "ratio"]);
    for &x in xs {
        let l = model.lempert(c(1.0), c(x))?.hi;
        let r = bound_convex_upper(1.0 - x, d1, dom.boundary_distance(c(x))?)?;
        t.push(vec![theta, x, l, r, l / r]);
    }
    Ok(t)
}

/// `c(-1, -t)` on the slit plane against `-log d(-t)`, with columns
/// `t, c, minus_log_d, quotient, exact, koebe_lower`; `exact` is `¼ log(1/t)`.
pub fn experiment_slit_coefficient(ts: &[f64]) -> Result<Table> {
    unit_interval("t", ts)?;
    let dom = PlanarDomain::SlitPlane;
    let model = PlanarModel::new(dom.clone())?;
    let d1 = dom.boundary_distance(c(-1.0))?;
    let mut tab = Table::new("slit-coefficient", &["t", "c", "minus_log_d", "quotient", "exact", "koebe_lower"]);
    for &t in ts {
        let v = model.caratheodory(c(-1.0), c(-t))?.lo;
        let x = -dom.boundary_distance(c(-t))?.ln();
        tab.push(vec![t, v, x, v / x, 0.25 * (1.0 / t).ln(), bound_koebe_lower(d1, t)?]);
    }
    Ok(tab)
}

/// `c_Δ(z, w) / l_{Δ∩U}(z, w)` for `U = Disc(1, ρ)` as `w = 1 - d` approaches
/// the boundary point 1, with columns `d, c_disc, l_lens, ratio`.
pub fn experiment_ratio_c_over_l(rho: f64, z: C64, ds: &[f64]) -> Result<Table> {
    let lens = PlanarModel::new(PlanarDomain::lens(rho)?)?;
    let disc = PlanarModel::new(PlanarDomain::UnitDisc)?;
    let mut t = Table::new("ratio-c-over-l", &["d", "c_disc", "l_lens", "ratio"]);
    for &d in ds {
        let w = c(1.0 - d);
        if w == z {
            continue;
        }
        let cd = disc.caratheodory(z, w)?.lo;
        let ll = lens.lempert(z, w)?.hi;
        t.push(vec![d, cd, ll, cd / ll]);
    }
    Ok(t)
}

/// Least-squares fit of `s(z0, w_j)` against `-log d(w_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
    /// Columns `d, minus_log_d, s`.
    pub table: Table,
}

/// Minimum number of points a slope fit accepts.
pub const MIN_SLOPE_POINTS: usize = 8;

/// Regression of `s = c`, `l` or `b/√2` along `ws`.
pub fn boundary_slope_regression(model: &PlanarModel, z0: C64, kind: DistanceKind, ws: &[C64]) -> Result<SlopeFit> {
    if ws.len() < MIN_SLOPE_POINTS {
        return Err(Error::InsufficientSamples { needed: MIN_SLOPE_POINTS, got: ws.len() });
    }
    let mut table = Table::new("boundary-slope", &["d", "minus_log_d", "s"]);
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for &w in ws {
        let d = model.domain().boundary_distance(w)?;
        let v = model.distance(kind, z0, w)?.mid();
        let s = if kind == DistanceKind::Bergman { v / SQRT_2 } else { v };
        table.push(vec![d, -d.ln(), s]);
        xs.push(-d.ln());
        ys.push(s);
    }
    let (slope, intercept, residual) = linear_fit(&xs, &ys);
    table.summary.push(crate::bounds::Fitted { name: "slope".into(), value: slope });
    table.summary.push(crate::bounds::Fitted { name: "intercept".into(), value: intercept });
    table.summary.push(crate::bounds::Fitted { name: "residual".into(), value: residual });
    Ok(SlopeFit { slope, intercept, residual, table })
}

/// Points `foot + d·inward` approaching the boundary point nearest to `z0`.
pub fn normal_approach(domain: &PlanarDomain, z0: C64, ds: &[f64]) -> Result<Vec<C64>> {
    let contact = domain.nearest_boundary_contact(z0)?;
    Ok(ds.iter().map(|&d| contact.foot + contact.inward * d).collect())
}

/// `z = r - d_z` on the real axis, `w = (1/r + d_w) e^{iα}` near the inner
/// circle.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductGrid {
    pub z_dists: Vec<f64>,
    pub w_dists: Vec<f64>,
    pub angles: Vec<f64>,
    /// Rotates every pair; the fitted constant must not notice.
    pub rotation: f64,
}

impl Default for ProductGrid {
    fn default() -> Self {
        ProductGrid {
            z_dists: crate::bounds::log_spaced(1e-1, 1e-4, 7),
            w_dists: crate::bounds::log_spaced(1e-1, 1e-4, 7),
            angles: (0..16).map(|k| std::f64::consts::TAU * k as f64 / 16.0).collect(),
            rotation: 0.0,
        }
    }
}

/// One grid point of the product test: `q = (1 - m) / (d(z) d(w))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductPoint {
    pub z: C64,
    pub w: C64,
    pub dz: f64,
    pub dw: f64,
    pub angle: f64,
    pub q: f64,
}

/// Series mode uses `m` directly; otherwise the lower end of the enclosure,
/// which only makes the test stricter.
fn product_points(model: &AnnulusModel, grid: &ProductGrid) -> Result<Vec<ProductPoint>> {
    let r = model.r;
    let dom = PlanarDomain::annulus(r)?;
    let rot = C64::from_polar(1.0, grid.rotation);
    let mut pts = Vec::new();
    for &dz in &grid.z_dists {
        for &dw in &grid.w_dists {
            for &angle in &grid.angles {
                let z = c(r - dz) * rot;
                let w = C64::from_polar(1.0 / r + dw, angle) * rot;
                let m = if model.cara.series_ok() { model.cara.m(z, w) } else { model.caratheodory(z, w)?.lo.tanh() };
                let q = (1.0 - m) / (dom.boundary_distance(z)? * dom.boundary_distance(w)?);
                pts.push(ProductPoint { z, w, dz, dw, angle, q });
            }
        }
    }
    Ok(pts)
}

/// The product grid as a table with columns `d_z, d_w, angle, q`; the
/// summary holds the fitted constant.
pub fn experiment_annulus_product(r: f64, grid: &ProductGrid) -> Result<Table> {
    let model = AnnulusModel::new(r)?;
    let pts = product_points(&model, grid)?;
    let fit = fit_min_constant(0.0, 0.0, |k| Ok(pts.iter().map(|p| k - p.q).collect()))?;
    let mut t = Table::new("annulus-product", &["d_z", "d_w", "angle", "q"]);
    for p in &pts {
        t.push(vec![p.dz, p.dw, p.angle, p.q]);
    }
    t.summary.push(crate::bounds::Fitted { name: "product".into(), value: fit.constant });
    Ok(t)
}

/// Fits the smallest `C` with `m_{A_r}(z, w) ≥ 1 - C d(z) d(w)` over the
/// grid. In series mode the report also checks that the distance adds up
/// along the real segment.
pub fn verify_annulus_product(r: f64, grid: &ProductGrid) -> Result<BoundReport> {
    let model = AnnulusModel::new(r)?;
    let pts = product_points(&model, grid)?;
    let fit = fit_min_constant(0.0, 0.0, |k| Ok(pts.iter().map(|p| k - p.q).collect()))?;
    let rows = pts.iter().map(|p| Row::new("product", &[p.z], &[p.w], p.q, fit.constant, 0.0)).collect();
    let mut rep = BoundReport::new("annulus-product", 0, pts.len(), rows);
    rep.fit("product", fit.constant);
    if model.cara.series_ok() {
        rep.extend(segment_additivity(&model, grid)?);
    } else {
        rep.notes.push("series self-test failed; tested the conservative lower end of the enclosure".into());
    }
    Ok(rep)
}

/// The real segment `[|w|, z]` is a Carathéodory geodesic, so the distance
/// adds up along it: `c(z, |w|) = c(z, t) + c(t, |w|)`.
fn segment_additivity(model: &AnnulusModel, grid: &ProductGrid) -> Result<Vec<Row>> {
    let r = model.r;
    let mut rows = Vec::new();
    for &dz in &grid.z_dists {
        for &dw in &grid.w_dists {
            let (z, w) = (r - dz, 1.0 / r + dw);
            let whole = model.cara.distance(c(z), c(w));
            for s in [0.25, 0.5, 0.75] {
                let t = w * (z / w).powf(s);
                let parts = model.cara.distance(c(z), c(t)) + model.cara.distance(c(t), c(w));
                rows.push(Row::agree("additivity", &[c(z)], &[c(w)], whole, parts, 1e-6));
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::log_spaced;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn sector_documented_values() {
        let t = experiment_sector_ratio(FRAC_PI_2, &[0.1]).unwrap();
        assert!((t.rows[0][2] - 1.151293).abs() < 1e-6);
        // d(x) = x sin θ for a narrow sector
        let dom = PlanarDomain::sector(0.05).unwrap();
        assert!((dom.boundary_distance(c(1e-3)).unwrap() - 1e-3 * 0.05f64.sin()).abs() < 1e-18);
        let t = experiment_sector_ratio(0.05, &log_spaced(1e-1, 1e-6, 6)).unwrap();
        let last = t.last("ratio").unwrap();
        assert!((last - FRAC_PI_4).abs() < 0.02, "{last}");
        assert!(experiment_sector_ratio(0.05, &[1.5]).is_err());
    }

    #[test]
    fn slit_quotient_is_a_quarter() {
        let t = experiment_slit_coefficient(&log_spaced(1e-1, 1e-8, 8)).unwrap();
        for row in &t.rows {
            assert!((row[1] - row[4]).abs() < 1e-12);
            assert!((row[3] - 0.25).abs() < 1e-12);
            assert!(row[1] >= row[5]);
        }
    }

    #[test]
    fn disc_slopes() {
        let disc = PlanarModel::new(PlanarDomain::UnitDisc).unwrap();
        let ws = normal_approach(disc.domain(), c(0.0), &log_spaced(1e-2, 1e-6, 9)).unwrap();
        let fc = boundary_slope_regression(&disc, c(0.0), DistanceKind::Carath, &ws).unwrap();
        assert!((fc.slope - 0.5).abs() < 0.01, "{}", fc.slope);
        let fb = boundary_slope_regression(&disc, c(0.0), DistanceKind::Bergman, &ws).unwrap();
        assert!((fb.slope - fc.slope).abs() < 1e-6);
        let short = boundary_slope_regression(&disc, c(0.0), DistanceKind::Carath, &ws[..5]);
        assert!(matches!(short, Err(Error::InsufficientSamples { needed: 8, got: 5 })));
    }

    #[test]
    fn lens_ratio_stays_below_one() {
        let t = experiment_ratio_c_over_l(1.0, c(0.9), &log_spaced(1e-2, 1e-5, 4)).unwrap();
        for r in t.column("ratio").unwrap() {
            assert!(r <= 1.0 + 1e-6 && r > 0.5, "{r}");
        }
    }

    #[test]
    fn product_constant_is_finite_and_rotation_blind() {
        let grid = ProductGrid { z_dists: vec![1e-2, 1e-3], w_dists: vec![1e-2, 1e-3], angles: vec![0.0, 1.0, 3.0], rotation: 0.0 };
        let a = verify_annulus_product(2.0, &grid).unwrap();
        let b = verify_annulus_product(2.0, &ProductGrid { rotation: 0.7, ..grid }).unwrap();
        let (ca, cb) = (a.fitted("product").unwrap(), b.fitted("product").unwrap());
        assert!(ca.is_finite() && a.passed());
        assert!((ca - cb).abs() < 1e-3 * ca, "{ca} {cb}");
        assert!(a.rows.iter().any(|r| r.case == "additivity"));
    }
}
