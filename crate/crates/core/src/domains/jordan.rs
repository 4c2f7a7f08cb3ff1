//! Domains bounded by a parametrized Jordan curve.

use std::f64::consts::TAU;

use crate::domains::hull::TwoDiscHull;
use crate::{Error, Result, C64};

/// Closed, positively oriented boundary curves parametrized over `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub enum JordanCurve {
    Circle { center: C64, radius: f64 },
    Ellipse { center: C64, a: f64, b: f64 },
    /// `center + scale * (1 + Σ_k a_k cos kθ + b_k sin kθ) e^{iθ}`, `k = 1, 2, …`.
    Starlike { center: C64, scale: f64, harmonics: Vec<(f64, f64)> },
    /// Boundary of a two-disc hull, arclength parametrized.
    Stadium(TwoDiscHull),
    /// Boundary of `UnitDisc ∩ Disc(1, rho)`; has two corners.
    Lens { rho: f64 },
}

/// Boundary regularity metadata. Not verified numerically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Smoothness {
    pub c1: bool,
    pub dini: bool,
    /// Bound on the modulus of continuity of `γ'` if known.
    pub modulus_bound: Option<f64>,
}

fn lens_geometry(rho: f64) -> (f64, f64, f64, f64) {
    let x = 1.0 - rho * rho / 2.0;
    let y = (1.0 - x * x).max(0.0).sqrt();
    let phi = y.atan2(x);
    let psi = y.atan2(x - 1.0);
    // unit arc spans (-phi, phi), small arc spans (psi, 2π - psi)
    (phi, psi, 2.0 * phi, rho * (TAU - 2.0 * psi))
}

impl JordanCurve {
    pub fn ellipse(a: f64, b: f64) -> Self {
        JordanCurve::Ellipse { center: C64::new(0.0, 0.0), a, b }
    }

    pub fn point(&self, t: f64) -> C64 {
        self.eval(t).0
    }

    /// Point and `dγ/dt` at parameter `t`.
    pub fn eval(&self, t: f64) -> (C64, C64) {
        let th = TAU * t;
        let i = C64::new(0.0, 1.0);
        match self {
            JordanCurve::Circle { center, radius } => {
                let e = C64::from_polar(1.0, th);
                (center + e * *radius, e * i * (*radius * TAU))
            }
            JordanCurve::Ellipse { center, a, b } => (
                center + C64::new(a * th.cos(), b * th.sin()),
                C64::new(-a * th.sin(), b * th.cos()) * TAU,
            ),
            JordanCurve::Starlike { center, scale, harmonics } => {
                let mut r = 1.0;
                let mut dr = 0.0;
                for (k, &(ak, bk)) in harmonics.iter().enumerate() {
                    let k = (k + 1) as f64;
                    r += ak * (k * th).cos() + bk * (k * th).sin();
                    dr += k * (-ak * (k * th).sin() + bk * (k * th).cos());
                }
                let e = C64::from_polar(1.0, th);
                (center + e * (scale * r), (e * dr + e * i * r) * (scale * TAU))
            }
            JordanCurve::Stadium(h) => h.boundary_at(t),
            JordanCurve::Lens { rho } => {
                let (phi, psi, l1, l2) = lens_geometry(*rho);
                let total = l1 + l2;
                let s = t.rem_euclid(1.0) * total;
                if s <= l1 {
                    let e = C64::from_polar(1.0, -phi + s);
                    (e, e * i * total)
                } else {
                    let e = C64::from_polar(1.0, psi + (s - l1) / rho);
                    (C64::new(1.0, 0.0) + e * *rho, e * i * total)
                }
            }
        }
    }

    pub fn default_smoothness(&self) -> Smoothness {
        match self {
            JordanCurve::Lens { .. } => Smoothness { c1: false, dini: false, modulus_bound: None },
            _ => Smoothness { c1: true, dini: true, modulus_bound: None },
        }
    }

    pub fn is_convex(&self) -> bool {
        match self {
            JordanCurve::Circle { .. }
            | JordanCurve::Ellipse { .. }
            | JordanCurve::Stadium(_)
            | JordanCurve::Lens { .. } => true,
            JordanCurve::Starlike { .. } => false,
        }
    }

    /// A point known to lie inside (used as a default base point).
    pub fn interior_point(&self) -> C64 {
        match self {
            JordanCurve::Circle { center, .. }
            | JordanCurve::Ellipse { center, .. }
            | JordanCurve::Starlike { center, .. } => *center,
            JordanCurve::Stadium(h) => (h.z + h.w) * 0.5,
            JordanCurve::Lens { rho } => C64::new(1.0 - rho / 2.0, 0.0),
        }
    }

    pub fn sample(&self, n: usize) -> Vec<C64> {
        (0..n).map(|k| self.point(k as f64 / n as f64)).collect()
    }
}

/// A Jordan domain: the bounded component of the complement of `curve`.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanDomain {
    pub curve: JordanCurve,
    pub smoothness: Smoothness,
    /// Target tolerance for certified boundary distances.
    pub tolerance: f64,
}

const SIMPLE_TEST_RESOLUTION: usize = 256;
const MAX_SAMPLES: usize = 1 << 20;
/// Points closer to the curve than perimeter / this are classified by the
/// normal at their nearest boundary point.
const NEAR_BAND_SAMPLES: usize = 64;

fn segments_cross(p1: C64, p2: C64, q1: C64, q2: C64) -> bool {
    let cross = |a: C64, b: C64| a.re * b.im - a.im * b.re;
    let d1 = cross(p2 - p1, q1 - p1);
    let d2 = cross(p2 - p1, q2 - p1);
    let d3 = cross(q2 - q1, p1 - q1);
    let d4 = cross(q2 - q1, p2 - q1);
    // orientations at rounding level count as collinear, not crossing
    let eps = 1e-12 * (p2 - p1).norm() * (q2 - q1).norm().max((q1 - p1).norm());
    let side = |d: f64| if d > eps { 1 } else if d < -eps { -1 } else { 0 };
    side(d1) * side(d2) < 0 && side(d3) * side(d4) < 0
}

impl JordanDomain {
    pub fn new(curve: JordanCurve) -> Result<Self> {
        let smoothness = curve.default_smoothness();
        let d = JordanDomain { curve, smoothness, tolerance: 1e-8 };
        d.validate()?;
        Ok(d)
    }

    /// Checks closure and the sampled self-intersection test.
    pub fn validate(&self) -> Result<()> {
        match &self.curve {
            JordanCurve::Circle { radius, .. } if !(*radius > 0.0) => {
                return Err(Error::InvalidDomain("circle radius must be positive".into()))
            }
            JordanCurve::Ellipse { a, b, .. } if !(*a > 0.0 && *b > 0.0) => {
                return Err(Error::InvalidDomain("ellipse semi-axes must be positive".into()))
            }
            JordanCurve::Starlike { scale, harmonics, .. } => {
                let amp: f64 = harmonics.iter().map(|(a, b)| a.abs() + b.abs()).sum();
                if !(*scale > 0.0) || amp >= 1.0 {
                    return Err(Error::InvalidDomain(
                        "starlike curve needs positive scale and harmonic amplitude below 1".into(),
                    ));
                }
            }
            JordanCurve::Stadium(h) => h.validate()?,
            JordanCurve::Lens { rho } if !(*rho > 0.0 && *rho < 2f64.sqrt()) => {
                return Err(Error::InvalidDomain("lens radius must be in (0, √2)".into()))
            }
            _ => {}
        }
        let start = self.curve.point(0.0);
        let end = self.curve.point(1.0);
        if (start - end).norm() > 1e-9 * (1.0 + start.norm()) {
            return Err(Error::InvalidDomain("boundary curve is not closed".into()));
        }
        let n = SIMPLE_TEST_RESOLUTION;
        let pts = self.curve.sample(n);
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                if segments_cross(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]) {
                    return Err(Error::InvalidDomain(format!(
                        "boundary self-intersects near parameters {} and {}",
                        i as f64 / n as f64,
                        j as f64 / n as f64
                    )));
                }
            }
        }
        Ok(())
    }

    fn winding(&self, z: C64, n: usize) -> i64 {
        let pts = self.curve.sample(n);
        let mut total = 0.0;
        for k in 0..n {
            let a = pts[k] - z;
            let b = pts[(k + 1) % n] - z;
            total += (b / a).arg();
        }
        (total / TAU).round() as i64
    }

    fn winding_contains(&self, z: C64) -> Result<bool> {
        let mut n = 256;
        let mut prev = self.winding(z, n);
        while n < MAX_SAMPLES {
            n *= 2;
            let cur = self.winding(z, n);
            if cur == prev {
                return Ok(cur != 0);
            }
            prev = cur;
        }
        Err(Error::NonConvergence("winding number did not stabilize".into()))
    }

    /// Side of the curve given the nearest point `(d, t)`. Close to the
    /// curve the sampled polygon can cut a point off, so there the normal at
    /// the nearest point decides; farther out the winding number of the
    /// sampled boundary does, with doubling resolution until two answers agree.
    fn side(&self, z: C64, d: f64, t: f64) -> Result<bool> {
        if d == 0.0 {
            return Ok(false);
        }
        let pts = self.curve.sample(NEAR_BAND_SAMPLES);
        let perimeter: f64 = (0..pts.len()).map(|k| (pts[(k + 1) % pts.len()] - pts[k]).norm()).sum();
        if d < perimeter / NEAR_BAND_SAMPLES as f64 {
            let n = self.inward_normal(t);
            let v = z - self.curve.point(t);
            return Ok(v.re * n.re + v.im * n.im > 0.0);
        }
        self.winding_contains(z)
    }

    pub fn contains(&self, z: C64) -> Result<bool> {
        let (d, t) = self.distance_to_boundary(z)?;
        self.side(z, d, t)
    }

    /// Distance to the curve and the minimizing parameter at sampling `n`.
    fn curve_distance(&self, z: C64, n: usize) -> (f64, f64) {
        let h = 1.0 / n as f64;
        let samples: Vec<(C64, C64)> = (0..n).map(|k| self.curve.eval(k as f64 * h)).collect();
        let lip = samples.iter().map(|s| s.1.norm()).fold(0.0, f64::max) * 1.25;
        let dist: Vec<f64> = samples.iter().map(|s| (s.0 - z).norm()).collect();
        let dmin = dist.iter().copied().fold(f64::INFINITY, f64::min);
        let mut best = (f64::INFINITY, 0.0);
        for k in 0..n {
            let lower = dist[k].min(dist[(k + 1) % n]) - lip * h / 2.0;
            if lower > dmin {
                continue;
            }
            let (d, t) = self.golden(z, k as f64 * h, (k + 1) as f64 * h);
            let cand = [(dist[k], k as f64 * h), (d, t)];
            for c in cand {
                if c.0 < best.0 {
                    best = c;
                }
            }
        }
        best
    }

    fn golden(&self, z: C64, mut a: f64, mut b: f64) -> (f64, f64) {
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let f = |t: f64| (self.curve.point(t) - z).norm_sqr();
        let mut c = b - g * (b - a);
        let mut d = a + g * (b - a);
        let (mut fc, mut fd) = (f(c), f(d));
        for _ in 0..80 {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - g * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + g * (b - a);
                fd = f(d);
            }
        }
        let t = 0.5 * (a + b);
        (f(t).sqrt(), t)
    }

    /// Distance to the boundary curve certified by agreement of two
    /// consecutive sampling resolutions within `self.tolerance`.
    pub fn distance_to_boundary(&self, z: C64) -> Result<(f64, f64)> {
        let mut n = 256;
        let mut prev = self.curve_distance(z, n);
        while n < MAX_SAMPLES {
            n *= 2;
            let cur = self.curve_distance(z, n);
            if (cur.0 - prev.0).abs() <= self.tolerance {
                return Ok(if cur.0 <= prev.0 { cur } else { prev });
            }
            prev = cur;
        }
        Err(Error::NonConvergence(format!("boundary distance at {z} not certified")))
    }

    pub fn signed_distance(&self, z: C64) -> Result<f64> {
        let (d, t) = self.distance_to_boundary(z)?;
        Ok(if self.side(z, d, t)? { d } else { -d })
    }

    pub(crate) fn nearest(&self, z: C64) -> Result<(f64, C64)> {
        let (d, t) = self.distance_to_boundary(z)?;
        Ok((d, self.curve.point(t)))
    }

    /// Unit inward normal at parameter `t` (positive orientation).
    pub fn inward_normal(&self, t: f64) -> C64 {
        let (_, d) = self.curve.eval(t);
        d * C64::new(0.0, 1.0) / d.norm()
    }
}

/// Random smooth starlike curve with total harmonic amplitude `amp`.
pub fn random_starlike<R: rand::Rng>(rng: &mut R, amp: f64) -> JordanCurve {
    let k = 4;
    let raw: Vec<(f64, f64)> = (0..k).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let total: f64 = raw.iter().map(|(a, b)| a.abs() + b.abs()).sum();
    // harmonic k+1 damped by 1/(k+1) keeps the curve gently curved
    let harmonics = raw
        .iter()
        .enumerate()
        .map(|(j, (a, b))| {
            let s = amp / total / (j + 1) as f64;
            (a * s, b * s)
        })
        .collect();
    JordanCurve::Starlike {
        center: C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        scale: rng.gen_range(0.5..2.0),
        harmonics,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ellipse_distances() {
        let d = JordanDomain::new(JordanCurve::ellipse(2.0, 1.0)).unwrap();
        let (dist, _) = d.distance_to_boundary(C64::new(0.0, 0.0)).unwrap();
        assert!((dist - 1.0).abs() < 1e-8);
        let (dist, _) = d.distance_to_boundary(C64::new(1.9, 0.0)).unwrap();
        assert!((dist - 0.1).abs() < 1e-8);
        assert!(d.contains(C64::new(1.9, 0.0)).unwrap());
        assert!(!d.contains(C64::new(2.1, 0.0)).unwrap());
        assert!(d.signed_distance(C64::new(0.0, 1.5)).unwrap() < 0.0);
    }

    #[test]
    fn points_hugging_the_curve() {
        let d = JordanDomain::new(JordanCurve::ellipse(2.0, 1.0)).unwrap();
        for t in [0.0013, 0.1234, 0.377] {
            let (p, n) = (d.curve.point(t), d.inward_normal(t));
            assert!(d.contains(p + n * 1e-9).unwrap(), "t={t}");
            assert!(!d.contains(p - n * 1e-9).unwrap(), "t={t}");
        }
    }

    #[test]
    fn circle_matches_disc() {
        let d = JordanDomain::new(JordanCurve::Circle { center: C64::new(1.0, 1.0), radius: 2.0 }).unwrap();
        let z = C64::new(1.5, 0.3);
        let exact = 2.0 - (z - C64::new(1.0, 1.0)).norm();
        assert!((d.signed_distance(z).unwrap() - exact).abs() < 1e-8);
    }

    #[test]
    fn self_intersection_detected() {
        let bad = JordanCurve::Starlike { center: C64::new(0.0, 0.0), scale: 1.0, harmonics: vec![(0.0, 0.0), (1.5, 0.0)] };
        assert!(JordanDomain::new(bad).is_err());
    }

    #[test]
    fn lens_curve_is_closed_and_on_both_circles() {
        let d = JordanDomain::new(JordanCurve::Lens { rho: 0.5 }).unwrap();
        for k in 0..40 {
            let p = d.curve.point(k as f64 / 40.0);
            let on_unit = (p.norm() - 1.0).abs() < 1e-12;
            let on_small = ((p - 1.0).norm() - 0.5).abs() < 1e-12;
            assert!(on_unit || on_small);
        }
        assert!(d.contains(C64::new(0.9, 0.0)).unwrap());
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let curves = [
            JordanCurve::ellipse(2.0, 1.0),
            JordanCurve::Starlike { center: C64::new(0.1, 0.0), scale: 1.3, harmonics: vec![(0.1, 0.05), (0.0, 0.1)] },
            JordanCurve::Lens { rho: 0.7 },
        ];
        for c in curves {
            for k in 1..10 {
                let t = k as f64 / 10.0 + 0.013;
                let h = 1e-6;
                let fd = (c.point(t + h) - c.point(t - h)) / (2.0 * h);
                let (_, d) = c.eval(t);
                assert!((fd - d).norm() < 1e-5 * d.norm(), "{c:?} t={t}");
            }
        }
    }
}
