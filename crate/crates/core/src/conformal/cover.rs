//! Universal cover of the annulus `A_r = {1/r < |z| < r}`.
//!
//! The principal logarithm lifts `A_r` into the vertical strip
//! `S = {|Re ζ| < L}`, `L = log r`; `exp` is the covering map and the deck
//! group is generated by `ζ ↦ ζ + 2πi`. The Kobayashi distance of `A_r` is
//! the strip's hyperbolic distance minimized over deck translates.

use std::f64::consts::{PI, TAU};

use crate::domains::PlanarDomain;
use crate::{Error, Result, C64};

/// Deck translates `|n| ≤ DECK_CAP` are searched.
pub const DECK_CAP: i64 = 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusCover {
    pub r: f64,
    /// Half-width `log r` of the strip.
    pub l: f64,
}

pub fn annulus_cover(r: f64) -> Result<AnnulusCover> {
    PlanarDomain::annulus(r)?;
    Ok(AnnulusCover { r, l: r.ln() })
}

impl AnnulusCover {
    /// Principal lift `log z`.
    pub fn lift(&self, z: C64) -> Result<C64> {
        let m = z.norm();
        if !(m > 1.0 / self.r && m < self.r) {
            return Err(Error::DomainViolation(format!("{z} not in A_{}", self.r)));
        }
        Ok(z.ln())
    }

    pub fn project(&self, zeta: C64) -> C64 {
        zeta.exp()
    }

    pub fn deck_shift(&self) -> C64 {
        C64::new(0.0, TAU)
    }

    /// `cos(π Re ζ / 2L)`, evaluated as a sine of the distance to the nearer
    /// edge so that it keeps relative precision near the boundary.
    fn edge_cos(&self, x: f64) -> f64 {
        (PI * (self.l - x.abs()) / (2.0 * self.l)).sin()
    }

    /// Hyperbolic density of the strip in the `tanh⁻¹` scale.
    pub fn density(&self, zeta: C64) -> f64 {
        (PI / (4.0 * self.l)) / self.edge_cos(zeta.re)
    }

    /// Closed-form hyperbolic distance in the strip:
    /// `sinh d = |sinh(Δ/2)| / sqrt(cos y1 cos y2)` with
    /// `Δ = iπ(ζ1 - ζ2)/(2L)` and `y = π Re ζ / (2L)`.
    pub fn strip_distance(&self, a: C64, b: C64) -> f64 {
        let delta = C64::new(0.0, PI / (2.0 * self.l)) * (a - b);
        let s = (delta / 2.0).sinh().norm();
        (s / (self.edge_cos(a.re) * self.edge_cos(b.re)).sqrt()).asinh()
    }

    /// `k_{A_r}(z, w)` and the minimizing deck index.
    pub fn distance(&self, z: C64, w: C64) -> Result<(f64, i64)> {
        let a = self.lift(z)?;
        let b = self.lift(w)?;
        let mut best = (f64::INFINITY, 0);
        for n in -DECK_CAP..=DECK_CAP {
            let d = self.strip_distance(a, b + self.deck_shift() * n as f64);
            if d < best.0 {
                best = (d, n);
            }
        }
        // the minimizer is always the translate nearest in Im; a winner at the
        // cap means the search window was too small
        if best.1.abs() == DECK_CAP {
            return Err(Error::NonConvergence("deck search hit its cap".into()));
        }
        Ok(best)
    }

    /// `κ_{A_r}(z; X) = λ(log z) |X| / |z|`.
    pub fn metric(&self, z: C64, x: C64) -> Result<f64> {
        let a = self.lift(z)?;
        Ok(self.density(a) * x.norm() / z.norm())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate_panels;

    #[test]
    fn documented_values() {
        let c = annulus_cover(std::f64::consts::E).unwrap();
        assert_eq!(c.lift(C64::new(1.0, 0.0)).unwrap(), C64::new(0.0, 0.0));
        assert!((c.density(C64::new(0.0, 0.0)) - PI / 4.0).abs() < 1e-15);
        let z = c.project(C64::new(0.0, 0.0) + c.deck_shift() * 3.0);
        assert!((z - 1.0).norm() < 1e-14);
        assert!(annulus_cover(1.0).is_err());
    }

    #[test]
    fn strip_distance_is_integrated_density() {
        // along a horizontal segment the geodesic is the segment itself
        let c = annulus_cover(2.0).unwrap();
        let (a, b) = (-0.4, 0.55);
        let integral = integrate_panels(a, b, 4, |x| c.density(C64::new(x, 0.0)));
        let closed = c.strip_distance(C64::new(a, 0.0), C64::new(b, 0.0));
        assert!((integral - closed).abs() < 1e-12, "{integral} vs {closed}");
    }

    #[test]
    fn density_is_the_infinitesimal_distance() {
        let c = annulus_cover(3.0).unwrap();
        let a = C64::new(0.7, 0.2);
        let h = 1e-7;
        for dir in [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::from_polar(1.0, 0.9)] {
            let d = c.strip_distance(a, a + dir * h) / h;
            assert!((d - c.density(a)).abs() < 1e-6 * c.density(a));
        }
    }

    #[test]
    fn distance_rotation_invariant() {
        let c = annulus_cover(2.0).unwrap();
        let z = C64::new(1.2, 0.4);
        let w = C64::new(-0.8, 0.3);
        let rot = C64::from_polar(1.0, 2.3);
        let (d1, _) = c.distance(z, w).unwrap();
        let (d2, _) = c.distance(z * rot, w * rot).unwrap();
        assert!((d1 - d2).abs() < 1e-12);
        assert_eq!(c.distance(z, z).unwrap().0, 0.0);
    }
}
