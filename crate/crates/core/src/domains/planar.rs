use std::f64::consts::{PI, TAU};

use crate::domains::hull::TwoDiscHull;
use crate::domains::jordan::JordanDomain;
use crate::domains::BoundaryContact;
use crate::{Error, Result, C64};

/// Planar model domains.
#[derive(Debug, Clone, PartialEq)]
pub enum PlanarDomain {
    UnitDisc,
    Disc { center: C64, radius: f64 },
    /// `{z : Re(z * conj(normal)) > 0}`, with `normal` the unit inward normal.
    HalfPlane { normal: C64 },
    /// `{z != 0 : |arg z| < half_angle}`.
    Sector { half_angle: f64 },
    /// The complement of the closed ray `[0, +inf)`.
    SlitPlane,
    /// `{1/r < |z| < r}`.
    Annulus { r: f64 },
    TwoDiscHull(TwoDiscHull),
    /// `UnitDisc ∩ Disc(1, rho)`.
    Lens { rho: f64 },
    Jordan(JordanDomain),
}

/// Angle normalized to `[0, 2π)`.
pub(crate) fn angle0(z: C64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

fn dot(a: C64, b: C64) -> f64 {
    a.re * b.re + a.im * b.im
}

/// Nearest point of the ray `{t * dir : t >= 0}` to `z` (`dir` unit).
fn ray_foot(z: C64, dir: C64) -> C64 {
    let t = dot(z, dir);
    if t <= 0.0 {
        C64::new(0.0, 0.0)
    } else {
        dir * t
    }
}

/// Picks the candidate with the smallest distance; exact ties go to the
/// foot with the smallest argument (measured from `z`, in `[0, 2π)`).
pub(crate) fn pick_contact(z: C64, cands: &[(f64, C64)]) -> (f64, C64) {
    let mut best = cands[0];
    for &c in &cands[1..] {
        let tie = (c.0 - best.0).abs() <= 1e-15 * (1.0 + best.0.abs());
        if (!tie && c.0 < best.0) || (tie && angle0(c.1 - z) < angle0(best.1 - z)) {
            best = c;
        }
    }
    best
}

impl PlanarDomain {
    pub fn disc(center: C64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidDomain(format!("disc radius {radius} must be positive")));
        }
        if center == C64::new(0.0, 0.0) && radius == 1.0 {
            Ok(PlanarDomain::UnitDisc)
        } else {
            Ok(PlanarDomain::Disc { center, radius })
        }
    }

    pub fn half_plane(normal: C64) -> Result<Self> {
        let n = normal.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::InvalidDomain("half-plane normal must be nonzero".into()));
        }
        Ok(PlanarDomain::HalfPlane { normal: normal / n })
    }

    pub fn sector(half_angle: f64) -> Result<Self> {
        if !(half_angle > 0.0 && half_angle < PI) {
            return Err(Error::InvalidDomain(format!("sector half-angle {half_angle} not in (0, π)")));
        }
        Ok(PlanarDomain::Sector { half_angle })
    }

    pub fn annulus(r: f64) -> Result<Self> {
        if !(r > 1.0) || !r.is_finite() {
            return Err(Error::InvalidDomain(format!("annulus modulus {r} must exceed 1")));
        }
        Ok(PlanarDomain::Annulus { r })
    }

    pub fn lens(rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho < 2f64.sqrt()) {
            return Err(Error::InvalidDomain(format!("lens radius {rho} not in (0, √2)")));
        }
        Ok(PlanarDomain::Lens { rho })
    }

    /// Re-checks the variant invariants (used after deserialization).
    pub fn validate(&self) -> Result<()> {
        match self {
            PlanarDomain::UnitDisc | PlanarDomain::SlitPlane => Ok(()),
            PlanarDomain::Disc { center, radius } => Self::disc(*center, *radius).map(|_| ()),
            PlanarDomain::HalfPlane { normal } => {
                if (normal.norm() - 1.0).abs() > 1e-12 {
                    Err(Error::InvalidDomain("half-plane normal must be a unit vector".into()))
                } else {
                    Ok(())
                }
            }
            PlanarDomain::Sector { half_angle } => Self::sector(*half_angle).map(|_| ()),
            PlanarDomain::Annulus { r } => Self::annulus(*r).map(|_| ()),
            PlanarDomain::Lens { rho } => Self::lens(*rho).map(|_| ()),
            PlanarDomain::TwoDiscHull(h) => h.validate(),
            PlanarDomain::Jordan(j) => j.validate(),
        }
    }

    /// Whether the domain is simply connected (all catalog variants but the annulus).
    pub fn is_simply_connected(&self) -> bool {
        !matches!(self, PlanarDomain::Annulus { .. })
    }

    /// Whether the domain is convex.
    pub fn is_convex(&self) -> bool {
        match self {
            PlanarDomain::UnitDisc
            | PlanarDomain::Disc { .. }
            | PlanarDomain::HalfPlane { .. }
            | PlanarDomain::TwoDiscHull(_)
            | PlanarDomain::Lens { .. } => true,
            PlanarDomain::Sector { half_angle } => *half_angle <= PI / 2.0,
            PlanarDomain::Jordan(j) => j.curve.is_convex(),
            PlanarDomain::SlitPlane | PlanarDomain::Annulus { .. } => false,
        }
    }

    /// Signed distance to the boundary: positive inside, negative outside.
    ///
    /// Exact for every variant except `Jordan`, where it is certified to the
    /// domain's sampling tolerance. For the lens the exterior value is only a
    /// lower bound in magnitude.
    pub fn signed_boundary_distance(&self, z: C64) -> Result<f64> {
        Ok(match self {
            PlanarDomain::UnitDisc => 1.0 - z.norm(),
            PlanarDomain::Disc { center, radius } => radius - (z - center).norm(),
            PlanarDomain::HalfPlane { normal } => dot(z, *normal),
            PlanarDomain::Sector { half_angle } => {
                let up = C64::from_polar(1.0, *half_angle);
                let d = (z - ray_foot(z, up)).norm().min((z - ray_foot(z, up.conj())).norm());
                if z.norm() > 0.0 && z.arg().abs() < *half_angle {
                    d
                } else {
                    -d
                }
            }
            PlanarDomain::SlitPlane => (z - ray_foot(z, C64::new(1.0, 0.0))).norm(),
            PlanarDomain::Annulus { r } => {
                let m = z.norm();
                (r - m).min(m - 1.0 / r)
            }
            PlanarDomain::Lens { rho } => (1.0 - z.norm()).min(rho - (z - 1.0).norm()),
            PlanarDomain::TwoDiscHull(h) => h.signed_distance(z),
            PlanarDomain::Jordan(j) => j.signed_distance(z)?,
        })
    }

    /// `d_D(z)`: distance to the boundary, clamped to 0 outside the domain.
    pub fn boundary_distance(&self, z: C64) -> Result<f64> {
        Ok(self.signed_boundary_distance(z)?.max(0.0))
    }

    pub fn contains(&self, z: C64) -> Result<bool> {
        match self {
            PlanarDomain::Jordan(j) => j.contains(z),
            PlanarDomain::SlitPlane => Ok(!(z.im == 0.0 && z.re >= 0.0)),
            _ => Ok(self.signed_boundary_distance(z)? > 0.0),
        }
    }

    /// Returns the nearest boundary point; ties go to the smallest argument
    /// of `foot - w` in `[0, 2π)`, except on the annulus circle of equal
    /// distance where the outer circle wins.
    pub fn nearest_boundary_contact(&self, w: C64) -> Result<BoundaryContact> {
        if !self.contains(w)? {
            return Err(Error::DomainViolation(format!("{w} not in domain")));
        }
        let unit = |z: C64| if z.norm() > 0.0 { z / z.norm() } else { C64::new(1.0, 0.0) };
        let (d, foot) = match self {
            PlanarDomain::UnitDisc => (1.0 - w.norm(), unit(w)),
            PlanarDomain::Disc { center, radius } => {
                (radius - (w - center).norm(), center + unit(w - center) * radius)
            }
            PlanarDomain::HalfPlane { normal } => {
                let d = dot(w, *normal);
                (d, w - normal * d)
            }
            PlanarDomain::Sector { half_angle } => {
                let up = C64::from_polar(1.0, *half_angle);
                let a = ray_foot(w, up);
                let b = ray_foot(w, up.conj());
                pick_contact(w, &[((w - a).norm(), a), ((w - b).norm(), b)])
            }
            PlanarDomain::SlitPlane => {
                let f = ray_foot(w, C64::new(1.0, 0.0));
                ((w - f).norm(), f)
            }
            PlanarDomain::Annulus { r } => {
                let m = w.norm();
                if r - m <= m - 1.0 / r {
                    (r - m, unit(w) * *r)
                } else {
                    (m - 1.0 / r, unit(w) / *r)
                }
            }
            PlanarDomain::Lens { rho } => {
                let a = (1.0 - w.norm(), unit(w));
                let b = (rho - (w - 1.0).norm(), C64::new(1.0, 0.0) + unit(w - 1.0) * *rho);
                pick_contact(w, &[a, b])
            }
            PlanarDomain::TwoDiscHull(h) => h.nearest(w),
            PlanarDomain::Jordan(j) => {
                let (d, foot) = j.nearest(w)?;
                (d, foot)
            }
        };
        let inward = if d > 0.0 {
            (w - foot) / d
        } else {
            C64::new(1.0, 0.0)
        };
        Ok(BoundaryContact { foot, distance: d, inward })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn radial_distances() {
        assert_eq!(PlanarDomain::UnitDisc.boundary_distance(c(0.5, 0.0)).unwrap(), 0.5);
        let a = PlanarDomain::annulus(2.0).unwrap();
        assert_eq!(a.boundary_distance(c(1.0, 0.0)).unwrap(), 0.5);
        let s = PlanarDomain::sector(PI / 2.0).unwrap();
        assert!((s.boundary_distance(c(0.1, 0.0)).unwrap() - 0.1).abs() < 1e-15);
        let s = PlanarDomain::sector(0.3).unwrap();
        assert!((s.boundary_distance(c(2.0, 0.0)).unwrap() - 2.0 * 0.3f64.sin()).abs() < 1e-15);
        assert_eq!(PlanarDomain::SlitPlane.boundary_distance(c(-3.0, 0.0)).unwrap(), 3.0);
        assert_eq!(PlanarDomain::SlitPlane.boundary_distance(c(2.0, -0.5)).unwrap(), 0.5);
    }

    #[test]
    fn outside_clamps_to_zero() {
        assert_eq!(PlanarDomain::UnitDisc.boundary_distance(c(2.0, 0.0)).unwrap(), 0.0);
        assert!(PlanarDomain::UnitDisc.signed_boundary_distance(c(2.0, 0.0)).unwrap() < 0.0);
        let s = PlanarDomain::sector(0.5).unwrap();
        assert_eq!(s.boundary_distance(c(-1.0, 0.0)).unwrap(), 0.0);
    }

    #[test]
    fn contacts() {
        let bc = PlanarDomain::UnitDisc.nearest_boundary_contact(c(0.5, 0.0)).unwrap();
        assert_eq!(bc.foot, c(1.0, 0.0));
        assert_eq!(bc.distance, 0.5);
        let bc = PlanarDomain::annulus(2.0).unwrap().nearest_boundary_contact(c(1.6, 0.0)).unwrap();
        assert!((bc.foot - c(2.0, 0.0)).norm() < 1e-15);
        assert!((bc.distance - 0.4).abs() < 1e-15);
        let bc = PlanarDomain::UnitDisc.nearest_boundary_contact(c(0.0, 0.0)).unwrap();
        assert_eq!(bc.foot, c(1.0, 0.0));
        assert!(PlanarDomain::UnitDisc.nearest_boundary_contact(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn invariants_rejected() {
        assert!(PlanarDomain::annulus(1.0).is_err());
        assert!(PlanarDomain::sector(PI).is_err());
        assert!(PlanarDomain::sector(0.0).is_err());
        assert!(PlanarDomain::disc(c(0.0, 0.0), -1.0).is_err());
        assert_eq!(PlanarDomain::disc(c(0.0, 0.0), 1.0).unwrap(), PlanarDomain::UnitDisc);
    }
}
