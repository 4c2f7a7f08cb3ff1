//! Closed-form maps onto half-planes and the disc.
//!
//! | kind         | source                    | target            | branch cut     |
//! |--------------|---------------------------|-------------------|----------------|
//! | `Cayley`     | right half-plane          | unit disc         | none           |
//! | `HalfPlane`  | half-plane, inward normal n | unit disc       | none           |
//! | `Sector`     | `|arg z| < θ`             | right half-plane  | `(-∞, 0]`      |
//! | `SlitSqrt`   | `C \ [0, ∞)`              | upper half-plane  | `[0, ∞)`       |
//! | `DiscScale`  | `Disc(c, R)`              | unit disc         | none           |
//! | `Lens`       | `Δ ∩ Disc(1, ρ)`          | upper half-plane  | outside wedge  |

use std::f64::consts::PI;

use crate::conformal::{ConformalMap, RIGHT, UNIT_DISC, UPPER};
use crate::domains::PlanarDomain;
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedKind {
    Cayley,
    HalfPlane { normal: C64 },
    Sector { theta: f64 },
    SlitSqrt,
    DiscScale { center: C64, radius: f64 },
    Lens { rho: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedMap {
    pub kind: ClosedKind,
    source: PlanarDomain,
    target: PlanarDomain,
    // lens data: corners, rotation, exponent
    lens: Option<LensData>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct LensData {
    qp: C64,
    qm: C64,
    rot: C64,
    power: f64,
}

const I: C64 = C64 { re: 0.0, im: 1.0 };

fn on_cut(hit: bool, z: C64) -> Result<()> {
    if hit {
        Err(Error::BranchViolation(format!("{z} lies on the branch cut")))
    } else {
        Ok(())
    }
}

fn cayley(z: C64) -> C64 {
    (z - 1.0) / (z + 1.0)
}

fn cayley_inv(w: C64) -> C64 {
    (1.0 + w) / (1.0 - w)
}

fn cayley_deriv(z: C64) -> C64 {
    let q = z + 1.0;
    2.0 / (q * q)
}

pub fn closed_map(kind: ClosedKind) -> Result<ClosedMap> {
    let mut lens = None;
    let (source, target) = match kind {
        ClosedKind::Cayley => (RIGHT, UNIT_DISC.clone()),
        ClosedKind::HalfPlane { normal } => (PlanarDomain::half_plane(normal)?, UNIT_DISC.clone()),
        ClosedKind::Sector { theta } => (PlanarDomain::sector(theta)?, RIGHT),
        ClosedKind::SlitSqrt => (PlanarDomain::SlitPlane, UPPER),
        ClosedKind::DiscScale { center, radius } => (PlanarDomain::disc(center, radius)?, UNIT_DISC.clone()),
        ClosedKind::Lens { rho } => {
            let source = PlanarDomain::lens(rho)?;
            lens = Some(LensData::new(rho));
            (source, UPPER)
        }
    };
    Ok(ClosedMap { kind, source, target, lens })
}

impl LensData {
    /// `z ↦ (z - q+)/(z - q-)` sends both arcs to rays from 0; after the
    /// rotation the lens is the wedge `0 < arg < α`, opened by `u^(π/α)`.
    fn new(rho: f64) -> Self {
        let x = 1.0 - rho * rho / 2.0;
        let y = (1.0 - x * x).sqrt();
        let qp = C64::new(x, y);
        let qm = C64::new(x, -y);
        let m = |z: C64| (z - qp) / (z - qm);
        let a_unit = m(C64::new(1.0, 0.0)).arg();
        let a_small = m(C64::new(1.0 - rho, 0.0)).arg();
        let a_in = m(C64::new(1.0 - rho / 2.0, 0.0)).arg();
        let ccw = |from: f64, to: f64| (to - from).rem_euclid(2.0 * PI);
        let (start, other) = if ccw(a_unit, a_in) < ccw(a_unit, a_small) {
            (a_unit, a_small)
        } else {
            (a_small, a_unit)
        };
        let alpha = ccw(start, other);
        LensData { qp, qm, rot: C64::from_polar(1.0, -start), power: PI / alpha }
    }

    fn wedge(&self, z: C64) -> Result<C64> {
        let u = self.rot * (z - self.qp) / (z - self.qm);
        on_cut(!(u.norm() > 0.0) || (u.im == 0.0 && u.re <= 0.0) || !u.is_finite(), z)?;
        Ok(u)
    }
}

impl ConformalMap for ClosedMap {
    fn eval(&self, z: C64) -> Result<C64> {
        Ok(match self.kind {
            ClosedKind::Cayley => cayley(z),
            ClosedKind::HalfPlane { normal } => cayley(z * normal.conj()),
            ClosedKind::Sector { theta } => {
                on_cut(z.im == 0.0 && z.re <= 0.0, z)?;
                z.powf(PI / (2.0 * theta))
            }
            ClosedKind::SlitSqrt => {
                on_cut(z.im == 0.0 && z.re >= 0.0, z)?;
                I * (-z).sqrt()
            }
            ClosedKind::DiscScale { center, radius } => (z - center) / radius,
            ClosedKind::Lens { .. } => {
                let l = self.lens.as_ref().expect("lens data");
                l.wedge(z)?.powf(l.power)
            }
        })
    }

    fn derivative(&self, z: C64) -> Result<C64> {
        Ok(match self.kind {
            ClosedKind::Cayley => cayley_deriv(z),
            ClosedKind::HalfPlane { normal } => normal.conj() * cayley_deriv(z * normal.conj()),
            ClosedKind::Sector { theta } => {
                let p = PI / (2.0 * theta);
                self.eval(z)? * p / z
            }
            // f^2 = z
            ClosedKind::SlitSqrt => 1.0 / (2.0 * self.eval(z)?),
            ClosedKind::DiscScale { radius, .. } => C64::new(1.0 / radius, 0.0),
            ClosedKind::Lens { .. } => {
                let l = self.lens.as_ref().expect("lens data");
                let f = self.eval(z)?;
                // d/dz log((z - q+)/(z - q-))
                let dlog = 1.0 / (z - l.qp) - 1.0 / (z - l.qm);
                f * l.power * dlog
            }
        })
    }

    fn inverse(&self, w: C64) -> Result<C64> {
        Ok(match self.kind {
            ClosedKind::Cayley => cayley_inv(w),
            ClosedKind::HalfPlane { normal } => cayley_inv(w) * normal,
            ClosedKind::Sector { theta } => {
                on_cut(w.im == 0.0 && w.re <= 0.0, w)?;
                w.powf(2.0 * theta / PI)
            }
            ClosedKind::SlitSqrt => w * w,
            ClosedKind::DiscScale { center, radius } => center + w * radius,
            ClosedKind::Lens { .. } => {
                let l = self.lens.as_ref().expect("lens data");
                on_cut(w.im == 0.0 && w.re <= 0.0, w)?;
                let m = w.powf(1.0 / l.power) / l.rot;
                (l.qp - m * l.qm) / (1.0 - m)
            }
        })
    }

    fn source(&self) -> &PlanarDomain {
        &self.source
    }

    fn target(&self) -> &PlanarDomain {
        &self.target
    }
}
