//! Domain catalog, boundary-distance geometry, and the geometric objects
//! used by the bound constructions (two-disc hulls, projections onto complex
//! lines, supporting hyperplanes).
//!
//! Every domain value is immutable after construction.

mod cn;
mod hull;
mod jordan;
mod planar;
mod spec;

pub use cn::{CnContact, CnDomain, HalfSpace, Hyperplane, Projection};
pub use hull::{two_disc_hull, TwoDiscHull};
pub use jordan::{random_starlike, JordanCurve, JordanDomain, Smoothness};
pub use planar::PlanarDomain;
pub use spec::DomainSpec;

pub(crate) use cn::{inner, norm, sub};

use crate::{Error, Result, C64};

/// Nearest boundary point `p(w)` of a planar domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryContact {
    pub foot: C64,
    pub distance: f64,
    /// Unit vector from the foot toward `w`.
    pub inward: C64,
}

/// A planar domain or a domain in `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    Planar(PlanarDomain),
    Cn(CnDomain),
}

impl From<PlanarDomain> for Domain {
    fn from(d: PlanarDomain) -> Self {
        Domain::Planar(d)
    }
}

impl From<CnDomain> for Domain {
    fn from(d: CnDomain) -> Self {
        Domain::Cn(d)
    }
}

fn planar_point(z: &[C64]) -> Result<C64> {
    match z {
        [z] => Ok(*z),
        _ => Err(Error::DomainViolation(format!("planar domain expects one coordinate, got {}", z.len()))),
    }
}

impl Domain {
    pub fn dim(&self) -> usize {
        match self {
            Domain::Planar(_) => 1,
            Domain::Cn(d) => d.dim(),
        }
    }

    pub fn boundary_distance(&self, z: &[C64]) -> Result<f64> {
        match self {
            Domain::Planar(d) => d.boundary_distance(planar_point(z)?),
            Domain::Cn(d) => d.boundary_distance(z),
        }
    }

    pub fn contains(&self, z: &[C64]) -> Result<bool> {
        match self {
            Domain::Planar(d) => d.contains(planar_point(z)?),
            Domain::Cn(d) => Ok(d.contains(z)),
        }
    }

    /// Projection of the domain onto the complex line through `w` and its
    /// nearest boundary point. Planar domains project to themselves.
    pub fn project_domain(&self, w: &[C64]) -> Result<Projection> {
        match self {
            Domain::Planar(d) => {
                let p = planar_point(w)?;
                if !d.contains(p)? {
                    return Err(Error::DomainViolation(format!("{p} not in domain")));
                }
                Ok(Projection {
                    domain: d.clone(),
                    origin: vec![C64::new(0.0, 0.0)],
                    direction: vec![C64::new(1.0, 0.0)],
                })
            }
            Domain::Cn(d) => d.project_domain(w),
        }
    }
}
