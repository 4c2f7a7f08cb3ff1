//! JSON descriptions of catalog domains.
//!
//! ```json
//! {"kind": "annulus", "r": 2.0}
//! {"kind": "jordan", "curve": "ellipse", "a": 2.0, "b": 1.0}
//! {"kind": "ball", "dim": 2, "radius": 1.0}
//! ```
//!
//! Complex numbers are written `[re, im]`. Unknown fields are rejected.

use serde::{Deserialize, Serialize};

use crate::domains::{
    two_disc_hull, CnDomain, Domain, HalfSpace, JordanCurve, JordanDomain, PlanarDomain,
};
use crate::{Error, Result, C64};

type Pair = [f64; 2];

fn cx(p: Pair) -> C64 {
    C64::new(p[0], p[1])
}

fn pair(z: C64) -> Pair {
    [z.re, z.im]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Circle,
    Ellipse,
    Starlike,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfSpaceSpec {
    pub normal: Vec<Pair>,
    pub offset: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainSpec {
    Disc {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        center: Option<Pair>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radius: Option<f64>,
    },
    HalfPlane {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        normal: Option<Pair>,
    },
    Sector {
        theta: f64,
    },
    Slit,
    Annulus {
        r: f64,
    },
    TwoDiscHull {
        z: Pair,
        rz: f64,
        w: Pair,
        rw: f64,
    },
    Lens {
        rho: f64,
    },
    Jordan {
        curve: CurveKind,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        a: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        b: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        center: Option<Pair>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radius: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        harmonics: Option<Vec<Pair>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        scale: Option<f64>,
    },
    Ball {
        dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        radius: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        center: Option<Vec<Pair>>,
    },
    Polydisc {
        radii: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        center: Option<Vec<Pair>>,
    },
    ConvexBody {
        halfspaces: Vec<HalfSpaceSpec>,
    },
}

fn missing(field: &str) -> Error {
    Error::Parse(format!("missing field `{field}`"))
}

impl DomainSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("domain spec serializes")
    }

    /// Builds and validates the described domain.
    pub fn build(&self) -> Result<Domain> {
        let origin = C64::new(0.0, 0.0);
        Ok(match self {
            DomainSpec::Disc { center, radius } => {
                PlanarDomain::disc(center.map_or(origin, cx), radius.unwrap_or(1.0))?.into()
            }
            DomainSpec::HalfPlane { normal } => {
                PlanarDomain::half_plane(normal.map_or(C64::new(1.0, 0.0), cx))?.into()
            }
            DomainSpec::Sector { theta } => PlanarDomain::sector(*theta)?.into(),
            DomainSpec::Slit => PlanarDomain::SlitPlane.into(),
            DomainSpec::Annulus { r } => PlanarDomain::annulus(*r)?.into(),
            DomainSpec::TwoDiscHull { z, rz, w, rw } => {
                two_disc_hull(cx(*z), *rz, cx(*w), *rw).map_err(|e| match e {
                    Error::DegenerateInput(m) => Error::InvalidDomain(m),
                    e => e,
                })?
                .into()
            }
            DomainSpec::Lens { rho } => PlanarDomain::lens(*rho)?.into(),
            DomainSpec::Jordan { curve, a, b, center, radius, harmonics, scale } => {
                let center = center.map_or(origin, cx);
                let curve = match curve {
                    CurveKind::Circle => {
                        JordanCurve::Circle { center, radius: radius.ok_or_else(|| missing("radius"))? }
                    }
                    CurveKind::Ellipse => JordanCurve::Ellipse {
                        center,
                        a: a.ok_or_else(|| missing("a"))?,
                        b: b.ok_or_else(|| missing("b"))?,
                    },
                    CurveKind::Starlike => JordanCurve::Starlike {
                        center,
                        scale: scale.unwrap_or(1.0),
                        harmonics: harmonics
                            .as_ref()
                            .ok_or_else(|| missing("harmonics"))?
                            .iter()
                            .map(|p| (p[0], p[1]))
                            .collect(),
                    },
                };
                PlanarDomain::Jordan(JordanDomain::new(curve)?).into()
            }
            DomainSpec::Ball { dim, radius, center } => {
                let center = match center {
                    Some(c) if c.len() != *dim => {
                        return Err(Error::InvalidDomain("ball center dimension mismatch".into()))
                    }
                    Some(c) => c.iter().copied().map(cx).collect(),
                    None => vec![origin; *dim],
                };
                CnDomain::ball(center, radius.unwrap_or(1.0))?.into()
            }
            DomainSpec::Polydisc { radii, center } => {
                let center = match center {
                    Some(c) => c.iter().copied().map(cx).collect(),
                    None => vec![origin; radii.len()],
                };
                CnDomain::polydisc(center, radii.clone())?.into()
            }
            DomainSpec::ConvexBody { halfspaces } => CnDomain::convex_body(
                halfspaces
                    .iter()
                    .map(|h| HalfSpace { normal: h.normal.iter().copied().map(cx).collect(), offset: h.offset })
                    .collect(),
            )?
            .into(),
        })
    }

    /// The description of a catalog domain, if it has one.
    pub fn describe(d: &Domain) -> Option<Self> {
        Some(match d {
            Domain::Planar(p) => match p {
                PlanarDomain::UnitDisc => DomainSpec::Disc { center: None, radius: None },
                PlanarDomain::Disc { center, radius } => {
                    DomainSpec::Disc { center: Some(pair(*center)), radius: Some(*radius) }
                }
                PlanarDomain::HalfPlane { normal } => DomainSpec::HalfPlane { normal: Some(pair(*normal)) },
                PlanarDomain::Sector { half_angle } => DomainSpec::Sector { theta: *half_angle },
                PlanarDomain::SlitPlane => DomainSpec::Slit,
                PlanarDomain::Annulus { r } => DomainSpec::Annulus { r: *r },
                PlanarDomain::TwoDiscHull(h) => {
                    DomainSpec::TwoDiscHull { z: pair(h.z), rz: h.rz, w: pair(h.w), rw: h.rw }
                }
                PlanarDomain::Lens { rho } => DomainSpec::Lens { rho: *rho },
                PlanarDomain::Jordan(j) => {
                    match &j.curve {
                        JordanCurve::Circle { center, radius } => DomainSpec::Jordan {
                            curve: CurveKind::Circle,
                            a: None,
                            b: None,
                            center: Some(pair(*center)),
                            radius: Some(*radius),
                            harmonics: None,
                            scale: None,
                        },
                        JordanCurve::Ellipse { center, a, b } => DomainSpec::Jordan {
                            curve: CurveKind::Ellipse,
                            a: Some(*a),
                            b: Some(*b),
                            center: Some(pair(*center)),
                            radius: None,
                            harmonics: None,
                            scale: None,
                        },
                        JordanCurve::Starlike { center, scale, harmonics } => DomainSpec::Jordan {
                            curve: CurveKind::Starlike,
                            a: None,
                            b: None,
                            center: Some(pair(*center)),
                            radius: None,
                            harmonics: Some(harmonics.iter().map(|&(p, q)| [p, q]).collect()),
                            scale: Some(*scale),
                        },
                        JordanCurve::Stadium(_) | JordanCurve::Lens { .. } => return None,
                    }
                }
            },
            Domain::Cn(c) => match c {
                CnDomain::Ball { center, radius } => DomainSpec::Ball {
                    dim: center.len(),
                    radius: Some(*radius),
                    center: Some(center.iter().copied().map(pair).collect()),
                },
                CnDomain::Polydisc { center, radii } => DomainSpec::Polydisc {
                    radii: radii.clone(),
                    center: Some(center.iter().copied().map(pair).collect()),
                },
                CnDomain::ConvexBody { halfspaces } => DomainSpec::ConvexBody {
                    halfspaces: halfspaces
                        .iter()
                        .map(|h| HalfSpaceSpec {
                            normal: h.normal.iter().copied().map(pair).collect(),
                            offset: h.offset,
                        })
                        .collect(),
                },
            },
        })
    }
}
