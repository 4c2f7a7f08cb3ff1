//! Random points for the suites: half of them spread through the domain,
//! half within a log-uniform distance of the boundary.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::domains::{CnDomain, Domain, JordanDomain, PlanarDomain};
use crate::{Error, Result, C64};

/// Smallest boundary distance a sample may have.
pub const D_FLOOR: f64 = 1e-8;

pub(crate) fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

/// Points `count` log-spaced from `from` down to `to`.
pub fn log_spaced(from: f64, to: f64, count: usize) -> Vec<f64> {
    let (a, b) = (from.ln(), to.ln());
    (0..count).map(|k| (a + (b - a) * k as f64 / (count - 1).max(1) as f64).exp()).collect()
}

/// How close to the boundary the near half of the samples may get.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Profile {
    pub near_min: f64,
    pub near_max: f64,
    /// Fraction of samples taken near the boundary.
    pub near_fraction: f64,
}

impl Default for Profile {
    fn default() -> Self {
        Profile { near_min: D_FLOOR, near_max: 1e-1, near_fraction: 0.5 }
    }
}

impl Profile {
    /// Tighter floor for domains whose distances come from a numerical map.
    pub fn numerical() -> Self {
        Profile { near_min: 1e-6, ..Profile::default() }
    }

    /// Everything spread through the bulk.
    pub fn bulk() -> Self {
        Profile { near_fraction: 0.0, ..Profile::default() }
    }
}

fn unit_disc(rng: &mut ChaCha8Rng, near: Option<f64>) -> C64 {
    let r = match near {
        Some(d) => 1.0 - d,
        None => rng.gen::<f64>().sqrt(),
    };
    C64::from_polar(r, rng.gen_range(0.0..TAU))
}

fn jordan(rng: &mut ChaCha8Rng, j: &JordanDomain, near: Option<f64>) -> Result<C64> {
    for _ in 0..10_000 {
        let z = match near {
            Some(d) => {
                let t = rng.gen::<f64>();
                j.curve.point(t) + j.inward_normal(t) * d
            }
            None => {
                let pts = j.curve.sample(256);
                let (mut lo, mut hi) = (pts[0], pts[0]);
                for p in &pts {
                    lo = C64::new(lo.re.min(p.re), lo.im.min(p.im));
                    hi = C64::new(hi.re.max(p.re), hi.im.max(p.im));
                }
                C64::new(rng.gen_range(lo.re..hi.re), rng.gen_range(lo.im..hi.im))
            }
        };
        if j.signed_distance(z)? >= D_FLOOR {
            return Ok(z);
        }
    }
    Err(Error::NonConvergence("no sample landed inside the Jordan domain".into()))
}

fn planar(rng: &mut ChaCha8Rng, d: &PlanarDomain, near: Option<f64>) -> Result<C64> {
    Ok(match d {
        PlanarDomain::UnitDisc => unit_disc(rng, near),
        PlanarDomain::Disc { center, radius } => center + unit_disc(rng, near) * *radius,
        PlanarDomain::HalfPlane { normal } => {
            let h = near.unwrap_or_else(|| log_uniform(rng, 1e-3, 10.0));
            normal * C64::new(h, rng.gen_range(-5.0..5.0))
        }
        PlanarDomain::Sector { half_angle } => {
            let r = log_uniform(rng, 1e-2, 1e2);
            let a = match near {
                // d = r sin(gap) when the gap is below π/2
                Some(d) => {
                    let gap = (d / r).min(1.0).asin().min(*half_angle * 0.999);
                    (half_angle - gap) * if rng.gen::<bool>() { 1.0 } else { -1.0 }
                }
                None => rng.gen_range(-*half_angle..*half_angle),
            };
            C64::from_polar(r, a)
        }
        PlanarDomain::SlitPlane => {
            let r = log_uniform(rng, 1e-2, 1e2);
            let a = match near {
                Some(d) => {
                    let gap = (d / r).min(1.0).asin();
                    if rng.gen::<bool>() {
                        gap
                    } else {
                        TAU - gap
                    }
                }
                None => rng.gen_range(0.0..TAU),
            };
            if a == 0.0 {
                C64::new(-r, 0.0)
            } else {
                C64::from_polar(r, a)
            }
        }
        PlanarDomain::Annulus { r } => {
            let m = match near {
                Some(d) if rng.gen::<bool>() => r - d,
                Some(d) => 1.0 / r + d,
                None => (rng.gen_range(-1.0..1.0) * r.ln()).exp(),
            };
            C64::from_polar(m, rng.gen_range(0.0..TAU))
        }
        PlanarDomain::Jordan(j) => jordan(rng, j, near)?,
        PlanarDomain::Lens { .. } | PlanarDomain::TwoDiscHull(_) => {
            // rejection from the unit disc's box (lens) or the hull's box
            let (lo, hi) = match d {
                PlanarDomain::TwoDiscHull(h) => {
                    let m = h.rz.max(h.rw);
                    (
                        C64::new(h.z.re.min(h.w.re) - m, h.z.im.min(h.w.im) - m),
                        C64::new(h.z.re.max(h.w.re) + m, h.z.im.max(h.w.im) + m),
                    )
                }
                _ => (C64::new(-1.0, -1.0), C64::new(1.0, 1.0)),
            };
            let mut tries = 0;
            loop {
                let z = C64::new(rng.gen_range(lo.re..hi.re), rng.gen_range(lo.im..hi.im));
                if d.boundary_distance(z)? >= D_FLOOR {
                    break z;
                }
                tries += 1;
                if tries > 100_000 {
                    return Err(Error::NonConvergence("rejection sampling failed".into()));
                }
            }
        }
    })
}

fn cn(rng: &mut ChaCha8Rng, d: &CnDomain, near: Option<f64>) -> Result<Vec<C64>> {
    match d {
        CnDomain::Ball { center, radius } => {
            let n = center.len();
            let v: Vec<C64> = (0..n).map(|_| C64::new(gauss(rng), gauss(rng))).collect();
            let len = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            let r = match near {
                Some(d) => radius - d,
                None => radius * rng.gen::<f64>().powf(1.0 / (2 * n) as f64),
            };
            Ok(v.iter().zip(center).map(|(x, c)| c + x * (r / len)).collect())
        }
        CnDomain::Polydisc { center, radii } => {
            let k = rng.gen_range(0..center.len());
            Ok((0..center.len())
                .map(|i| {
                    let u = unit_disc(rng, if i == k { near.map(|d| d / radii[i]) } else { None });
                    center[i] + u * radii[i]
                })
                .collect())
        }
        CnDomain::ConvexBody { .. } => {
            let (c, r) = d.chebyshev_center();
            let dim = c.len();
            for _ in 0..100_000 {
                let v: Vec<C64> = (0..dim).map(|_| C64::new(gauss(rng), gauss(rng))).collect();
                let len = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
                let s = 4.0 * r * rng.gen::<f64>();
                let p: Vec<C64> = v.iter().zip(&c).map(|(x, c)| c + x * (s / len)).collect();
                if d.signed_distance(&p) >= D_FLOOR {
                    return Ok(p);
                }
            }
            Err(Error::NonConvergence("rejection sampling failed".into()))
        }
    }
}

fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// One random point of `d` under `profile`.
pub fn sample_point(rng: &mut ChaCha8Rng, d: &Domain, profile: Profile) -> Result<Vec<C64>> {
    let near = if rng.gen::<f64>() < profile.near_fraction {
        Some(log_uniform(rng, profile.near_min, profile.near_max))
    } else {
        None
    };
    match d {
        Domain::Planar(p) => Ok(vec![planar(rng, p, near)?]),
        Domain::Cn(c) => cn(rng, c, near),
    }
}

/// `count` pairs of distinct points.
pub fn sample_pairs(rng: &mut ChaCha8Rng, d: &Domain, profile: Profile, count: usize) -> Result<Vec<(Vec<C64>, Vec<C64>)>> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let z = sample_point(rng, d, profile)?;
        let w = sample_point(rng, d, profile)?;
        if z != w {
            out.push((z, w));
        }
    }
    Ok(out)
}

/// A point of the ball of radius `rad` about the origin of `C^n`, uniform
/// in volume.
pub fn ball_point(rng: &mut ChaCha8Rng, dim: usize, rad: f64) -> Vec<C64> {
    let v: Vec<C64> = (0..dim).map(|_| C64::new(gauss(rng), gauss(rng))).collect();
    let len = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let r = rad * rng.gen::<f64>().powf(1.0 / (2 * dim) as f64);
    v.into_iter().map(|x| x * (r / len)).collect()
}

/// A point of the polydisc with all coordinates in `|z_i| < rad`.
pub fn polydisc_point(rng: &mut ChaCha8Rng, dim: usize, rad: f64) -> Vec<C64> {
    (0..dim).map(|_| C64::from_polar(rad * rng.gen::<f64>().sqrt(), rng.gen_range(-PI..PI))).collect()
}
