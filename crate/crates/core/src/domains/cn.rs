//! Balls, polydiscs and convex bodies in `C^n`.

use crate::domains::planar::PlanarDomain;
use crate::{Error, Result, C64};

/// Real half-space `{x : Re<x, normal> < offset}` with `<x, a> = Σ x_k conj(a_k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpace {
    pub normal: Vec<C64>,
    pub offset: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CnDomain {
    Ball { center: Vec<C64>, radius: f64 },
    Polydisc { center: Vec<C64>, radii: Vec<f64> },
    /// Bounded intersection of finitely many real half-spaces.
    ConvexBody { halfspaces: Vec<HalfSpace> },
}

/// Nearest boundary point of a `C^n` domain.
#[derive(Debug, Clone, PartialEq)]
pub struct CnContact {
    pub foot: Vec<C64>,
    pub distance: f64,
    pub inward: Vec<C64>,
}

/// Real hyperplane through `point` with unit outward `normal`; the domain
/// lies in `{x : Re<x - point, normal> < 0}`. It contains the complex
/// hyperplane `{<x - point, normal> = 0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperplane {
    pub point: Vec<C64>,
    pub normal: Vec<C64>,
}

impl Hyperplane {
    /// `Re<x - point, normal>`; negative on the domain side.
    pub fn side(&self, x: &[C64]) -> f64 {
        re_inner(&sub(x, &self.point), &self.normal)
    }
}

/// Complex-linear projection onto a complex line, `x ↦ <x - origin, direction>`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub domain: PlanarDomain,
    pub origin: Vec<C64>,
    pub direction: Vec<C64>,
}

impl Projection {
    pub fn project(&self, x: &[C64]) -> C64 {
        inner(&sub(x, &self.origin), &self.direction)
    }
}

pub(crate) fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

pub(crate) fn re_inner(a: &[C64], b: &[C64]) -> f64 {
    inner(a, b).re
}

pub(crate) fn norm(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn sub(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scaled(a: &[C64], s: f64) -> Vec<C64> {
    a.iter().map(|x| x * s).collect()
}

fn unit_vector(n: usize, k: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); n];
    v[k] = C64::new(1.0, 0.0);
    v
}

const CONTACT_TOL: f64 = 1e-9;

impl CnDomain {
    pub fn ball(center: Vec<C64>, radius: f64) -> Result<Self> {
        let d = CnDomain::Ball { center, radius };
        d.validate()?;
        Ok(d)
    }

    pub fn unit_ball(dim: usize) -> Self {
        CnDomain::Ball { center: vec![C64::new(0.0, 0.0); dim], radius: 1.0 }
    }

    pub fn polydisc(center: Vec<C64>, radii: Vec<f64>) -> Result<Self> {
        let d = CnDomain::Polydisc { center, radii };
        d.validate()?;
        Ok(d)
    }

    pub fn convex_body(halfspaces: Vec<HalfSpace>) -> Result<Self> {
        let d = CnDomain::ConvexBody { halfspaces };
        d.validate()?;
        Ok(d)
    }

    /// The real cube `{|Re x_k| < s, |Im x_k| < s}` as a convex body.
    pub fn cube(dim: usize, s: f64) -> Result<Self> {
        let mut hs = Vec::new();
        for k in 0..dim {
            for dir in [C64::new(1.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0)] {
                let mut a = vec![C64::new(0.0, 0.0); dim];
                a[k] = dir;
                hs.push(HalfSpace { normal: a, offset: s });
            }
        }
        Self::convex_body(hs)
    }

    pub fn dim(&self) -> usize {
        match self {
            CnDomain::Ball { center, .. } | CnDomain::Polydisc { center, .. } => center.len(),
            CnDomain::ConvexBody { halfspaces } => halfspaces.first().map_or(0, |h| h.normal.len()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CnDomain::Ball { center, radius } => {
                if center.is_empty() || !(*radius > 0.0) {
                    return Err(Error::InvalidDomain("ball needs dimension ≥ 1 and positive radius".into()));
                }
            }
            CnDomain::Polydisc { center, radii } => {
                if center.is_empty() || center.len() != radii.len() || radii.iter().any(|r| !(*r > 0.0)) {
                    return Err(Error::InvalidDomain("polydisc radii must be positive, one per coordinate".into()));
                }
            }
            CnDomain::ConvexBody { halfspaces } => {
                let n = self.dim();
                if n == 0 || halfspaces.iter().any(|h| h.normal.len() != n || norm(&h.normal) == 0.0) {
                    return Err(Error::InvalidDomain("half-space normals must be nonzero with equal dimension".into()));
                }
                self.check_bounded()?;
                let (_, depth) = self.chebyshev_center();
                if !(depth > 0.0) {
                    return Err(Error::InvalidDomain("convex body has empty interior".into()));
                }
            }
        }
        Ok(())
    }

    /// Every sampled direction must be blocked by some half-space.
    fn check_bounded(&self) -> Result<()> {
        let CnDomain::ConvexBody { halfspaces } = self else { return Ok(()) };
        let n = self.dim();
        let mut dirs = Vec::new();
        for k in 0..n {
            for s in [C64::new(1.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, -1.0)] {
                let mut v = vec![C64::new(0.0, 0.0); n];
                v[k] = s;
                dirs.push(v);
            }
        }
        // deterministic quasi-random extra directions
        let mut state = 0x9E37_79B9_7F4A_7C15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        for _ in 0..256 {
            dirs.push((0..n).map(|_| C64::new(next(), next())).collect());
        }
        for u in dirs {
            if !halfspaces.iter().any(|h| re_inner(&u, &h.normal) > 1e-12) {
                return Err(Error::InvalidDomain("convex body is unbounded".into()));
            }
        }
        Ok(())
    }

    /// Approximate Chebyshev center by subgradient ascent on the depth
    /// `min_j (b_j - Re<x, a_j>) / |a_j|`. Returns the point and its depth.
    pub fn chebyshev_center(&self) -> (Vec<C64>, f64) {
        let n = self.dim();
        let mut x = vec![C64::new(0.0, 0.0); n];
        let CnDomain::ConvexBody { halfspaces } = self else {
            return (x.clone(), self.signed_distance(&x));
        };
        let depth = |x: &[C64]| {
            halfspaces
                .iter()
                .enumerate()
                .map(|(j, h)| ((h.offset - re_inner(x, &h.normal)) / norm(&h.normal), j))
                .fold((f64::INFINITY, 0), |a, b| if b.0 < a.0 { b } else { a })
        };
        let scale = halfspaces.iter().map(|h| (h.offset / norm(&h.normal)).abs()).fold(1.0, f64::max);
        let mut best = (x.clone(), depth(&x).0);
        for it in 0..4000 {
            let (_, j) = depth(&x);
            let a = &halfspaces[j].normal;
            let step = scale / (10.0 + it as f64);
            let an = norm(a);
            for (xi, ai) in x.iter_mut().zip(a) {
                *xi -= ai * (step / an);
            }
            let d = depth(&x).0;
            if d > best.1 {
                best = (x.clone(), d);
            }
        }
        best
    }

    /// Signed distance to the boundary, exact for all three variants.
    pub fn signed_distance(&self, x: &[C64]) -> f64 {
        match self {
            CnDomain::Ball { center, radius } => radius - norm(&sub(x, center)),
            CnDomain::Polydisc { center, radii } => x
                .iter()
                .zip(center)
                .zip(radii)
                .map(|((xk, ck), rk)| rk - (xk - ck).norm())
                .fold(f64::INFINITY, f64::min),
            CnDomain::ConvexBody { halfspaces } => halfspaces
                .iter()
                .map(|h| (h.offset - re_inner(x, &h.normal)) / norm(&h.normal))
                .fold(f64::INFINITY, f64::min),
        }
    }

    pub fn boundary_distance(&self, x: &[C64]) -> Result<f64> {
        if x.len() != self.dim() {
            return Err(Error::DomainViolation(format!("expected a point of C^{}", self.dim())));
        }
        Ok(self.signed_distance(x).max(0.0))
    }

    pub fn contains(&self, x: &[C64]) -> bool {
        x.len() == self.dim() && self.signed_distance(x) > 0.0
    }

    /// Nearest boundary point; ties go to the lowest coordinate or
    /// half-space index (scan order).
    pub fn nearest_boundary_contact(&self, w: &[C64]) -> Result<CnContact> {
        if !self.contains(w) {
            return Err(Error::DomainViolation("point not in domain".into()));
        }
        let n = self.dim();
        let (foot, distance) = match self {
            CnDomain::Ball { center, radius } => {
                let v = sub(w, center);
                let m = norm(&v);
                let dir = if m > 0.0 { scaled(&v, 1.0 / m) } else { unit_vector(n, 0) };
                let foot = center.iter().zip(&dir).map(|(c, d)| c + d * *radius).collect();
                (foot, radius - m)
            }
            CnDomain::Polydisc { center, radii } => {
                let (k, d) = (0..n)
                    .map(|k| (k, radii[k] - (w[k] - center[k]).norm()))
                    .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
                let v = w[k] - center[k];
                let u = if v.norm() > 0.0 { v / v.norm() } else { C64::new(1.0, 0.0) };
                let mut foot = w.to_vec();
                foot[k] = center[k] + u * radii[k];
                (foot, d)
            }
            CnDomain::ConvexBody { halfspaces } => {
                let (j, d) = halfspaces
                    .iter()
                    .enumerate()
                    .map(|(j, h)| (j, (h.offset - re_inner(w, &h.normal)) / norm(&h.normal)))
                    .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
                let a = &halfspaces[j].normal;
                let an = norm(a);
                let foot = w.iter().zip(a).map(|(x, ai)| x + ai * (d / an)).collect();
                (foot, d)
            }
        };
        let inward = if distance > 0.0 { scaled(&sub(w, &foot), 1.0 / distance) } else { unit_vector(n, 0) };
        Ok(CnContact { foot, distance, inward })
    }

    /// A supporting real hyperplane at the boundary point `p`. At corners of
    /// polydiscs and convex bodies the normal is the normalized average of
    /// the active unit normals.
    pub fn supporting_hyperplane(&self, p: &[C64]) -> Result<Hyperplane> {
        let n = self.dim();
        if p.len() != n {
            return Err(Error::DomainViolation(format!("expected a point of C^{n}")));
        }
        let scale = 1.0 + norm(p);
        if self.signed_distance(p).abs() > CONTACT_TOL * scale {
            return Err(Error::DomainViolation("point is not on the boundary".into()));
        }
        let mut normal = vec![C64::new(0.0, 0.0); n];
        match self {
            CnDomain::Ball { center, radius } => {
                normal = scaled(&sub(p, center), 1.0 / radius);
            }
            CnDomain::Polydisc { center, radii } => {
                for k in 0..n {
                    let v = p[k] - center[k];
                    if (v.norm() - radii[k]).abs() <= CONTACT_TOL * scale {
                        normal[k] += v / v.norm();
                    }
                }
            }
            CnDomain::ConvexBody { halfspaces } => {
                for h in halfspaces {
                    let an = norm(&h.normal);
                    if ((h.offset - re_inner(p, &h.normal)) / an).abs() <= CONTACT_TOL * scale {
                        for (nk, ak) in normal.iter_mut().zip(&h.normal) {
                            *nk += ak / an;
                        }
                    }
                }
            }
        }
        let m = norm(&normal);
        if !(m > 0.0) {
            return Err(Error::NonConvergence("no active constraint found at boundary point".into()));
        }
        Ok(Hyperplane { point: p.to_vec(), normal: scaled(&normal, 1.0 / m) })
    }

    /// Image of the domain under the projection onto the complex line through
    /// `w` and its nearest boundary point, along the supporting complex
    /// hyperplane there.
    pub fn project_domain(&self, w: &[C64]) -> Result<Projection> {
        let contact = self.nearest_boundary_contact(w)?;
        let n = self.dim();
        match self {
            CnDomain::Ball { center, radius } => {
                let dir = scaled(&contact.inward, -1.0);
                Ok(Projection {
                    domain: PlanarDomain::disc(C64::new(0.0, 0.0), *radius)?,
                    origin: center.clone(),
                    direction: dir,
                })
            }
            CnDomain::Polydisc { center, radii } => {
                let k = (0..n).find(|&k| contact.foot[k] != w[k]).unwrap_or(0);
                Ok(Projection {
                    domain: PlanarDomain::disc(center[k], radii[k])?,
                    origin: vec![C64::new(0.0, 0.0); n],
                    direction: unit_vector(n, k),
                })
            }
            CnDomain::ConvexBody { .. } => Err(Error::Unsupported(
                "projection of a convex body is a polygon, not a catalog shape".into(),
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn ball_distance_and_contact() {
        let b = CnDomain::unit_ball(2);
        let w = [c(0.6, 0.0), c(0.0, 0.0)];
        assert!((b.boundary_distance(&w).unwrap() - 0.4).abs() < 1e-15);
        let bc = b.nearest_boundary_contact(&w).unwrap();
        assert!((norm(&sub(&bc.foot, &w)) - bc.distance).abs() < 1e-12);
        let h = b.supporting_hyperplane(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((h.normal[0] - c(1.0, 0.0)).norm() < 1e-15 && h.normal[1].norm() < 1e-15);
    }

    #[test]
    fn projections() {
        let b = CnDomain::unit_ball(2);
        let p = b.project_domain(&[c(0.9, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(p.domain, PlanarDomain::UnitDisc);
        assert!((p.project(&[c(0.9, 0.0), c(0.3, 0.1)]) - c(0.9, 0.0)).norm() < 1e-15);
        let pd = CnDomain::polydisc(vec![c(0.0, 0.0); 2], vec![1.0, 2.0]).unwrap();
        let p = pd.project_domain(&[c(0.9, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(p.domain, PlanarDomain::UnitDisc);
    }

    #[test]
    fn projected_samples_stay_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = CnDomain::ball(vec![c(0.2, -0.1), c(0.0, 0.3)], 1.5).unwrap();
        let pd = CnDomain::polydisc(vec![c(0.0, 0.0), c(1.0, 0.0)], vec![1.0, 0.5]).unwrap();
        for dom in [b, pd] {
            let w = match &dom {
                CnDomain::Ball { center, .. } => vec![center[0] + c(0.7, 0.2), center[1]],
                _ => vec![c(0.1, 0.0), c(1.3, 0.0)],
            };
            let proj = dom.project_domain(&w).unwrap();
            let mut hits = 0;
            while hits < 1000 {
                let x: Vec<C64> = (0..2).map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
                if !dom.contains(&x) {
                    continue;
                }
                hits += 1;
                assert!(proj.domain.contains(proj.project(&x)).unwrap());
            }
        }
    }

    #[test]
    fn cube_supporting_planes() {
        let cube = CnDomain::cube(2, 1.0).unwrap();
        let face = [c(1.0, 0.0), c(0.0, 0.0)];
        let h = cube.supporting_hyperplane(&face).unwrap();
        assert!((h.normal[0] - c(1.0, 0.0)).norm() < 1e-15);
        let edge = [c(1.0, 1.0), c(0.0, 0.0)];
        let h = cube.supporting_hyperplane(&edge).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert!((h.normal[0] - c(s, s)).norm() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let x: Vec<C64> = (0..2).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            assert!(h.side(&x) < 0.0);
        }
    }

    #[test]
    fn convex_body_validation() {
        let open = CnDomain::convex_body(vec![HalfSpace { normal: vec![c(1.0, 0.0)], offset: 1.0 }]);
        assert!(matches!(open, Err(Error::InvalidDomain(_))));
        let mut hs = match CnDomain::cube(1, 1.0).unwrap() {
            CnDomain::ConvexBody { halfspaces } => halfspaces,
            _ => unreachable!(),
        };
        hs[0].offset = -2.0;
        assert!(CnDomain::convex_body(hs).is_err());
        let (x, depth) = CnDomain::cube(2, 1.0).unwrap().chebyshev_center();
        assert!(depth > 0.9 && norm(&x) < 0.1);
    }
}
