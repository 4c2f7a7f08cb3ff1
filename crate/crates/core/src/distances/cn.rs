//! Distances on balls, polydiscs and convex bodies in `C^n`.
//!
//! On convex domains `c = l`. Balls and polydiscs have closed forms. A convex
//! body gets an enclosure: the upper end is the distance in the two-disc hull
//! inside the complex line through `z` and `w` (contained in the domain), the
//! lower end the best of the facet projections `x ↦ b_j - ⟨x, a_j⟩` into the
//! right half-plane and `½ |log(d(z)/d(w))|`.

use crate::distances::{atanh_split, disc_m, half_plane_distance, CertifiedValue, Method, ModelOptions, PlanarModel};
use crate::domains::{inner, norm, sub, two_disc_hull, CnDomain, PlanarDomain};
use crate::{Error, Result, C64};

fn check_dims(d: &CnDomain, pts: &[&[C64]]) -> Result<()> {
    for p in pts {
        if p.len() != d.dim() {
            return Err(Error::DomainViolation(format!("expected {} coordinates, got {}", d.dim(), p.len())));
        }
    }
    Ok(())
}

fn check_inside(d: &CnDomain, pts: &[&[C64]]) -> Result<()> {
    check_dims(d, pts)?;
    for p in pts {
        if !d.contains(p) {
            return Err(Error::DomainViolation(format!("point {p:?} not in the domain")));
        }
    }
    Ok(())
}

/// Distance in the ball `B(center, radius)`: `tanh⁻¹` of the Möbius-invariant
/// pseudodistance, with
/// `m² = (|a - b|² - Σ_{i<j} |a_i b_j - a_j b_i|²) / |1 - ⟨a, b⟩|²` and
/// `1 - m² = (1 - |a|²)(1 - |b|²)/|1 - ⟨a, b⟩|²` for the rescaled points.
pub fn ball_distance(center: &[C64], radius: f64, z: &[C64], w: &[C64]) -> f64 {
    let scale = |p: &[C64]| -> Vec<C64> { p.iter().zip(center).map(|(x, c)| (x - c) / radius).collect() };
    let (a, b) = (scale(z), scale(w));
    if a.len() == 1 {
        let (m, q) = disc_m(a[0], b[0]);
        return atanh_split(m, q);
    }
    let den = (C64::new(1.0, 0.0) - inner(&a, &b)).norm_sqr();
    let mut cross = 0.0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            cross += (a[i] * b[j] - a[j] * b[i]).norm_sqr();
        }
    }
    let m2 = ((norm(&sub(&a, &b)).powi(2) - cross) / den).max(0.0);
    let oms = |p: &[C64]| {
        let n = norm(p);
        (1.0 - n) * (1.0 + n)
    };
    atanh_split(m2.sqrt(), oms(&a) * oms(&b) / den)
}

/// Distance in a polydisc: the largest coordinate disc distance.
pub fn polydisc_distance(center: &[C64], radii: &[f64], z: &[C64], w: &[C64]) -> f64 {
    (0..z.len())
        .map(|i| {
            let (m, q) = disc_m((z[i] - center[i]) / radii[i], (w[i] - center[i]) / radii[i]);
            atanh_split(m, q)
        })
        .fold(0.0, f64::max)
}

/// Closed-form `c = l` on balls and polydiscs.
pub fn cn_model_distance(d: &CnDomain, z: &[C64], w: &[C64]) -> Result<f64> {
    check_inside(d, &[z, w])?;
    match d {
        CnDomain::Ball { center, radius } => Ok(ball_distance(center, *radius, z, w)),
        CnDomain::Polydisc { center, radii } => Ok(polydisc_distance(center, radii, z, w)),
        CnDomain::ConvexBody { .. } => {
            Err(Error::Unsupported("no closed form on a general convex body; use the enclosure".into()))
        }
    }
}

/// `κ(z; X)` on balls and polydiscs.
pub fn cn_kobayashi_metric(d: &CnDomain, z: &[C64], x: &[C64]) -> Result<f64> {
    check_inside(d, &[z])?;
    check_dims(d, &[x])?;
    match d {
        CnDomain::Ball { center, radius } => {
            let a: Vec<C64> = z.iter().zip(center).map(|(p, c)| (p - c) / radius).collect();
            let v: Vec<C64> = x.iter().map(|p| p / radius).collect();
            let n = norm(&a);
            let oms = (1.0 - n) * (1.0 + n);
            Ok((norm(&v).powi(2) / oms + inner(&v, &a).norm_sqr() / (oms * oms)).sqrt())
        }
        CnDomain::Polydisc { center, radii } => Ok((0..z.len())
            .map(|i| {
                let u = (z[i] - center[i]) / radii[i];
                let n = u.norm();
                x[i].norm() / (radii[i] * (1.0 - n) * (1.0 + n))
            })
            .fold(0.0, f64::max)),
        CnDomain::ConvexBody { .. } => Err(Error::Unsupported("Kobayashi metric of a convex body".into())),
    }
}

/// `l` of the two-disc hull of `Disc(0, d_z)` and `Disc(dist, d_w)` between
/// its centers. Every convex domain containing the two balls contains this
/// hull in the complex line through the points, so the value bounds `l_D`
/// from above.
pub fn hull_lempert(dist: f64, dz: f64, dw: f64, opts: ModelOptions) -> Result<CertifiedValue> {
    let (z, w) = (C64::new(0.0, 0.0), C64::new(dist, 0.0));
    if dist == 0.0 {
        return Ok(CertifiedValue::exact(0.0, Method::HullUpper, 0.0));
    }
    let hull = two_disc_hull(z, dz, w, dw)?;
    let v = match &hull {
        // containment: the hull is the larger disc
        PlanarDomain::Disc { .. } | PlanarDomain::UnitDisc => PlanarModel::new(hull)?.lempert(z, w)?,
        _ => PlanarModel::with_options(hull, opts)?.lempert(z, w)?,
    };
    Ok(CertifiedValue::exact(v.lo, Method::HullUpper, v.err))
}

/// Lower bound for `c_D` on a convex body from its facets and the
/// boundary-distance estimate.
fn convex_lower(d: &CnDomain, z: &[C64], w: &[C64], dz: f64, dw: f64) -> Result<f64> {
    let mut lo = 0.5 * (dz / dw).ln().abs();
    if let CnDomain::ConvexBody { halfspaces } = d {
        for h in halfspaces {
            // holomorphic x ↦ b - ⟨x, a⟩ maps the body into Re > 0
            let f = |x: &[C64]| C64::new(h.offset, 0.0) - inner(x, &h.normal);
            let (fz, fw) = (f(z), f(w));
            // rotate the right half-plane onto the upper one
            let i = C64::new(0.0, 1.0);
            lo = lo.max(half_plane_distance(i * fz, i * fw)?);
        }
    }
    Ok(lo)
}

/// Enclosure `[lower, hull]` of `c_D = l_D` on any convex `C^n` domain.
pub fn convex_interval(d: &CnDomain, z: &[C64], w: &[C64], opts: ModelOptions) -> Result<CertifiedValue> {
    check_inside(d, &[z, w])?;
    let dz = d.boundary_distance(z)?;
    let dw = d.boundary_distance(w)?;
    let hi = hull_lempert(norm(&sub(z, w)), dz, dw, opts)?;
    let lo = convex_lower(d, z, w, dz, dw)?.min(hi.hi);
    CertifiedValue::interval(lo, hi.hi, Method::Interval)
}

/// Domain-level dispatch: closed forms where available, the enclosure with
/// the given method tag on convex bodies.
pub(crate) fn cn_distance(d: &CnDomain, z: &[C64], w: &[C64], method: Method) -> Result<CertifiedValue> {
    match d {
        CnDomain::ConvexBody { .. } => {
            let mut v = convex_interval(d, z, w, ModelOptions::default())?;
            v.method = method;
            Ok(v)
        }
        _ => Ok(CertifiedValue::exact(cn_model_distance(d, z, w)?, Method::ClosedForm, 0.0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distances::poincare_distance;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_ball_point(rng: &mut ChaCha8Rng, dim: usize, rad: f64) -> Vec<C64> {
        let v: Vec<C64> = (0..dim).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let n = norm(&v);
        let s = rad * rng.gen::<f64>().powf(1.0 / (2 * dim) as f64) / n;
        v.into_iter().map(|x| x * s).collect()
    }

    #[test]
    fn documented_values() {
        let b = CnDomain::unit_ball(2);
        let o = [c(0.0, 0.0), c(0.0, 0.0)];
        let v = cn_model_distance(&b, &o, &[c(0.5, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((v - 0.5f64.atanh()).abs() < 1e-15);
        let p = CnDomain::polydisc(o.to_vec(), vec![1.0, 1.0]).unwrap();
        let v = cn_model_distance(&p, &o, &[c(0.5, 0.0), c(0.9, 0.0)]).unwrap();
        assert!((v - 0.9f64.atanh()).abs() < 1e-15);
        assert_eq!(cn_model_distance(&b, &o, &o).unwrap(), 0.0);
    }

    #[test]
    fn ball_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let b = CnDomain::unit_ball(3);
        for _ in 0..50 {
            let z = random_ball_point(&mut rng, 3, 0.99);
            let w = random_ball_point(&mut rng, 3, 0.99);
            let d = cn_model_distance(&b, &z, &w).unwrap();
            // unitary invariance: a coordinate permutation with phases
            let u = |p: &[C64]| vec![p[2] * C64::from_polar(1.0, 0.3), p[0], p[1] * C64::from_polar(1.0, -1.0)];
            assert!((cn_model_distance(&b, &u(&z), &u(&w)).unwrap() - d).abs() < 1e-12 * (1.0 + d));
            // restriction to a complex line through the origin is the disc distance
            let dir = random_ball_point(&mut rng, 3, 1.0);
            let dir: Vec<C64> = dir.iter().map(|x| x / norm(&dir)).collect();
            let (s, t) = (c(0.3, -0.2), c(-0.7, 0.5));
            let zs: Vec<C64> = dir.iter().map(|x| x * s).collect();
            let zt: Vec<C64> = dir.iter().map(|x| x * t).collect();
            let line = cn_model_distance(&b, &zs, &zt).unwrap();
            assert!((line - poincare_distance(s, t).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn ball_metric_is_infinitesimal_distance() {
        let b = CnDomain::unit_ball(2);
        let z = [c(0.3, 0.1), c(-0.2, 0.4)];
        let x = [c(0.5, -0.1), c(0.2, 0.7)];
        let h = 1e-6;
        let zh: Vec<C64> = z.iter().zip(&x).map(|(a, v)| a + v * h).collect();
        let fd = cn_model_distance(&b, &z, &zh).unwrap() / h;
        let k = cn_kobayashi_metric(&b, &z, &x).unwrap();
        assert!((fd - k).abs() < 1e-5 * k, "{fd} {k}");
    }

    #[test]
    fn hull_bounds_ball_distance() {
        let b = CnDomain::unit_ball(2);
        let z = [c(0.2, 0.0), c(0.1, 0.3)];
        let w = [c(-0.5, 0.2), c(0.0, -0.4)];
        let exact = cn_model_distance(&b, &z, &w).unwrap();
        let dz = b.boundary_distance(&z).unwrap();
        let dw = b.boundary_distance(&w).unwrap();
        let hull = hull_lempert(norm(&sub(&z, &w)), dz, dw, ModelOptions::default()).unwrap();
        assert!(exact <= hull.hi + 1e-6, "{exact} {}", hull.hi);
    }

    #[test]
    fn cube_enclosure() {
        let cube = CnDomain::cube(2, 1.0).unwrap();
        let z = [c(0.1, 0.2), c(-0.3, 0.0)];
        let w = [c(0.8, -0.1), c(0.2, 0.5)];
        let v = convex_interval(&cube, &z, &w, ModelOptions::default()).unwrap();
        assert!(v.lo > 0.0 && v.lo <= v.hi, "{v:?}");
        assert!(matches!(cn_model_distance(&cube, &z, &w), Err(Error::Unsupported(_))));
    }
}
