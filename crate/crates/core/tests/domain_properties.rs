use std::f64::consts::{PI, TAU};

use invmetric::domains::{two_disc_hull, CnDomain, Domain, PlanarDomain};
use invmetric::C64;
use proptest::prelude::*;

fn disc_point() -> impl Strategy<Value = C64> {
    (0.0..0.999f64, 0.0..TAU).prop_map(|(r, a)| C64::from_polar(r, a))
}

fn planar_domains() -> Vec<PlanarDomain> {
    vec![
        PlanarDomain::UnitDisc,
        PlanarDomain::disc(C64::new(1.0, -2.0), 3.0).unwrap(),
        PlanarDomain::half_plane(C64::new(0.6, 0.8)).unwrap(),
        PlanarDomain::sector(1.1).unwrap(),
        PlanarDomain::sector(2.6).unwrap(),
        PlanarDomain::SlitPlane,
        PlanarDomain::annulus(2.5).unwrap(),
        PlanarDomain::lens(0.7).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn distance_is_positive_inside(re in -4.0..4.0f64, im in -4.0..4.0f64) {
        let z = C64::new(re, im);
        for d in planar_domains() {
            let Ok(dist) = d.boundary_distance(z) else { continue };
            if d.contains(z).unwrap() {
                prop_assert!(dist > 0.0, "{d:?} {z}");
            }
        }
    }

    #[test]
    fn contact_agrees_with_distance(re in -4.0..4.0f64, im in -4.0..4.0f64) {
        let w = C64::new(re, im);
        for d in planar_domains() {
            if !d.contains(w).unwrap() {
                continue;
            }
            let c = d.nearest_boundary_contact(w).unwrap();
            let dist = d.boundary_distance(w).unwrap();
            prop_assert!(((w - c.foot).norm() - dist).abs() <= 1e-10 * (1.0 + dist), "{d:?} {w}");
            prop_assert!(d.boundary_distance(c.foot).unwrap() <= 1e-10 * (1.0 + c.foot.norm()));
        }
    }

    #[test]
    fn hull_contains_the_segment_band(
        z in disc_point(), w in disc_point(), dz in 0.01..1.0f64, dw in 0.01..1.0f64
    ) {
        prop_assume!((z - w).norm() > 1e-6);
        let h = two_disc_hull(z, dz, w, dw).unwrap();
        for k in 0..64 {
            let t = k as f64 / 63.0;
            let p = z + (w - z) * t;
            let d = h.boundary_distance(p).unwrap();
            prop_assert!(d >= (1.0 - t) * dz + t * dw - 1e-12, "t = {t}: {d}");
        }
    }

    #[test]
    fn cn_contact_agrees_with_distance(
        a in disc_point(), b in disc_point(), scale in 0.05..1.0f64
    ) {
        let doms: Vec<CnDomain> = vec![
            CnDomain::unit_ball(2),
            CnDomain::polydisc(vec![C64::new(0.0, 0.0); 2], vec![1.0, 0.5]).unwrap(),
            CnDomain::cube(2, 1.0).unwrap(),
        ];
        for d in doms {
            let x = vec![a * (scale / 2.0), b * (scale / 4.0)];
            if !d.contains(&x) {
                continue;
            }
            let c = d.nearest_boundary_contact(&x).unwrap();
            let gap: f64 = x.iter().zip(&c.foot).map(|(p, q)| (p - q).norm_sqr()).sum::<f64>().sqrt();
            let dist = d.boundary_distance(&x).unwrap();
            prop_assert!((gap - dist).abs() <= 1e-10, "{d:?}: {gap} vs {dist}");
        }
    }

    #[test]
    fn projections_land_in_their_planar_domain(
        a in disc_point(), b in disc_point(), u in disc_point(), v in disc_point()
    ) {
        let doms: Vec<Domain> = vec![
            CnDomain::unit_ball(2).into(),
            CnDomain::polydisc(vec![C64::new(0.0, 0.0); 2], vec![1.0, 0.5]).unwrap().into(),
        ];
        for d in &doms {
            let w = vec![a * 0.6, b * 0.3];
            let x = vec![u * 0.6, v * 0.3];
            if !d.contains(&w).unwrap() || !d.contains(&x).unwrap() {
                continue;
            }
            let p = d.project_domain(&w).unwrap();
            prop_assert!(p.domain.contains(p.project(&x)).unwrap(), "{d:?}");
        }
    }
}

#[test]
fn sector_contact_tie_break_is_deterministic() {
    // two rays are equally near; the tie-break is deterministic
    let d = PlanarDomain::sector(PI / 4.0).unwrap();
    let a = d.nearest_boundary_contact(C64::new(1.0, 0.0)).unwrap();
    let b = d.nearest_boundary_contact(C64::new(1.0, 0.0)).unwrap();
    assert_eq!(a.foot, b.foot);
}
