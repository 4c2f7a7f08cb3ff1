use std::f64::consts::{SQRT_2, TAU};
use std::sync::OnceLock;

use invmetric::conformal::{mobius_disc_automorphism, ConformalMap};
use invmetric::distances::{caratheodory, kobayashi_metric, lempert, DistanceKind, PlanarModel};
use invmetric::domains::{CnDomain, Domain, PlanarDomain};
use invmetric::C64;
use proptest::prelude::*;

fn disc_point() -> impl Strategy<Value = C64> {
    (0.0..0.98f64, 0.0..TAU).prop_map(|(r, a)| C64::from_polar(r, a))
}

/// A point of the annulus `1/2 < |z| < 2`.
fn annulus_point() -> impl Strategy<Value = C64> {
    (-0.68..0.68f64, 0.0..TAU).prop_map(|(s, a)| C64::from_polar(s.exp(), a))
}

fn annulus() -> &'static PlanarModel {
    static M: OnceLock<PlanarModel> = OnceLock::new();
    M.get_or_init(|| PlanarModel::new(PlanarDomain::annulus(2.0).unwrap()).unwrap())
}

/// A model and a map from the unit disc into its domain.
type Embedded = (PlanarModel, fn(C64) -> C64);

/// Planar models with closed-form or covering distances.
fn planar_models() -> Vec<Embedded> {
    let m = |d: PlanarDomain| PlanarModel::new(d).unwrap();
    vec![
        (m(PlanarDomain::UnitDisc), |u| u),
        (m(PlanarDomain::half_plane(C64::new(0.0, 1.0)).unwrap()), |u| C64::new(0.0, 1.0) * (1.0 + u) / (1.0 - u)),
        (m(PlanarDomain::sector(0.7).unwrap()), |u| ((1.0 + u) / (1.0 - u)).powf(0.7 / std::f64::consts::FRAC_PI_2)),
        (m(PlanarDomain::SlitPlane), |u| -((1.0 + u) / (1.0 - u)).powi(2)),
        (m(PlanarDomain::lens(0.8).unwrap()), |u| u * 0.5),
    ]
}

fn tri(a: f64, b: f64, c: f64) -> bool {
    a <= b + c + 1e-8 * (1.0 + a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn pseudodistance_axioms_on_planar_models(x in disc_point(), y in disc_point(), z in disc_point()) {
        for (m, into) in planar_models() {
            let (x, y, z) = (into(x), into(y), into(z));
            if m.domain().boundary_distance(x).unwrap_or(0.0) < 1e-9
                || m.domain().boundary_distance(y).unwrap_or(0.0) < 1e-9
                || m.domain().boundary_distance(z).unwrap_or(0.0) < 1e-9 {
                continue;
            }
            for kind in [DistanceKind::Carath, DistanceKind::Lempert] {
                let d = |a, b| m.distance(kind, a, b).unwrap().mid();
                let (xy, yz, xz) = (d(x, y), d(y, z), d(x, z));
                prop_assert!((xy - d(y, x)).abs() <= 1e-9 * (1.0 + xy), "{:?} symmetry", m.domain());
                prop_assert!(tri(xz, xy, yz), "{:?} triangle {xz} > {xy} + {yz}", m.domain());
                prop_assert!(d(x, x) == 0.0);
                if x != y {
                    prop_assert!(xy > 0.0);
                }
            }
        }
    }

    #[test]
    fn carath_below_lempert(x in disc_point(), y in disc_point()) {
        for (m, into) in planar_models() {
            let (x, y) = (into(x), into(y));
            let (Ok(c), Ok(l)) = (m.caratheodory(x, y), m.lempert(x, y)) else { continue };
            prop_assert!(c.lo <= l.hi + 1e-8, "{:?}", m.domain());
        }
    }

    #[test]
    fn annulus_axioms(x in annulus_point(), y in annulus_point(), z in annulus_point()) {
        let m = annulus();
        let k = |a, b| m.lempert(a, b).unwrap().hi;
        prop_assert!(tri(k(x, z), k(x, y), k(y, z)));
        prop_assert!((k(x, y) - k(y, x)).abs() <= 1e-9 * (1.0 + k(x, y)));
        let c = m.caratheodory(x, y).unwrap();
        prop_assert!(c.lo <= k(x, y) + 1e-8);
        let back = m.caratheodory(y, x).unwrap();
        prop_assert!((c.mid() - back.mid()).abs() <= 1e-9 * (1.0 + c.mid()) + c.width() + back.width());
    }

    #[test]
    fn annulus_symmetries(x in annulus_point(), y in annulus_point(), a in 0.0..TAU) {
        let m = annulus();
        let rot = C64::from_polar(1.0, a);
        let k = m.lempert(x, y).unwrap().hi;
        prop_assert!((m.lempert(x * rot, y * rot).unwrap().hi - k).abs() <= 1e-9 * (1.0 + k));
        prop_assert!((m.lempert(1.0 / x, 1.0 / y).unwrap().hi - k).abs() <= 1e-9 * (1.0 + k));
        let c = m.caratheodory(x, y).unwrap();
        for (p, q) in [(x * rot, y * rot), (1.0 / x, 1.0 / y)] {
            let v = m.caratheodory(p, q).unwrap();
            prop_assert!((v.mid() - c.mid()).abs() <= 1e-9 * (1.0 + c.mid()) + v.width() + c.width());
        }
    }

    #[test]
    fn disc_automorphisms_preserve_distance(a in disc_point(), z in disc_point(), w in disc_point()) {
        let phi = mobius_disc_automorphism(a).unwrap();
        let m = PlanarModel::new(PlanarDomain::UnitDisc).unwrap();
        let before = m.caratheodory(z, w).unwrap().lo;
        let after = m.caratheodory(phi.eval(z).unwrap(), phi.eval(w).unwrap()).unwrap().lo;
        prop_assert!((before - after).abs() <= 1e-9 * (1.0 + before), "{before} vs {after}");
    }

    #[test]
    fn inclusion_shrinks_distances(z in disc_point(), w in disc_point()) {
        let unit = PlanarModel::new(PlanarDomain::UnitDisc).unwrap();
        let big = PlanarModel::new(PlanarDomain::disc(C64::new(0.0, 0.0), 2.0).unwrap()).unwrap();
        let lens = PlanarModel::new(PlanarDomain::lens(0.8).unwrap()).unwrap();
        for kind in [DistanceKind::Carath, DistanceKind::Lempert] {
            let inner = unit.distance(kind, z, w).unwrap().hi;
            prop_assert!(big.distance(kind, z, w).unwrap().lo <= inner + 1e-8);
            let (p, q) = (z * 0.5, w * 0.5);
            if lens.domain().contains(p).unwrap() && lens.domain().contains(q).unwrap() {
                prop_assert!(unit.distance(kind, p, q).unwrap().lo <= lens.distance(kind, p, q).unwrap().hi + 1e-8);
            }
        }
    }

    #[test]
    fn annulus_inside_its_disc(x in annulus_point(), y in annulus_point()) {
        let disc = PlanarModel::new(PlanarDomain::disc(C64::new(0.0, 0.0), 2.0).unwrap()).unwrap();
        let m = annulus();
        prop_assert!(disc.caratheodory(x, y).unwrap().lo <= m.caratheodory(x, y).unwrap().hi + 1e-8);
        prop_assert!(disc.lempert(x, y).unwrap().lo <= m.lempert(x, y).unwrap().hi + 1e-8);
    }

    #[test]
    fn kobayashi_metric_below_the_distance_bound(z in disc_point(), a in 0.0..TAU) {
        let x = C64::from_polar(1.0, a);
        for (m, into) in planar_models() {
            let p = into(z);
            let Ok(d) = m.domain().boundary_distance(p) else { continue };
            if d < 1e-9 {
                continue;
            }
            let k = m.kobayashi(p, x).unwrap();
            prop_assert!(k <= 1.0 / d + 1e-9, "{:?}: {k} > {}", m.domain(), 1.0 / d);
        }
        let p = C64::from_polar(0.55 + 1.3 * (0.5 + 0.5 * a.sin()), a);
        let d = annulus().domain().boundary_distance(p).unwrap();
        prop_assert!(annulus().kobayashi(p, x).unwrap() <= 1.0 / d + 1e-9);
    }

    #[test]
    fn lempert_at_most_four_bergman_on_the_disc(z in disc_point(), w in disc_point()) {
        let m = PlanarModel::new(PlanarDomain::UnitDisc).unwrap();
        let k = m.lempert(z, w).unwrap().hi;
        let b = m.bergman_distance(z, w).unwrap().lo;
        prop_assert!(k <= 4.0 * b + 1e-6);
        prop_assert!((b - SQRT_2 * k).abs() <= 1e-9 * (1.0 + k));
    }

    #[test]
    fn cn_axioms(a in disc_point(), b in disc_point(), c in disc_point(), d in disc_point(), e in disc_point(), f in disc_point()) {
        let doms: Vec<Domain> = vec![
            CnDomain::unit_ball(2).into(),
            CnDomain::polydisc(vec![C64::new(0.0, 0.0); 2], vec![1.0, 1.0]).unwrap().into(),
        ];
        let s = 1.0 / SQRT_2;
        let (x, y, z) = (vec![a * s, b * s], vec![c * s, d * s], vec![e * s, f * s]);
        for dom in &doms {
            let dist = |p: &[C64], q: &[C64]| caratheodory(dom, p, q).unwrap().mid();
            prop_assert!(tri(dist(&x, &z), dist(&x, &y), dist(&y, &z)));
            prop_assert!((dist(&x, &y) - dist(&y, &x)).abs() <= 1e-9 * (1.0 + dist(&x, &y)));
            prop_assert!(caratheodory(dom, &x, &y).unwrap().lo <= lempert(dom, &x, &y).unwrap().hi + 1e-8);
            let v = vec![C64::new(1.0, 0.0), C64::new(0.0, 1.0)];
            let d0 = dom.boundary_distance(&x).unwrap();
            prop_assert!(kobayashi_metric(dom, &x, &v).unwrap() <= SQRT_2 / d0 + 1e-9);
        }
    }
}
