use std::f64::consts::{PI, TAU};

use invmetric::conformal::{closed_map, mobius_disc_automorphism, riemann_map, ClosedKind, ConformalMap};
use invmetric::domains::{random_starlike, JordanDomain};
use invmetric::C64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn disc_point() -> impl Strategy<Value = C64> {
    (0.0..0.99f64, 0.0..TAU).prop_map(|(r, a)| C64::from_polar(r, a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn mobius_round_trip(a in disc_point(), z in disc_point()) {
        let m = mobius_disc_automorphism(a).unwrap();
        let w = m.eval(z).unwrap();
        prop_assert!(w.norm() < 1.0);
        prop_assert!((m.inverse(w).unwrap() - z).norm() <= 1e-12 / (1.0 - a.norm()));
    }

    #[test]
    fn closed_maps_round_trip(lr in -5.0..5.0f64, frac in -0.999..0.999f64) {
        // a point at angle frac·θ inside each sector, the slit plane as θ = π
        for (k, theta) in [
            (ClosedKind::Sector { theta: 0.4 }, 0.4),
            (ClosedKind::Sector { theta: 2.9 }, 2.9),
            (ClosedKind::SlitSqrt, PI),
        ] {
            let m = closed_map(k).unwrap();
            let z = C64::from_polar(lr.exp(), frac * theta);
            let w = m.eval(z).unwrap();
            let back = m.inverse(w).unwrap();
            prop_assert!((back - z).norm() <= 1e-9 * (1.0 + z.norm()), "{k:?}: {back} vs {z}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn koebe_sandwich_on_starlike_domains(seed in any::<u64>()) {
        let curve = random_starlike(&mut ChaCha8Rng::seed_from_u64(seed), 0.3);
        let d = JordanDomain::new(curve).unwrap();
        let z0 = d.curve.interior_point();
        let map = riemann_map(&d, z0).unwrap();
        let dist = d.signed_distance(z0).unwrap();
        let rho = map.conformal_radius();
        prop_assert!(dist <= rho * (1.0 + 1e-6) && rho <= 4.0 * dist * (1.0 + 1e-6), "{dist} {rho}");
        for k in 0..64 {
            let t = (k as f64 + 0.5) / 64.0;
            let v = map.boundary_value(t).unwrap().norm();
            prop_assert!((v - 1.0).abs() <= 1e-4, "|f| = {v} at t = {t}");
        }
    }
}
