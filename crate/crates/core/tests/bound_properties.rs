use invmetric::bounds::*;
use proptest::prelude::*;

fn dist() -> impl Strategy<Value = f64> {
    1e-6..10.0f64
}

fn bdist() -> impl Strategy<Value = f64> {
    (-9.0..1.0f64).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn tanh_form_implies_log_form(a in dist(), dz in bdist(), dw in bdist(), c in 1.0..50.0f64) {
        let (lo, hi) = sandwich_atanh(a, dz, dw, c).unwrap();
        let (cl, cu) = log_constants(c);
        let log_lo = sandwich_log(a, dz, dw, cl).unwrap().0;
        let log_hi = sandwich_log(a, dz, dw, cu).unwrap().1;
        prop_assert!(log_lo <= lo * (1.0 + 1e-12) + 1e-300, "{log_lo} > {lo}");
        prop_assert!(hi <= log_hi * (1.0 + 1e-12), "{hi} > {log_hi}");
    }

    #[test]
    fn log_form_implies_tanh_form(a in dist(), dz in bdist(), dw in bdist(), c in 1.0..50.0f64) {
        let (lo, hi) = sandwich_log(a, dz, dw, c).unwrap();
        let (tl, tu) = tanh_constants(c);
        let t_lo = sandwich_atanh(a, dz, dw, tl).unwrap().0;
        let t_hi = sandwich_atanh(a, dz, dw, tu).unwrap().1;
        prop_assert!(t_lo <= lo * (1.0 + 1e-12), "{t_lo} > {lo}");
        prop_assert!(hi <= t_hi * (1.0 + 1e-12), "{hi} > {t_hi}");
    }

    #[test]
    fn atanh_form_is_the_tanh_form(a in dist(), dz in 1e-3..1.0f64, dw in 1e-3..1.0f64, c in 1.0..50.0f64) {
        let (lo, hi) = sandwich(a, dz, dw, c).unwrap();
        let (alo, ahi) = sandwich_atanh(a, dz, dw, c).unwrap();
        prop_assert!(lo <= hi && alo <= ahi);
        // tanh⁻¹ loses precision only when m is within rounding of 1
        if hi < 1.0 - 1e-6 {
            prop_assert!((alo - lo.atanh()).abs() <= 1e-9 * (1.0 + alo));
            prop_assert!((ahi - hi.atanh()).abs() <= 1e-9 * (1.0 + ahi));
        }
    }

    #[test]
    fn sandwich_widens_with_the_constant(a in dist(), dz in bdist(), dw in bdist(), c in 1.0..50.0f64, k in 1.0..4.0f64) {
        let (lo, hi) = sandwich_atanh(a, dz, dw, c).unwrap();
        let (lo2, hi2) = sandwich_atanh(a, dz, dw, c * k).unwrap();
        prop_assert!(lo2 <= lo && hi <= hi2 && lo <= hi);
    }

    #[test]
    fn lower_bounds_move_with_the_distances(dz in bdist(), dw in bdist(), k in 1.0..100.0f64) {
        for f in [bound_support_lower, bound_koebe_lower] {
            prop_assert!(f(dz * k, dw).unwrap() >= f(dz, dw).unwrap());
            prop_assert!(f(dz, dw * k).unwrap() <= f(dz, dw).unwrap());
        }
        // after clamping at zero, as the suites compare them
        prop_assert!(bound_koebe_lower(dz, dw).unwrap().max(0.0) <= bound_support_lower(dz, dw).unwrap().max(0.0));
    }

    #[test]
    fn convex_upper_is_monotone(a in dist(), dz in bdist(), dw in bdist(), k in 1.0..100.0f64) {
        let r = bound_convex_upper(a, dz, dw).unwrap();
        prop_assert!(bound_convex_upper(a * k, dz, dw).unwrap() >= r);
        prop_assert!(bound_convex_upper(a, dz * k, dw).unwrap() <= r * (1.0 + 1e-12));
        prop_assert!(bound_convex_upper(a, dz, dw * k).unwrap() <= r * (1.0 + 1e-12));
        // between the segment length over the larger and the smaller distance
        prop_assert!(r <= a / dz.min(dw) * (1.0 + 1e-12) && r >= a / dz.max(dw) * (1.0 - 1e-12));
    }

    #[test]
    fn convex_upper_is_symmetric(a in dist(), dz in bdist(), dw in bdist()) {
        let (x, y) = (bound_convex_upper(a, dz, dw).unwrap(), bound_convex_upper(a, dw, dz).unwrap());
        prop_assert!((x - y).abs() <= 1e-12 * x);
    }

    #[test]
    fn fit_finds_the_threshold(xs in prop::collection::vec(0.0..1e3f64, 1..40), floor in 0.0..2.0f64) {
        let top = xs.iter().cloned().fold(floor, f64::max);
        let f = fit_min_constant(floor, 0.0, |c| Ok(xs.iter().map(|x| c - x).collect())).unwrap();
        prop_assert!(f.constant >= top && f.worst_margin >= 0.0);
        prop_assert!(f.constant <= top * (1.0 + 1e-12) + 1e-12);
    }
}
