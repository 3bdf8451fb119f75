use interfam::{mode, mode_general, moment_exists, Distribution, ExtendedP, IFParams, ModeResult};
use proptest::prelude::*;

fn p_strategy() -> impl Strategy<Value = ExtendedP> {
    prop_oneof![Just(ExtendedP::Finite(0.0)), (0.01f64..50.0).prop_map(ExtendedP::Finite), Just(ExtendedP::Infinite),]
}

fn params_strategy() -> impl Strategy<Value = IFParams> {
    (p_strategy(), 0.2f64..4.0, any::<bool>(), 0.1f64..100.0, 0.3f64..6.0, 0.0f64..10.0)
        .prop_map(|(p, b, neg, c, q, x0)| IFParams::new(p, if neg { -b } else { b }, c, q, x0))
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn hazard_times_survival_is_density(params in params_strategy(), y in 0.001f64..0.999) {
        let d = Distribution::new(params).unwrap();
        let x = d.quantile(y).unwrap();
        prop_assume!(x > params.x0);
        let s = d.survival(x).unwrap();
        let h = d.hazard(x).unwrap();
        prop_assert!(close(h * s, d.pdf(x).unwrap(), 1e-9), "h={h} s={s} f={}", d.pdf(x).unwrap());
    }

    #[test]
    fn cdf_and_survival_are_complements(params in params_strategy(), y in 0.0f64..1.0) {
        let d = Distribution::new(params).unwrap();
        let x = d.quantile(y).unwrap();
        let f = d.cdf(x).unwrap();
        let s = d.survival(x).unwrap();
        prop_assert!((f + s - 1.0).abs() <= 4.0 * f64::EPSILON);
        prop_assert!((0.0..=1.0).contains(&f));
    }

    #[test]
    fn cdf_is_monotone(params in params_strategy(), a in 0.0f64..50.0, w in 0.0f64..50.0) {
        let d = Distribution::new(params).unwrap();
        let (lo, hi) = (params.x0 + a * params.c / 10.0, params.x0 + (a + w) * params.c / 10.0);
        prop_assert!(d.cdf(lo).unwrap() <= d.cdf(hi).unwrap());
        prop_assert!(d.pdf(lo).unwrap() >= 0.0);
    }

    #[test]
    fn quantile_round_trip(params in params_strategy(), y in 1e-12f64..(1.0 - 1e-12)) {
        let d = Distribution::new(params).unwrap();
        let back = d.cdf_excess(d.quantile_excess(y).unwrap()).unwrap();
        prop_assert!((back - y).abs() <= 1e-12, "{back} vs {y}");
    }

    #[test]
    fn quantile_is_monotone(params in params_strategy(), y in 0.0f64..1.0, dy in 0.0f64..0.5) {
        let d = Distribution::new(params).unwrap();
        let hi = (y + dy).min(1.0);
        prop_assert!(d.quantile(y).unwrap() <= d.quantile(hi).unwrap());
    }

    /// 1/U for a standardised IF variable U with parameter b is the
    /// standardised variable with -b.
    #[test]
    fn negating_b_inverts_the_excess(params in params_strategy(), t in -8.0f64..8.0) {
        let d = Distribution::new(params).unwrap();
        let inv = Distribution::new(params.inverse()).unwrap();
        let c = params.c;
        let u = t.exp();
        let lhs = inv.cdf_excess(c * u).unwrap();
        let rhs = d.survival_excess(c / u).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-13 + 1e-12 * lhs.abs(), "{lhs} vs {rhs}");
    }

    #[test]
    fn scale_and_location(params in params_strategy(), t in 0.01f64..20.0, k in 0.1f64..10.0, s in 0.0f64..100.0) {
        let d = Distribution::new(params).unwrap();
        let scaled = Distribution::new(IFParams { c: params.c * k, x0: params.x0 + s, ..params }).unwrap();
        let x = params.x0 + t * params.c;
        let x_scaled = params.x0 + s + t * params.c * k;
        prop_assert!(close(scaled.cdf(x_scaled).unwrap(), d.cdf(x).unwrap(), 1e-10));
    }

    #[test]
    fn moments_exist_downward(params in params_strategy(), r in 2u32..6) {
        if moment_exists(&params, r).unwrap().exists {
            prop_assert!(moment_exists(&params, r - 1).unwrap().exists);
        }
    }

    #[test]
    fn if3_mode_solver_matches_closed_form(p in 0.05f64..200.0, q in 0.3f64..6.0, c in 0.5f64..50.0) {
        let params = IFParams::new(p, 1.0, c, q, 0.0);
        let closed = match mode(&params).unwrap() {
            ModeResult::Interior { x, .. } => x,
            other => panic!("{other:?}"),
        };
        match mode_general(&params).unwrap().mode {
            ModeResult::Interior { x, .. } => prop_assert!((x - closed).abs() <= 1e-9 * c, "{x} vs {closed}"),
            other => prop_assert!(false, "{other:?}"),
        }
    }

    #[test]
    fn median_is_half_quantile(params in params_strategy()) {
        let d = Distribution::new(params).unwrap();
        prop_assert!(close(d.median(), d.quantile(0.5).unwrap(), 1e-14));
    }
}
