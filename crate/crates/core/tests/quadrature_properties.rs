use gup_coulomb::numerics::{integrate_deformed, Quadrature, QuadratureSpec, Weight};
use gup_coulomb::states::{ml_overlap_closed, ml_overlap_quadrature, ml_position_moments};
use gup_coulomb::{Complex64, ModelParams};
use proptest::prelude::*;

fn refine_once(spec: &QuadratureSpec, accepted: usize) -> QuadratureSpec {
    QuadratureSpec {
        panels: accepted,
        ..*spec
    }
}

fn bounded(first: f64, second: f64, err: f64) -> bool {
    (first - second).abs() <= err
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn error_estimate_bounds_next_refinement(beta in 0.05f64..20.0, shift in -3.0f64..3.0, width in 0.3f64..4.0) {
        let params = ModelParams::natural(beta).unwrap();
        let spec = QuadratureSpec::default();
        let integrands: [(Weight, fn(f64, f64, f64) -> f64); 4] = [
            (Weight::InvSq, |_, _, _| 1.0),
            (Weight::InvCube, |p, _, _| p * p),
            (Weight::Inv1pBp2, |p, s, w| (-(p - s) * (p - s) / (w * w)).exp()),
            (Weight::Flat, |p, s, w| (-(p - s) * (p - s) / (w * w)).exp() * (p - s).cos()),
        ];
        for (weight, f) in integrands {
            let g = move |p: f64| f(p, shift, width);
            let first: Quadrature<f64> = integrate_deformed(g, weight, &params, &spec).unwrap();
            let second: Quadrature<f64> = integrate_deformed(g, weight, &params, &refine_once(&spec, first.panels)).unwrap();
            prop_assert!(bounded(first.value, second.value, first.err_estimate),
                "{weight:?}: {} vs {} (err {})", first.value, second.value, first.err_estimate);
        }
    }

    #[test]
    fn parallel_and_serial_agree_bitwise(beta in 0.05f64..20.0, xi in -5.0f64..5.0) {
        let params = ModelParams::natural(beta).unwrap();
        let serial = QuadratureSpec::default();
        let parallel = QuadratureSpec { parallel: true, ..serial };
        let a = ml_overlap_quadrature(xi, 0.0, &params, &serial).unwrap();
        let b = ml_overlap_quadrature(xi, 0.0, &params, &parallel).unwrap();
        prop_assert_eq!(a.value.re.to_bits(), b.value.re.to_bits());
        prop_assert_eq!(a.value.im.to_bits(), b.value.im.to_bits());
        let g = |p: f64| Complex64::new(p.sin(), p.cos()) * (-p * p).exp();
        let c: Quadrature<Complex64> = integrate_deformed(g, Weight::InvSq, &params, &serial).unwrap();
        let d: Quadrature<Complex64> = integrate_deformed(g, Weight::InvSq, &params, &parallel).unwrap();
        prop_assert_eq!(c, d);
    }

    #[test]
    fn overlap_is_even_and_matches_quadrature(a in -10.0f64..10.0, hbar in 0.5f64..3.0, beta in 0.05f64..10.0) {
        let params = ModelParams::new(hbar, 1.0, 1.0, beta).unwrap();
        let scale = hbar * beta.sqrt();
        let plus = ml_overlap_closed(a * scale, 0.0, &params).unwrap();
        let minus = ml_overlap_closed(0.0, a * scale, &params).unwrap();
        prop_assert!((plus - minus).abs() <= 1e-15 * plus.abs().max(1e-300) + 1e-300);
        let q = ml_overlap_quadrature(a * scale, 0.0, &params, &QuadratureSpec::default()).unwrap().value;
        prop_assert!((q.re - plus).abs() <= 1e-10 / scale);
        prop_assert!(q.im.abs() <= 1e-12 / scale);
    }

    #[test]
    fn ml_states_saturate_gup(xi in -5.0f64..5.0, hbar in 0.5f64..3.0, beta in 0.05f64..10.0) {
        let params = ModelParams::new(hbar, 1.0, 1.0, beta).unwrap();
        let m = ml_position_moments(xi, &params, &QuadratureSpec::default()).unwrap();
        let bound = 0.5 * hbar * (1.0 + beta * m.p_variance);
        prop_assert!((m.delta_x() * m.delta_p() / bound - 1.0).abs() <= 1e-9);
        prop_assert!((m.delta_x() / (hbar * beta.sqrt()) - 1.0).abs() <= 1e-9);
        prop_assert!((m.mean - xi).abs() <= 1e-10 * (1.0 + xi.abs()));
    }
}
