use proptest::prelude::*;
use std::f64::consts::FRAC_2_PI;
use wavebound::variational::*;

#[test]
fn q2_closed_form_matches_quadrature_on_fifty_points() {
    for i in 0..50 {
        let lambda = 0.02 + 0.96 * i as f64 / 49.0;
        let closed = q2_closed(lambda, 1.0).unwrap();
        let quad = q2_quadrature(lambda, 1.0).unwrap();
        assert!((closed - quad).abs() < 1e-8, "λ={lambda}: {closed} vs {quad}");
    }
}

#[test]
fn q2_reference_values() {
    let v = q2_closed(0.34, 1.0).unwrap();
    assert!(v < 0.0 && v > -0.02, "{v}");
    assert!(q2_quadrature(0.9, 1.0).unwrap() < 0.0);
    assert!(q2_quadrature(0.1, 1.0).unwrap() > 0.0);
    assert!(q2_closed(1e-4, 1.0).unwrap() > 1e3);
    assert!(q2_closed(1.0 - 1e-6, 1.0).unwrap() < -1e3);
    assert!(q2_closed(0.0, 1.0).is_err());
    assert!(q2_closed(1.0, 1.0).is_err());
}

#[test]
fn lambda2_is_the_unique_sign_change() {
    let l2 = lambda2().unwrap();
    assert!(l2 > 0.33 && l2 < 0.35, "{l2}");
    assert!(q2_closed(l2, 1.0).unwrap().abs() < 1e-9);
    let values: Vec<f64> = (0..1000)
        .map(|i| q2_closed(0.05 + 0.9 * i as f64 / 999.0, 1.0).unwrap())
        .collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]));
    for i in 0..100 {
        let l = 0.005 + 0.99 * i as f64 / 99.0;
        let q = q2_closed(l, 1.0).unwrap();
        assert_eq!(q > 0.0, l < l2, "λ={l}");
    }
}

#[test]
fn lambda1_and_kappa0() {
    let k0 = kappa0().unwrap();
    assert!(k0 > 0.25 && k0 < 0.27, "{k0}");
    assert!((konec2_rhs(k0).unwrap() - (1.0 - FRAC_2_PI)).abs() < 1e-10);
    let l1 = lambda1().unwrap();
    assert!(l1 > 0.075 && l1 < 0.085, "{l1}");
    assert!((l1 - k0 / std::f64::consts::PI).abs() < 1e-14);
    assert!((konec2_rhs(0.25).unwrap() - 0.323).abs() < 2e-3);
    assert!((konec2_rhs(0.27).unwrap() - 0.379).abs() < 2e-3);
    assert!(konec2_rhs(1e-6).unwrap().abs() < 1e-4);
    assert!(konec2_rhs(kappa_max() + 0.01).is_err());
}

#[test]
fn euler_profiles() {
    for &lambda in &[0.1, 0.34, 0.8] {
        let p = TrialProfiles::new(lambda, 1.0).unwrap();
        let at_left = p.at(-lambda);
        let at_right = p.at(lambda);
        assert!((at_left.phi.v - 1.0).abs() < 1e-10 && at_right.phi.v.abs() < 1e-10);
        assert!((at_right.psi.v - 1.0).abs() < 1e-10 && at_left.psi.v.abs() < 1e-10);
        for j in [at_left, at_right] {
            assert!(j.chi.v.abs() < 1e-10 && j.eta.v.abs() < 1e-10);
        }
        for i in 0..101 {
            let x = lambda * (-1.0 + 2.0 * i as f64 / 100.0);
            let (a, b) = (p.at(x), p.at(-x));
            assert!((a.phi.v - b.psi.v).abs() < 1e-12);
            assert!((a.chi.v + b.chi.v).abs() < 1e-12);
            assert!((a.eta.v - b.eta.v).abs() < 1e-12);
            let r = p.euler_residuals(x);
            assert!(r.iter().all(|v| v.abs() < 1e-8), "x={x}: {r:?}");
        }
    }
}

#[test]
fn model_b_certificate_is_found() {
    let c = search_certificate(0.1, 1.0).unwrap();
    assert!(c.value < 0.0, "{c:?}");
    let direct = model_b_certificate(0.1, 1.0, c.sigma, c.epsilon).unwrap();
    assert!((direct - c.value).abs() < 1e-12);
    for &delta in &[0.02, 0.5, 2.0] {
        assert!(search_certificate(delta, 1.0).unwrap().value < 0.0, "δ={delta}");
    }
    let n = certificate_norms(0.1).unwrap();
    let zero_eps = model_b_certificate(0.1, 1.0, 0.3, 0.0).unwrap();
    assert!((zero_eps - 0.3 * n.phi_prime).abs() < 1e-14 && zero_eps > 0.0);
}

proptest! {
    #[test]
    fn certificate_is_affine_in_sigma(s1 in 1e-6f64..1.0, s2 in 1e-6f64..1.0, eps in 0.0f64..1.0) {
        let n = certificate_norms(0.3).unwrap();
        let (a, b) = (certificate_value(&n, 1.0, s1, eps), certificate_value(&n, 1.0, s2, eps));
        prop_assert!(((a - b) - (s1 - s2) * n.phi_prime).abs() < 1e-12);
    }

    #[test]
    fn q2_depends_on_ratio_only(lambda in 0.05f64..0.95, d in 0.1f64..10.0) {
        let a = q2_closed(lambda, 1.0).unwrap();
        let b = q2_closed(lambda * d, d).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0));
    }
}
