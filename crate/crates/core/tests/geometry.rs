use proptest::prelude::*;
use std::f64::consts::PI;
use wavebound::geometry::*;
use wavebound::quadrature::integrate;
use wavebound::{Geometry, ModelKind};

const FAMILIES: [ProfileKind; 3] = [ProfileKind::DnSine, ProfileKind::NdCosine, ProfileKind::NnCosine];

fn mode(kind: ProfileKind, k: usize, d: f64) -> TransverseMode {
    TransverseMode::new(Region::II, kind, k, d)
}

#[test]
fn reference_decay_rates() {
    let u0 = mode(ProfileKind::DnSine, 0, 1.0);
    assert!((decay_rate(&u0, 0.0).unwrap() - PI / 2.0).abs() < 1e-15);
    let mu = Geometry::new(1.0, 0.5).unwrap().mu();
    assert!(decay_rate(&u0, mu).is_err());
    let w1 = mode(ProfileKind::NnCosine, 1, 1.0);
    let g = decay_rate(&w1, 0.5 * mu).unwrap();
    assert!((g - (PI * PI - PI * PI / 8.0).sqrt()).abs() < 1e-14);
    assert!((g - 2.9386).abs() < 1e-4);
}

#[test]
fn gram_matrices_are_identity() {
    let d = 1.7;
    for kind in FAMILIES {
        for i in 0..8 {
            for j in 0..8 {
                let (a, b) = (mode(kind, i, d), mode(kind, j, d));
                let g = integrate(|y| a.value(y) * b.value(y), 0.0, d, 1e-13).unwrap();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((g - expect).abs() < 1e-10, "{kind:?} ({i},{j}): {g}");
            }
        }
    }
}

#[test]
fn overlaps_against_quadrature() {
    let d = 2.5;
    for tail in [ProfileKind::DnSine, ProfileKind::NdCosine] {
        for k in 0..6 {
            for m in 0..6 {
                let (t, c) = (mode(tail, k, d), mode(ProfileKind::NnCosine, m, d));
                let q = integrate(|y| t.value(y) * c.value(y), 0.0, d, 1e-14).unwrap();
                assert!((overlap(&t, &c).unwrap() - q).abs() < 1e-12, "{tail:?} {k},{m}");
            }
        }
    }
    let c00 = overlap(&mode(ProfileKind::DnSine, 0, 1.0), &mode(ProfileKind::NnCosine, 0, 1.0)).unwrap();
    assert!((c00 - 2.0 * 2f64.sqrt() / PI).abs() < 1e-15);
    assert!((c00 - 0.900316).abs() < 1e-6);
    let d00 = overlap(&mode(ProfileKind::NdCosine, 0, 1.0), &mode(ProfileKind::NnCosine, 0, 1.0)).unwrap();
    assert_eq!(c00, d00);
}

#[test]
fn parseval_sums_increase_to_one() {
    for k in 0..5 {
        let t = mode(ProfileKind::DnSine, k, 1.0);
        let mut sum = 0.0;
        let mut last = 0.0;
        for m in 0..=200 {
            sum += overlap(&t, &mode(ProfileKind::NnCosine, m, 1.0)).unwrap().powi(2);
            assert!(sum >= last);
            last = sum;
            if k == 0 && m == 1 {
                assert!((sum - 0.9907).abs() < 1e-4, "{sum}");
            }
        }
        assert!(sum >= 0.999 && sum <= 1.0 + 1e-12, "k={k}: {sum}");
    }
}

#[test]
fn reflection_maps_sine_to_cosine() {
    for k in 0..8 {
        let (u, v) = (mode(ProfileKind::DnSine, k, 1.0), mode(ProfileKind::NdCosine, k, 1.0));
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        for i in 0..=100 {
            let y = i as f64 / 100.0;
            assert!((u.value(1.0 - y) - sign * v.value(y)).abs() < 1e-12);
        }
    }
}

#[test]
fn boundary_condition_layout() {
    let g = Geometry::new(2.0, 1.0).unwrap();
    assert!((g.mu() - PI * PI / 16.0).abs() < 1e-15);
    assert_eq!(g.lambda(), 0.5);
    let delta = g.delta();
    assert!(ModelKind::A.dirichlet_at(Wall::Bottom, -1.5, delta));
    assert!(!ModelKind::A.dirichlet_at(Wall::Bottom, 0.0, delta));
    assert!(ModelKind::A.dirichlet_at(Wall::Top, 1.5, delta));
    assert!(!ModelKind::A.dirichlet_at(Wall::Top, -1.5, delta));
    assert!(ModelKind::B.dirichlet_at(Wall::Top, -1.5, delta));
    assert!(!ModelKind::B.dirichlet_at(Wall::Bottom, 5.0, delta));
    assert_eq!(ModelKind::A.profile(Region::I), ProfileKind::DnSine);
    assert_eq!(ModelKind::A.profile(Region::III), ProfileKind::NdCosine);
    assert_eq!(ModelKind::B.profile(Region::I), ProfileKind::NdCosine);
    assert_eq!("b".parse::<ModelKind>().unwrap(), ModelKind::B);
    assert!("C".parse::<ModelKind>().is_err());
    assert!(Geometry::new(1.0, 0.0).is_err());
    assert!(Geometry::new(-1.0, 0.5).is_err());
}

proptest! {
    #[test]
    fn decay_identity(k in 0usize..50, t in 0.0f64..0.999, d in 0.1f64..10.0, fam in 0usize..3) {
        let m = mode(FAMILIES[fam], k.max(if fam == 2 { 1 } else { 0 }), d);
        let e = t * PI * PI / (4.0 * d * d);
        let g = decay_rate(&m, e).unwrap();
        prop_assert!((g * g + e - m.eigenvalue()).abs() <= 1e-14 * m.eigenvalue().max(1.0));
    }

    #[test]
    fn lambda_is_a_ratio(d in 1e-3f64..1e3, l in 1e-3f64..10.0) {
        let g = Geometry::new(d, l * d).unwrap();
        prop_assert!((g.lambda() - l).abs() <= 1e-14 * l);
        prop_assert!((g.mu() * d * d - PI * PI / 4.0).abs() < 1e-13);
    }
}
