use wavebound::analysis::*;
use wavebound::geometry::Wall;
use wavebound::modematch::{assemble, scan_spectrum, solve_coefficients};
use wavebound::{Geometry, ModelKind};

#[test]
fn corner_exponent_of_computed_ground_state() {
    let g = Geometry::from_lambda(0.5).unwrap();
    let s = scan_spectrum(ModelKind::A, &g, 32, 400).unwrap();
    let field = solve_coefficients(&assemble(ModelKind::A, &g, 32, s.eigenvalues[0] * g.mu()).unwrap()).unwrap();
    let radii = default_corner_radii();
    for corner in switch_points(ModelKind::A, &g) {
        let fit = corner_exponent(&field, corner, &radii).unwrap();
        assert!((fit.exponent - 0.5).abs() < 0.05, "{corner:?}: {fit:?}");
        assert!(fit.r_squared > 0.98, "{fit:?}");
    }
    let bogus = SwitchPoint { x: 0.0, wall: Wall::Bottom };
    assert!(corner_exponent(&field, bogus, &radii).is_err());
    let too_far: Vec<f64> = radii.iter().map(|r| r * 2.0).collect();
    assert!(corner_exponent(&field, switch_points(ModelKind::A, &g)[0], &too_far).is_err());
}

#[test]
fn small_sweep_is_monotone_and_bracketed() {
    let lambdas = [0.3, 0.45, 0.6, 0.75, 0.9, 1.05];
    let sweep = SweepResult::compute(ModelKind::B, &lambdas, 24, 200).unwrap();
    assert!(monotonicity_check(&sweep, 1).unwrap().ok);
    for (l, s) in sweep.lambdas.iter().zip(&sweep.spectra) {
        assert!(wavebound::bounds::validate(*l, &s.eigenvalues, 1e-9).unwrap().is_empty());
    }
    let r = scaling_check(&sweep, 0.45, 2.0, 1).unwrap();
    assert!(r.ok, "{r:?}");
    assert!(scaling_check(&sweep, 0.6, 2.0, 1).is_err());
}

#[test]
fn sweep_rejects_inconsistent_input() {
    let a = scan_spectrum(ModelKind::A, &Geometry::from_lambda(0.5).unwrap(), 8, 50).unwrap();
    let b = scan_spectrum(ModelKind::A, &Geometry::from_lambda(0.6).unwrap(), 12, 50).unwrap();
    assert!(SweepResult::new(ModelKind::A, vec![0.5, 0.6], vec![a.clone(), b]).is_err());
    assert!(SweepResult::new(ModelKind::A, vec![0.6, 0.5], vec![a.clone(), a.clone()]).is_err());
    assert!(SweepResult::new(ModelKind::B, vec![0.5], vec![a]).is_err());
}

#[test]
fn emergence_requires_an_empty_start() {
    // Model B binds at every window size, so nothing emerges inside (0.3, 0.6).
    assert!(emergence_point(ModelKind::B, 1, (0.3, 0.6), 16, 100).is_err());
    assert!(emergence_point(ModelKind::A, 0, (0.3, 0.6), 16, 100).is_err());
    assert!(has_bound_states(ModelKind::A, 0.35, 1, 32, 400).unwrap());
    assert!(!has_bound_states(ModelKind::A, 0.2, 1, 32, 400).unwrap());
}
