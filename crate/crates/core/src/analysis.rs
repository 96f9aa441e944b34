//! Diagnostics on computed spectra and fields: corner exponents, monotonicity
//! in λ, the scaling sandwich, emergence points and the threshold summary.

use crate::geometry::{Geometry, ModelKind, Wall};
use crate::modematch::{least_squares_slope, scan_spectrum, EigenField, Spectrum};
use crate::roots::bisect_sign;
use crate::{variational, Error, Result};

/// Eigenvalues closer to μ than this (units of μ) do not count as bound.
pub const EMERGENCE_GAP: f64 = 1e-5;
pub const EMERGENCE_TOL: f64 = 1e-4;
pub const MONOTONE_TOL: f64 = 1e-6;

/// Spectra over a λ grid at a common truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub model: ModelKind,
    pub modes: usize,
    pub lambdas: Vec<f64>,
    pub spectra: Vec<Spectrum>,
}

impl SweepResult {
    pub fn new(model: ModelKind, lambdas: Vec<f64>, spectra: Vec<Spectrum>) -> Result<Self> {
        if lambdas.len() != spectra.len() || lambdas.is_empty() {
            return Err(Error::InvalidArgument("one spectrum per lambda required".into()));
        }
        if lambdas.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidArgument("lambda grid must be strictly increasing".into()));
        }
        let modes = spectra[0].modes;
        if spectra.iter().any(|s| s.modes != modes || s.model != model) {
            return Err(Error::InvalidArgument("spectra must share model and truncation".into()));
        }
        Ok(Self {
            model,
            modes,
            lambdas,
            spectra,
        })
    }

    /// Scans every λ in order.
    pub fn compute(model: ModelKind, lambdas: &[f64], modes: usize, grid_points: usize) -> Result<Self> {
        let spectra = lambdas
            .iter()
            .map(|&l| scan_spectrum(model, &Geometry::from_lambda(l)?, modes, grid_points))
            .collect::<Result<Vec<_>>>()?;
        Self::new(model, lambdas.to_vec(), spectra)
    }

    /// `μ_n(λ_i)/μ`, or 1 (the threshold) when the branch has not emerged.
    pub fn branch_value(&self, i: usize, branch: usize) -> f64 {
        self.spectra[i].eigenvalues.get(branch - 1).copied().unwrap_or(1.0)
    }

    /// Linear interpolation of a branch at `lambda`, with an error bound from
    /// the neighbouring second difference.
    pub fn interpolate(&self, lambda: f64, branch: usize) -> Result<(f64, f64)> {
        let ls = &self.lambdas;
        let (first, last) = (ls[0], ls[ls.len() - 1]);
        if !(lambda >= first - 1e-12 && lambda <= last + 1e-12) {
            return Err(Error::InvalidArgument(format!(
                "lambda {lambda} outside sweep range [{first}, {last}]"
            )));
        }
        if let Some(i) = ls.iter().position(|&l| (l - lambda).abs() <= 1e-12 * l.max(1.0)) {
            return Ok((self.branch_value(i, branch), 0.0));
        }
        let i = ls.partition_point(|&l| l < lambda) - 1;
        let (l0, l1) = (ls[i], ls[i + 1]);
        let (v0, v1) = (self.branch_value(i, branch), self.branch_value(i + 1, branch));
        let t = (lambda - l0) / (l1 - l0);
        let value = v0 + t * (v1 - v0);
        // |f''| h²/8, with f'' estimated from whichever neighbour exists.
        let curvature = [i.checked_sub(1).map(|k| (k, i, i + 1)), (i + 2 < ls.len()).then_some((i, i + 1, i + 2))]
            .into_iter()
            .flatten()
            .map(|(a, b, c)| {
                let (fa, fb, fc) = (self.branch_value(a, branch), self.branch_value(b, branch), self.branch_value(c, branch));
                let (ha, hc) = (ls[b] - ls[a], ls[c] - ls[b]);
                (2.0 * ((fc - fb) / hc - (fb - fa) / ha) / (ha + hc)).abs()
            })
            .fold(0.0, f64::max);
        Ok((value, curvature * (l1 - l0).powi(2) / 8.0))
    }
}

/// A Neumann/Dirichlet switch point on one of the walls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwitchPoint {
    pub x: f64,
    pub wall: Wall,
}

/// Switch points of a model on the physical strip.
pub fn switch_points(model: ModelKind, geometry: &Geometry) -> Vec<SwitchPoint> {
    let delta = geometry.delta();
    match model {
        ModelKind::A => vec![
            SwitchPoint { x: -delta, wall: Wall::Bottom },
            SwitchPoint { x: delta, wall: Wall::Top },
        ],
        ModelKind::B => vec![
            SwitchPoint { x: -delta, wall: Wall::Top },
            SwitchPoint { x: delta, wall: Wall::Top },
        ],
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerFit {
    pub exponent: f64,
    /// Coefficient of determination of the log-log fit.
    pub r_squared: f64,
}

/// Ten radii, log-spaced in `[0.02, 0.2]`, in units of `d`.
pub fn default_corner_radii() -> Vec<f64> {
    (0..10).map(|i| 0.02 * 10f64.powf(i as f64 / 9.0)).collect()
}

/// Power-law fit of `|f|` along the inward normal at a switch point, i.e. the
/// ray at angle π/2 from the Dirichlet side.
pub fn ray_exponent<F>(f: F, corner: SwitchPoint, d: f64, radii: &[f64]) -> Result<CornerFit>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    if radii.len() < 8 {
        return Err(Error::InvalidArgument("corner fit needs at least 8 radii".into()));
    }
    if let Some(r) = radii.iter().find(|&&r| !(r >= 1e-3 * d && r <= 0.2 * d)) {
        return Err(Error::InvalidArgument(format!("radius {r} outside [1e-3 d, 0.2 d]")));
    }
    let (y0, dir) = match corner.wall {
        Wall::Bottom => (0.0, 1.0),
        Wall::Top => (d, -1.0),
    };
    let mut points = Vec::with_capacity(radii.len());
    for &r in radii {
        let v = f(corner.x, y0 + dir * r)?.abs();
        if v < 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "field vanishes ({v:e}) at radius {r}; ray runs along a node"
            )));
        }
        points.push((r.ln(), v.ln()));
    }
    let exponent = least_squares_slope(&points);
    let my = points.iter().map(|p| p.1).sum::<f64>() / points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / points.len() as f64;
    let ss_tot: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    let ss_res: f64 = points.iter().map(|p| (p.1 - my - exponent * (p.0 - mx)).powi(2)).sum();
    let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    Ok(CornerFit { exponent, r_squared })
}

/// Corner exponent of a mode-matching eigenfunction at one of its switch points.
pub fn corner_exponent(field: &EigenField, corner: SwitchPoint, radii: &[f64]) -> Result<CornerFit> {
    let g = field.geometry();
    let known = switch_points(field.model(), g)
        .iter()
        .any(|p| p.wall == corner.wall && (p.x - corner.x).abs() <= 1e-12 * g.d());
    if !known {
        return Err(Error::InvalidArgument(format!(
            "({}, {:?}) is not a switch point of model {}",
            corner.x,
            corner.wall,
            field.model()
        )));
    }
    ray_exponent(|x, y| field.evaluate(x, y), corner, g.d(), radii)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport {
    pub ok: bool,
    /// Indices `i` with `μ_n(λ_i) < μ_n(λ_{i+1}) - tol`.
    pub violations: Vec<usize>,
}

/// Checks that branch `branch` is nonincreasing in λ.
pub fn monotonicity_check(sweep: &SweepResult, branch: usize) -> Result<MonotonicityReport> {
    if sweep.lambdas.len() < 5 {
        return Err(Error::InvalidArgument("monotonicity check needs at least 5 grid points".into()));
    }
    if branch == 0 {
        return Err(Error::InvalidArgument("branch index starts at 1".into()));
    }
    let violations: Vec<usize> = (0..sweep.lambdas.len() - 1)
        .filter(|&i| sweep.branch_value(i, branch) < sweep.branch_value(i + 1, branch) - MONOTONE_TOL)
        .collect();
    Ok(MonotonicityReport {
        ok: violations.is_empty(),
        violations,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport {
    pub ok: bool,
    pub mu_lambda: f64,
    pub mu_scaled: f64,
    /// `min(μ(λρ) - μ(λ)/ρ², μ(λ) - μ(λρ))` plus the allowed slack; negative
    /// means violated.
    pub worst_margin: f64,
}

/// `μ(λ)/ρ² ≤ μ(λρ) ≤ μ(λ)` for branch `branch`, values in units of μ.
pub fn scaling_check(sweep: &SweepResult, lambda: f64, rho: f64, branch: usize) -> Result<ScalingReport> {
    if !(rho >= 1.0) {
        return Err(Error::InvalidArgument(format!("scaling factor must be at least 1, got {rho}")));
    }
    let (m0, e0) = sweep.interpolate(lambda, branch)?;
    let (m1, e1) = sweep.interpolate(lambda * rho, branch)?;
    let slack = MONOTONE_TOL + e0 + e1;
    let lower = m1 - m0 / (rho * rho);
    let upper = m0 - m1;
    let worst_margin = lower.min(upper) + slack;
    Ok(ScalingReport {
        ok: worst_margin >= 0.0,
        mu_lambda: m0,
        mu_scaled: m1,
        worst_margin,
    })
}

/// Whether at least `m` stable eigenvalues sit below `(1 - EMERGENCE_GAP) μ`.
pub fn has_bound_states(model: ModelKind, lambda: f64, m: usize, modes: usize, grid_points: usize) -> Result<bool> {
    let spectrum = scan_spectrum(model, &Geometry::from_lambda(lambda)?, modes, grid_points)?;
    let bound = spectrum
        .eigenvalues
        .iter()
        .zip(&spectrum.stable)
        .filter(|(&e, &s)| s && e < 1.0 - EMERGENCE_GAP)
        .count();
    Ok(bound >= m)
}

/// Number of coarse λ steps used to find the first crossing before bisecting.
const EMERGENCE_STEPS: usize = 20;

/// λ at which the `m`-th bound state first appears in `[lo, hi]`.
///
/// The existence predicate is stepped upward from `lo` until it first holds,
/// then bisected inside that step. Far from threshold a root can miss the
/// stability check at low truncation while still being a genuine state, so a
/// plain bisection over the whole window could land on the wrong crossing.
pub fn emergence_point(
    model: ModelKind,
    m: usize,
    (lo, hi): (f64, f64),
    modes: usize,
    grid_points: usize,
) -> Result<f64> {
    if m == 0 || !(0.0 < lo && lo < hi) {
        return Err(Error::InvalidArgument("need m >= 1 and 0 < lo < hi".into()));
    }
    let exists = |l: f64| has_bound_states(model, l, m, modes, grid_points);
    if exists(lo)? {
        return Err(Error::NoBracket {
            what: "bound-state emergence",
            lo,
            hi,
        });
    }
    let step = (hi - lo) / EMERGENCE_STEPS as f64;
    let mut below = lo;
    let mut above = None;
    for i in 1..=EMERGENCE_STEPS {
        let l = if i == EMERGENCE_STEPS { hi } else { lo + step * i as f64 };
        if exists(l)? {
            above = Some(l);
            break;
        }
        below = l;
    }
    let above = above.ok_or(Error::NoBracket {
        what: "bound-state emergence",
        lo,
        hi,
    })?;
    let mut failure = None;
    let (a, b) = bisect_sign(
        |l| match exists(l) {
            Ok(true) => 1.0,
            Ok(false) => -1.0,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        below,
        above,
        EMERGENCE_TOL,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(0.5 * (a + b))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdReport {
    pub lambda1: f64,
    pub kappa0: f64,
    pub lambda2: f64,
    pub lambda0_numeric: Option<f64>,
    pub ordering_ok: bool,
}

/// Analytic estimates Λ1, Λ2 and the mode-matching emergence point Λ0 of model A.
pub fn thresholds(modes: usize, grid_points: usize) -> Result<ThresholdReport> {
    let kappa0 = variational::kappa0()?;
    let lambda1 = variational::lambda1()?;
    let lambda2 = variational::lambda2()?;
    let lambda0 = emergence_point(ModelKind::A, 1, (0.05, 0.95), modes, grid_points)?;
    Ok(ThresholdReport {
        lambda1,
        kappa0,
        lambda2,
        lambda0_numeric: Some(lambda0),
        ordering_ok: 0.0 < lambda1 && lambda1 < lambda0 && lambda0 < lambda2 && lambda2 < 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fake_spectrum(model: ModelKind, lambda: f64, values: &[f64]) -> Spectrum {
        Spectrum {
            model,
            geometry: Geometry::from_lambda(lambda).unwrap(),
            modes: 32,
            eigenvalues: values.to_vec(),
            residuals: vec![0.0; values.len()],
            stable: vec![true; values.len()],
            near_threshold_unresolved: false,
            scan_points: 400,
        }
    }

    fn fake_sweep(points: &[(f64, Option<f64>)]) -> SweepResult {
        let lambdas = points.iter().map(|p| p.0).collect();
        let spectra = points
            .iter()
            .map(|&(l, v)| fake_spectrum(ModelKind::B, l, v.as_slice()))
            .collect();
        SweepResult::new(ModelKind::B, lambdas, spectra).unwrap()
    }

    #[test]
    fn monotonicity_detects_inversion() {
        let good = fake_sweep(&[(0.1, None), (0.2, Some(0.99)), (0.3, Some(0.95)), (0.4, Some(0.9)), (0.5, Some(0.85))]);
        assert!(monotonicity_check(&good, 1).unwrap().ok);
        let bad = fake_sweep(&[(0.1, Some(0.99)), (0.2, Some(0.97)), (0.3, Some(0.98)), (0.4, Some(0.9)), (0.5, Some(0.85))]);
        let r = monotonicity_check(&bad, 1).unwrap();
        assert!(!r.ok);
        assert_eq!(r.violations, vec![1]);
        let short = fake_sweep(&[(0.1, None), (0.2, None)]);
        assert!(monotonicity_check(&short, 1).is_err());
    }

    #[test]
    fn scaling_collapses_at_unit_rho() {
        let s = fake_sweep(&[(0.4, Some(0.9)), (0.5, Some(0.8)), (0.6, Some(0.75))]);
        let r = scaling_check(&s, 0.5, 1.0, 1).unwrap();
        assert!(r.ok);
        assert_eq!(r.mu_lambda, r.mu_scaled);
        assert!(scaling_check(&s, 0.5, 1.5, 1).is_err());
        assert!(scaling_check(&s, 0.5, 0.5, 1).is_err());
    }

    #[test]
    fn interpolation_is_exact_on_lines() {
        let s = fake_sweep(&[(0.1, Some(0.9)), (0.2, Some(0.8)), (0.3, Some(0.7)), (0.4, Some(0.6))]);
        let (v, e) = s.interpolate(0.25, 1).unwrap();
        assert!((v - 0.75).abs() < 1e-14 && e < 1e-14);
    }

    #[test]
    fn synthetic_corner_fields() {
        let corner = SwitchPoint { x: 0.5, wall: Wall::Top };
        let radii = default_corner_radii();
        // Guseva profile r^{1/2} sin(φ/2) with a smooth amplitude.
        let guseva = |x: f64, y: f64| {
            let (dx, dy) = (x - 0.5, y - 1.0);
            let r = dx.hypot(dy);
            let phi = (-dy).atan2(dx);
            Ok(r.sqrt() * (phi / 2.0).sin())
        };
        let fit = ray_exponent(guseva, corner, 1.0, &radii).unwrap();
        assert!((fit.exponent - 0.5).abs() < 1e-3);
        assert!(fit.r_squared > 0.999_999);
        let flat = ray_exponent(|_, _| Ok(0.7), corner, 1.0, &radii).unwrap();
        assert!(flat.exponent.abs() < 1e-12);
        assert!(ray_exponent(|_, _| Ok(0.0), corner, 1.0, &radii).is_err());
        assert!(ray_exponent(guseva, corner, 1.0, &radii[..5]).is_err());
    }

    #[test]
    fn switch_point_layout() {
        let g = Geometry::new(2.0, 1.0).unwrap();
        let a = switch_points(ModelKind::A, &g);
        assert_eq!(a[1], SwitchPoint { x: 1.0, wall: Wall::Top });
        let b = switch_points(ModelKind::B, &g);
        assert!(b.iter().all(|p| p.wall == Wall::Top));
    }
}
