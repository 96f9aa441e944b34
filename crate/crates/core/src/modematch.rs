//! Mode matching across the two switch points.
//!
//! In each tail the eigenfunction is a sum of evanescent transverse modes,
//! `Φ_I = Σ a_k e^{κ_k (x+δ)} t_k(y)` and `Φ_III = Σ b_k e^{-κ_k (x-δ)} v_k(y)`.
//! In the window it is `Σ w_m(y) (α_m C_m(x) + β_m S_m(x))` with even/odd
//! longitudinal functions normalized to unit value at `x = δ` (for `m = 0` the
//! odd one is `sin(√E x)/(√E δ)`, which stays regular as `E → 0`).
//!
//! Value continuity is projected onto the Neumann modes `w_m`, derivative
//! continuity onto the tail modes. Derivative rows are multiplied by δ so all
//! entries stay of order `κ_{N-1} δ` at most.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::geometry::{overlap_matrix, Geometry, ModelKind, ProfileKind, Region, TransverseMode};
use crate::roots::{bisect_sign, golden_section_min};
use crate::{Error, Result};

pub const MIN_MODES: usize = 4;
pub const MAX_MODES: usize = 256;
pub const DEFAULT_MODES: usize = 64;
pub const DEFAULT_SCAN_POINTS: usize = 400;

/// Scan window in units of μ.
pub const SCAN_LO: f64 = 1e-8;
pub const SCAN_HI: f64 = 1.0 - 1e-6;

/// Root refinement width, in units of μ.
pub const ROOT_TOL: f64 = 1e-10;
/// Largest σ_min accepted at a refined root.
pub const ACCEPT_SIGMA: f64 = 1e-6;
/// σ_min local minima below this are treated as root candidates.
pub const DIP_SIGMA: f64 = 1e-3;
/// Allowed drift (units of μ) of a root when the truncation grows.
pub const STABILITY_DRIFT: f64 = 1e-4;
pub const STABILITY_STEP: usize = 8;

const MU_UNIT: f64 = PI * PI / 4.0;

/// Even and odd longitudinal functions of one center mode on `[-δ, δ]`.
#[derive(Debug, Clone, Copy)]
struct CenterPair {
    zero_mode: bool,
    rate: f64,
    delta: f64,
}

struct CenterValues {
    c: f64,
    s: f64,
    dc: f64,
    ds: f64,
}

impl CenterPair {
    fn new(m: usize, e: f64, delta: f64) -> Self {
        if m == 0 {
            Self {
                zero_mode: true,
                rate: e.sqrt(),
                delta,
            }
        } else {
            let w = m as f64 * PI;
            Self {
                zero_mode: false,
                rate: (w * w - e).sqrt(),
                delta,
            }
        }
    }

    fn eval(&self, x: f64) -> CenterValues {
        let (r, delta) = (self.rate, self.delta);
        if self.zero_mode {
            let (sn, cs) = (r * x).sin_cos();
            return CenterValues {
                c: cs,
                s: sn / (r * delta),
                dc: -r * sn,
                ds: cs / delta,
            };
        }
        // Ratios like cosh(γx)/cosh(γδ) written with decaying exponentials so
        // large γδ cannot overflow.
        let ax = x.abs();
        let sign = if x < 0.0 { -1.0 } else { 1.0 };
        let scale = (r * (ax - delta)).exp();
        let plus_x = 1.0 + (-2.0 * r * ax).exp();
        let minus_x = -(-2.0 * r * ax).exp_m1();
        let plus_d = 1.0 + (-2.0 * r * delta).exp();
        let minus_d = -(-2.0 * r * delta).exp_m1();
        CenterValues {
            c: scale * plus_x / plus_d,
            s: sign * scale * minus_x / minus_d,
            dc: r * sign * scale * minus_x / plus_d,
            ds: r * scale * plus_x / minus_d,
        }
    }

    /// `(∫C², ∫S²)` over `(-δ, δ)`.
    fn norms(&self) -> (f64, f64) {
        let (r, delta) = (self.rate, self.delta);
        if self.zero_mode {
            let z = r * delta;
            let half_sin = (2.0 * z).sin() / (2.0 * r);
            let cc = delta + half_sin;
            // δ - sin(2z)/(2r), series for small z to avoid cancellation.
            let diff = if z < 1e-2 {
                let t = 2.0 * z;
                t * t * t / (12.0 * r) * (1.0 - t * t / 20.0 + t.powi(4) / 840.0)
            } else {
                delta - half_sin
            };
            (cc, diff / (z * z))
        } else {
            let z = r * delta;
            let t = z.tanh();
            let sech2 = 1.0 - t * t;
            let cc = delta * sech2 + t / r;
            let ss = if z < 1e-2 {
                // coth(z)/r - δ/sinh²(z) → 2δ/3 as z → 0
                delta * (2.0 / 3.0 - 4.0 * z * z / 45.0)
            } else {
                let sh = z.sinh();
                1.0 / (t * r) - delta / (sh * sh)
            };
            (cc, ss)
        }
    }
}

fn tail_kinds(model: ModelKind) -> (ProfileKind, ProfileKind) {
    (model.profile(Region::I), model.profile(Region::III))
}

fn tail_rates(n: usize, e: f64) -> Vec<f64> {
    (0..n)
        .map(|k| {
            let w = (k as f64 + 0.5) * PI;
            (w * w - e).sqrt()
        })
        .collect()
}

/// Matching matrix on the unit strip for arbitrary tail families.
fn build_matrix(left: ProfileKind, right: ProfileKind, delta: f64, n: usize, e: f64) -> DMatrix<f64> {
    let kappa = tail_rates(n, e);
    let p1 = overlap_matrix(left, n, n);
    let p3 = overlap_matrix(right, n, n);
    let centers: Vec<CenterPair> = (0..n).map(|m| CenterPair::new(m, e, delta)).collect();
    let at_left: Vec<CenterValues> = centers.iter().map(|c| c.eval(-delta)).collect();
    let at_right: Vec<CenterValues> = centers.iter().map(|c| c.eval(delta)).collect();

    let (ca, cb, cal, cbe) = (0, n, 2 * n, 3 * n);
    let mut a = DMatrix::<f64>::zeros(4 * n, 4 * n);
    for m in 0..n {
        for k in 0..n {
            a[(m, ca + k)] = p1[k][m];
            a[(2 * n + m, cb + k)] = p3[k][m];
        }
        a[(m, cal + m)] = -at_left[m].c;
        a[(m, cbe + m)] = -at_left[m].s;
        a[(2 * n + m, cal + m)] = -at_right[m].c;
        a[(2 * n + m, cbe + m)] = -at_right[m].s;
    }
    for k in 0..n {
        a[(n + k, ca + k)] = kappa[k] * delta;
        a[(3 * n + k, cb + k)] = -kappa[k] * delta;
        for m in 0..n {
            a[(n + k, cal + m)] = -p1[k][m] * at_left[m].dc * delta;
            a[(n + k, cbe + m)] = -p1[k][m] * at_left[m].ds * delta;
            a[(3 * n + k, cal + m)] = -p3[k][m] * at_right[m].dc * delta;
            a[(3 * n + k, cbe + m)] = -p3[k][m] * at_right[m].ds * delta;
        }
    }
    a
}

/// The `4N × 4N` interface system at one trial energy.
#[derive(Debug, Clone)]
pub struct MatchingSystem {
    model: ModelKind,
    geometry: Geometry,
    modes: usize,
    energy: f64,
    matrix: DMatrix<f64>,
}

impl MatchingSystem {
    pub fn model(&self) -> ModelKind {
        self.model
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    /// Trial energy in physical units.
    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    fn unit_energy(&self) -> f64 {
        self.energy * self.geometry.d().powi(2)
    }
}

fn check_modes(n: usize) -> Result<()> {
    if !(MIN_MODES..=MAX_MODES).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "truncation order must be in {MIN_MODES}..={MAX_MODES}, got {n}"
        )));
    }
    Ok(())
}

/// Builds the matching system at physical energy `energy`.
pub fn assemble(model: ModelKind, geometry: &Geometry, modes: usize, energy: f64) -> Result<MatchingSystem> {
    check_modes(modes)?;
    let mu = geometry.mu();
    if !(energy > 0.0 && energy < mu) {
        return Err(Error::InvalidArgument(format!(
            "trial energy must lie in (0, {mu}), got {energy}"
        )));
    }
    let e = energy * geometry.d().powi(2);
    let (left, right) = tail_kinds(model);
    Ok(MatchingSystem {
        model,
        geometry: *geometry,
        modes,
        energy,
        matrix: build_matrix(left, right, geometry.lambda(), modes, e),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dispersion {
    pub det_sign: i8,
    pub sigma_min: f64,
}

fn det_sign(m: &DMatrix<f64>) -> i8 {
    let lu = m.clone().lu();
    let parity: f64 = lu.p().determinant();
    let mut sign = parity;
    let packed = lu.u();
    for i in 0..packed.nrows() {
        let p = packed[(i, i)];
        if p == 0.0 || !p.is_finite() {
            return 0;
        }
        if p < 0.0 {
            sign = -sign;
        }
    }
    if sign > 0.0 {
        1
    } else {
        -1
    }
}

fn sigma_min(m: &DMatrix<f64>) -> f64 {
    m.singular_values().iter().copied().fold(f64::INFINITY, f64::min)
}

pub fn dispersion(system: &MatchingSystem) -> Dispersion {
    Dispersion {
        det_sign: det_sign(&system.matrix),
        sigma_min: sigma_min(&system.matrix),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionSample {
    /// Energy in units of μ.
    pub energy: f64,
    pub det_sign: i8,
    pub sigma_min: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DispersionTrace {
    pub lo: f64,
    pub hi: f64,
    pub samples: Vec<DispersionSample>,
}

/// Unit-strip helper shared by the scan and the stability check.
#[derive(Debug, Clone, Copy)]
struct Problem {
    left: ProfileKind,
    right: ProfileKind,
    delta: f64,
    n: usize,
}

impl Problem {
    fn new(model: ModelKind, geometry: &Geometry, n: usize) -> Self {
        let (left, right) = tail_kinds(model);
        Self {
            left,
            right,
            delta: geometry.lambda(),
            n,
        }
    }

    fn with_modes(self, n: usize) -> Self {
        Self { n, ..self }
    }

    /// `t` is the energy in units of μ.
    fn matrix(&self, t: f64) -> DMatrix<f64> {
        build_matrix(self.left, self.right, self.delta, self.n, t * MU_UNIT)
    }

    fn sign(&self, t: f64) -> i8 {
        det_sign(&self.matrix(t))
    }

    fn sigma(&self, t: f64) -> f64 {
        sigma_min(&self.matrix(t))
    }

    fn sample(&self, t: f64) -> DispersionSample {
        let m = self.matrix(t);
        DispersionSample {
            energy: t,
            det_sign: det_sign(&m),
            sigma_min: sigma_min(&m),
        }
    }

    fn trace(&self, points: usize) -> DispersionTrace {
        let points = points.max(2);
        let step = (SCAN_HI - SCAN_LO) / (points - 1) as f64;
        let samples = (0..points)
            .map(|i| {
                let t = if i == points - 1 { SCAN_HI } else { SCAN_LO + step * i as f64 };
                self.sample(t)
            })
            .collect();
        DispersionTrace {
            lo: SCAN_LO,
            hi: SCAN_HI,
            samples,
        }
    }

    /// Root inside `[lo, hi]`, by sign bisection when the sign changes and by
    /// σ_min minimization otherwise. Returns `(t, σ_min)` only if accepted.
    fn refine(&self, lo: f64, hi: f64) -> Option<(f64, f64)> {
        let (s_lo, s_hi) = (self.sign(lo), self.sign(hi));
        let t = if s_lo != 0 && s_hi != 0 && s_lo != s_hi {
            let (a, b) = bisect_sign(|t| f64::from(self.sign(t)), lo, hi, ROOT_TOL).ok()?;
            0.5 * (a + b)
        } else {
            golden_section_min(|t| self.sigma(t), lo, hi, ROOT_TOL).0
        };
        let sigma = self.sigma(t);
        (sigma < ACCEPT_SIGMA).then_some((t, sigma))
    }

    fn roots(&self, trace: &DispersionTrace) -> (Vec<(f64, f64)>, bool) {
        let s = &trace.samples;
        let mut found: Vec<(f64, f64)> = Vec::new();
        let mut sign_cells = vec![false; s.len().saturating_sub(1)];
        for i in 0..s.len().saturating_sub(1) {
            let (a, b) = (s[i].det_sign, s[i + 1].det_sign);
            if a != b {
                sign_cells[i] = true;
                if let Some(r) = self.refine(s[i].energy, s[i + 1].energy) {
                    found.push(r);
                }
            }
        }
        for i in 1..s.len().saturating_sub(1) {
            let dip = s[i].sigma_min < DIP_SIGMA
                && s[i].sigma_min < s[i - 1].sigma_min
                && s[i].sigma_min <= s[i + 1].sigma_min;
            if dip && !sign_cells[i - 1] && !sign_cells[i] {
                if let Some(r) = self.refine(s[i - 1].energy, s[i + 1].energy) {
                    found.push(r);
                }
            }
        }
        found.sort_by(|a, b| a.0.total_cmp(&b.0));
        found.dedup_by(|a, b| (a.0 - b.0).abs() < 10.0 * ROOT_TOL);

        // σ_min still falling at the top of the window with no root in the
        // last cell: something is trying to detach from the threshold.
        let near_threshold = match s.len() {
            0 | 1 => false,
            len => {
                let (prev, last) = (s[len - 2], s[len - 1]);
                last.sigma_min < DIP_SIGMA
                    && last.sigma_min < prev.sigma_min
                    && !sign_cells[len - 2]
            }
        };
        (found, near_threshold)
    }

    /// Re-locates a root near `t0` at this truncation.
    fn relocate(&self, t0: f64) -> Option<(f64, f64)> {
        let lo = (t0 - STABILITY_DRIFT).max(SCAN_LO);
        let hi = (t0 + STABILITY_DRIFT).min(SCAN_HI);
        self.refine(lo, hi)
    }
}

/// Discrete eigenvalues found below the threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub model: ModelKind,
    pub geometry: Geometry,
    pub modes: usize,
    /// Sorted eigenvalues in units of μ.
    pub eigenvalues: Vec<f64>,
    /// σ_min of the matching matrix at each root.
    pub residuals: Vec<f64>,
    /// Root reproduced within [`STABILITY_DRIFT`] at `modes + STABILITY_STEP`.
    pub stable: Vec<bool>,
    /// Set when the dispersion hints at a state closer to μ than the scan resolves.
    pub near_threshold_unresolved: bool,
    pub scan_points: usize,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn all_stable(&self) -> bool {
        self.stable.iter().all(|&s| s)
    }

    pub fn stable_eigenvalues(&self) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .zip(&self.stable)
            .filter(|(_, &s)| s)
            .map(|(&e, _)| e)
            .collect()
    }

    /// Eigenvalues in physical units.
    pub fn energies(&self) -> Vec<f64> {
        let mu = self.geometry.mu();
        self.eigenvalues.iter().map(|t| t * mu).collect()
    }
}

/// Samples the dispersion function on the default scan window.
pub fn dispersion_trace(model: ModelKind, geometry: &Geometry, modes: usize, points: usize) -> Result<DispersionTrace> {
    check_modes(modes)?;
    Ok(Problem::new(model, geometry, modes).trace(points))
}

/// Finds all bound states below μ at truncation `modes`.
pub fn scan_spectrum(model: ModelKind, geometry: &Geometry, modes: usize, grid_points: usize) -> Result<Spectrum> {
    check_modes(modes)?;
    if grid_points < 2 {
        return Err(Error::InvalidArgument("scan needs at least 2 grid points".into()));
    }
    let problem = Problem::new(model, geometry, modes);
    let check_modes = if modes + STABILITY_STEP <= MAX_MODES {
        modes + STABILITY_STEP
    } else {
        modes - STABILITY_STEP
    };
    let checker = problem.with_modes(check_modes);

    let mut points = grid_points;
    let mut refined_once = false;
    loop {
        let trace = problem.trace(points);
        let (roots, near_threshold) = problem.roots(&trace);
        let stable: Vec<bool> = roots.iter().map(|&(t, _)| checker.relocate(t).is_some()).collect();
        if stable.iter().any(|s| !s) && !refined_once {
            refined_once = true;
            points = 2 * points - 1;
            continue;
        }
        return Ok(Spectrum {
            model,
            geometry: *geometry,
            modes,
            eigenvalues: roots.iter().map(|r| r.0).collect(),
            residuals: roots.iter().map(|r| r.1).collect(),
            stable,
            near_threshold_unresolved: near_threshold,
            scan_points: points,
        });
    }
}

/// Locates a root near `guess` (units of μ), widening the search window until
/// a bracket appears. Used to follow one branch across truncations.
pub fn track_root(model: ModelKind, geometry: &Geometry, modes: usize, guess: f64) -> Result<Option<(f64, f64)>> {
    check_modes(modes)?;
    let problem = Problem::new(model, geometry, modes);
    let mut width = 1e-4;
    while width < 0.5 {
        let lo = (guess - width).max(SCAN_LO);
        let hi = (guess + width).min(SCAN_HI);
        if let Some(r) = problem.refine(lo, hi) {
            return Ok(Some(r));
        }
        width *= 4.0;
    }
    Ok(None)
}

/// Modal coefficients of one bound state, normalized in `L²(Ω)`.
#[derive(Debug, Clone)]
pub struct EigenField {
    model: ModelKind,
    geometry: Geometry,
    /// Energy on the unit strip.
    e: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    kappa: Vec<f64>,
    centers: Vec<CenterPair>,
    pub sigma_min: f64,
    pub sigma_second: f64,
}

/// Null vector of a matching system sitting on a root.
pub fn solve_coefficients(system: &MatchingSystem) -> Result<EigenField> {
    let n = system.modes;
    let svd = system.matrix.clone().svd(false, true);
    let v_t = svd.v_t.as_ref().ok_or_else(|| Error::NotConverged {
        what: "singular value decomposition",
        detail: "right singular vectors unavailable".into(),
    })?;
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    let smin = svd.singular_values[order[0]];
    let s2 = svd.singular_values[order[1]];
    if !(smin < ACCEPT_SIGMA) {
        return Err(Error::NotConverged {
            what: "eigenvalue root",
            detail: format!("smallest singular value {smin:e} at E = {}", system.energy),
        });
    }
    if s2 < 1e3 * smin {
        return Err(Error::PossibleDegeneracy {
            sigma_min: smin,
            sigma_2: s2,
        });
    }
    let v: DVector<f64> = v_t.row(order[0]).transpose();

    let e = system.unit_energy();
    let delta = system.geometry.lambda();
    let mut field = EigenField {
        model: system.model,
        geometry: system.geometry,
        e,
        a: v.rows(0, n).iter().copied().collect(),
        b: v.rows(n, n).iter().copied().collect(),
        alpha: v.rows(2 * n, n).iter().copied().collect(),
        beta: v.rows(3 * n, n).iter().copied().collect(),
        kappa: tail_rates(n, e),
        centers: (0..n).map(|m| CenterPair::new(m, e, delta)).collect(),
        sigma_min: smin,
        sigma_second: s2,
    };
    let pivot = v.iter().copied().fold(0.0f64, |acc, x| if x.abs() > acc.abs() { x } else { acc });
    let scale = pivot.signum() / field.unit_norm_squared().sqrt();
    for c in field
        .a
        .iter_mut()
        .chain(field.b.iter_mut())
        .chain(field.alpha.iter_mut())
        .chain(field.beta.iter_mut())
    {
        *c *= scale;
    }
    Ok(field)
}

impl EigenField {
    pub fn model(&self) -> ModelKind {
        self.model
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn modes(&self) -> usize {
        self.a.len()
    }

    /// Eigenvalue in units of μ.
    pub fn energy_over_mu(&self) -> f64 {
        self.e / MU_UNIT
    }

    /// Slowest tail decay rate on the unit strip.
    pub fn slowest_decay(&self) -> f64 {
        self.kappa[0]
    }

    /// `∫|Φ|²` on the unit strip: analytic tails plus the window, where the
    /// Neumann modes are orthonormal and `C_m`, `S_m` have opposite parity.
    fn unit_norm_squared(&self) -> f64 {
        let tails: f64 = self
            .a
            .iter()
            .zip(&self.b)
            .zip(&self.kappa)
            .map(|((a, b), k)| (a * a + b * b) / (2.0 * k))
            .sum();
        let center: f64 = self
            .centers
            .iter()
            .zip(self.alpha.iter().zip(&self.beta))
            .map(|(c, (al, be))| {
                let (cc, ss) = c.norms();
                al * al * cc + be * be * ss
            })
            .sum();
        tails + center
    }

    fn tail_mode(&self, region: Region, k: usize) -> TransverseMode {
        TransverseMode::for_model(self.model, region, k, 1.0)
    }

    /// Φ on the unit strip. Points on `x = ±δ` use the window expansion.
    pub(crate) fn eval_unit(&self, x: f64, y: f64) -> f64 {
        let delta = self.geometry.lambda();
        match Region::of(x, delta) {
            Region::I => (0..self.a.len())
                .map(|k| self.a[k] * (self.kappa[k] * (x + delta)).exp() * self.tail_mode(Region::I, k).value(y))
                .sum(),
            Region::III => (0..self.b.len())
                .map(|k| self.b[k] * (-self.kappa[k] * (x - delta)).exp() * self.tail_mode(Region::III, k).value(y))
                .sum(),
            Region::II => self
                .centers
                .iter()
                .enumerate()
                .map(|(m, c)| {
                    let v = c.eval(x);
                    let w = TransverseMode::new(Region::II, ProfileKind::NnCosine, m, 1.0).value(y);
                    w * (self.alpha[m] * v.c + self.beta[m] * v.s)
                })
                .sum(),
        }
    }

    /// Tail-side value at an interface (`side` is -1 or +1).
    pub(crate) fn tail_at_interface(&self, side: i32, y: f64) -> f64 {
        if side < 0 {
            (0..self.a.len()).map(|k| self.a[k] * self.tail_mode(Region::I, k).value(y)).sum()
        } else {
            (0..self.b.len()).map(|k| self.b[k] * self.tail_mode(Region::III, k).value(y)).sum()
        }
    }

    /// Eigenfunction at a physical point, normalized so `∫_Ω |Φ|² = 1`.
    pub fn evaluate(&self, x: f64, y: f64) -> Result<f64> {
        let d = self.geometry.d();
        if !(x.is_finite() && (0.0..=d).contains(&y)) {
            return Err(Error::OutsideDomain { x, y });
        }
        Ok(self.eval_unit(x / d, y / d) / d)
    }

    /// Probability mass in `|x| > half_width` (physical units), summed
    /// analytically over the tail modes. Requires `half_width ≥ δ`.
    pub fn mass_beyond(&self, half_width: f64) -> Result<f64> {
        let delta = self.geometry.lambda();
        let x = half_width / self.geometry.d();
        if !(x >= delta) {
            return Err(Error::InvalidArgument(format!(
                "half width {half_width} lies inside the window"
            )));
        }
        Ok(self
            .a
            .iter()
            .zip(&self.b)
            .zip(&self.kappa)
            .map(|((a, b), k)| (a * a + b * b) * (-2.0 * k * (x - delta)).exp() / (2.0 * k))
            .sum())
    }

    /// `L²(0, d)` norm of the value mismatch between the window and the tail
    /// at `x = side·δ`.
    pub fn interface_jump(&self, side: i32) -> Result<f64> {
        let x = side.signum() as f64 * self.geometry.lambda();
        let sq = crate::quadrature::integrate(
            |y| (self.eval_unit(x, y) - self.tail_at_interface(side, y)).powi(2),
            0.0,
            1.0,
            1e-14,
        )?;
        Ok(sq.sqrt())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    /// `(N, E/μ)` with `None` where no ground state was resolved.
    pub rows: Vec<(usize, Option<f64>)>,
    /// Slope `p` of `log|E(N_{i+1}) - E(N_i)|` against `log N_i`, reported as
    /// a positive algebraic order.
    pub order: Option<f64>,
}

/// Ground-state energy as a function of the truncation order.
pub fn convergence_study(model: ModelKind, geometry: &Geometry, n_list: &[usize]) -> Result<ConvergenceStudy> {
    if n_list.len() < 3 {
        return Err(Error::InvalidArgument("convergence study needs at least 3 truncations".into()));
    }
    let mut rows = Vec::with_capacity(n_list.len());
    let mut last: Option<f64> = None;
    for &n in n_list {
        let estimate = match last {
            Some(t) => track_root(model, geometry, n, t)?.map(|r| r.0),
            None => {
                check_modes(n)?;
                let problem = Problem::new(model, geometry, n);
                let trace = problem.trace(DEFAULT_SCAN_POINTS);
                problem.roots(&trace).0.first().map(|r| r.0)
            }
        };
        if estimate.is_some() {
            last = estimate;
        }
        rows.push((n, estimate));
    }
    let resolved: Vec<(usize, f64)> = rows.iter().filter_map(|&(n, e)| e.map(|e| (n, e))).collect();
    if resolved.len() < 2 {
        return Err(Error::NotConverged {
            what: "convergence study",
            detail: format!("only {} truncations resolved a bound state", resolved.len()),
        });
    }
    let points: Vec<(f64, f64)> = resolved
        .windows(2)
        .filter_map(|w| {
            let diff = (w[1].1 - w[0].1).abs();
            (diff > 0.0).then(|| ((w[0].0 as f64).ln(), diff.ln()))
        })
        .collect();
    let order = (points.len() >= 2).then(|| -least_squares_slope(&points));
    Ok(ConvergenceStudy { rows, order })
}

pub(crate) fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
