use rayon::prelude::*;
use wavebound::analysis::{self, SweepResult};
use wavebound::modematch::{assemble, scan_spectrum, solve_coefficients};
use wavebound::{bounds, fdm, Geometry, ModelKind, Spectrum};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Sweep,
    Field,
    Bounds,
    Thresholds,
    Oracle,
    Analyze,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Sweep => "sweep",
            Command::Field => "field",
            Command::Bounds => "bounds",
            Command::Thresholds => "thresholds",
            Command::Oracle => "oracle",
            Command::Analyze => "analyze",
        }
    }
}

pub fn execute(command: Command, cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    match command {
        Command::Spectrum => spectrum(cfg),
        Command::Sweep => sweep(cfg),
        Command::Field => field(cfg),
        Command::Bounds => bounds_report(cfg),
        Command::Thresholds => thresholds(cfg),
        Command::Oracle => oracle(cfg),
        Command::Analyze => analyze(cfg),
    }
}

fn pool(cfg: &RunConfig) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start {} worker threads: {e}", cfg.jobs)))
}

/// Refuses to emit a spectrum that contradicts the bracketing bounds.
pub fn check_spectrum(spectrum: &Spectrum) -> Result<(), CliError> {
    let lambda = spectrum.geometry.lambda();
    let violations = bounds::validate(lambda, &spectrum.eigenvalues, 1e-9)?;
    if let Some(v) = violations.first() {
        return Err(CliError::Invariant(format!("model {} at lambda {lambda}: {v}", spectrum.model)));
    }
    Ok(())
}

fn scan(model: ModelKind, g: &Geometry, cfg: &RunConfig) -> Result<Spectrum, CliError> {
    let s = scan_spectrum(model, g, cfg.modes, cfg.scan_points)?;
    check_spectrum(&s)?;
    Ok(s)
}

fn describe(report: &mut Report, cfg: &RunConfig, g: &Geometry) {
    report.note("model", cfg.model.name());
    report.note("lambda", g.lambda());
    report.note("modes", cfg.modes);
}

fn spectrum(cfg: &RunConfig) -> Result<Report, CliError> {
    let g = cfg.geometry()?;
    let s = scan(cfg.model, &g, cfg)?;
    let mut r = Report::new("spectrum", vec!["index", "eigenvalue_over_mu", "residual", "stable"]);
    describe(&mut r, cfg, &g);
    r.note("near_threshold_unresolved", s.near_threshold_unresolved);
    for i in 0..s.len() {
        r.push(vec![(i + 1).into(), s.eigenvalues[i].into(), s.residuals[i].into(), s.stable[i].into()]);
    }
    Ok(r)
}

/// `lo, lo + step, ...` up to `hi` (inclusive within rounding).
pub fn lambda_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !(lo < hi) {
        return Err(CliError::Config(format!("need lambda_lo < lambda_hi, got {lo} and {hi}")));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    if count > 100_000 {
        return Err(CliError::Config(format!("sweep of {count} points is too large")));
    }
    Ok((0..count).map(|i| lo + i as f64 * step).collect())
}

fn sweep(cfg: &RunConfig) -> Result<Report, CliError> {
    let (Some(lo), Some(hi), Some(step)) = (cfg.lambda_lo, cfg.lambda_hi, cfg.step) else {
        return Err(CliError::Config("sweep needs lambda_lo, lambda_hi and step".into()));
    };
    let lambdas = lambda_grid(lo, hi, step)?;
    let spectra: Vec<Spectrum> = pool(cfg)?.install(|| {
        lambdas
            .par_iter()
            .map(|&l| {
                let g = Geometry::new(cfg.d, l * cfg.d).map_err(|e| CliError::Config(e.to_string()))?;
                scan(cfg.model, &g, cfg)
            })
            .collect::<Result<Vec<_>, CliError>>()
    })?;
    let mut r = Report::new("sweep", vec!["lambda", "branch_index", "eigenvalue_over_mu", "residual", "stable"]);
    r.note("model", cfg.model.name());
    r.note("modes", cfg.modes);
    for (l, s) in lambdas.iter().zip(&spectra) {
        for i in 0..s.len() {
            r.push(vec![
                (*l).into(),
                (i + 1).into(),
                s.eigenvalues[i].into(),
                s.residuals[i].into(),
                s.stable[i].into(),
            ]);
        }
    }
    Ok(r)
}

fn ground_field(cfg: &RunConfig, g: &Geometry, branch: usize) -> Result<wavebound::EigenField, CliError> {
    let s = scan(cfg.model, g, cfg)?;
    let Some(&e) = s.eigenvalues.get(branch - 1) else {
        return Err(CliError::MissingBranch(format!(
            "model {} at lambda {} has {} bound state(s), branch {branch} requested",
            cfg.model,
            g.lambda(),
            s.len()
        )));
    };
    Ok(solve_coefficients(&assemble(cfg.model, g, cfg.modes, e * g.mu())?)?)
}

fn field(cfg: &RunConfig) -> Result<Report, CliError> {
    let g = cfg.geometry()?;
    let f = ground_field(cfg, &g, cfg.branch)?;
    let half = cfg.x_halfwidth.unwrap_or(g.lambda() + 3.0);
    if half < g.lambda() {
        return Err(CliError::Config(format!(
            "x_halfwidth {half} must cover the window half-width {}",
            g.lambda()
        )));
    }
    let d = g.d();
    let (nx, ny) = (cfg.nx, cfg.ny);
    let mut r = Report::new("field", vec!["x", "y", "density"]);
    describe(&mut r, cfg, &g);
    r.note("branch", cfg.branch);
    r.note("eigenvalue_over_mu", f.energy_over_mu());
    // Lengths in units of d, density in units of d^-2.
    r.note("tail_mass", f.mass_beyond(half * d)?);
    for i in 0..nx {
        let x = -half + 2.0 * half * i as f64 / (nx - 1) as f64;
        for j in 0..ny {
            let y = j as f64 / (ny - 1) as f64;
            let phi = f.evaluate(x * d, y * d)? * d;
            r.push(vec![x.into(), y.into(), (phi * phi).into()]);
        }
    }
    Ok(r)
}

fn bounds_report(cfg: &RunConfig) -> Result<Report, CliError> {
    let g = cfg.geometry()?;
    let b = bounds::bracket_report(g.lambda())?;
    let mut r = Report::new("bounds", vec!["index", "lower", "upper", "vacuous_upper"]);
    r.note("lambda", g.lambda());
    r.note("n_min", b.n_min);
    r.note("n_max", b.n_max);
    for (i, (&(lo, hi), &vac)) in b.windows.iter().zip(&b.vacuous_upper).enumerate() {
        r.push(vec![(i + 1).into(), lo.into(), hi.into(), vac.into()]);
    }
    Ok(r)
}

fn thresholds(cfg: &RunConfig) -> Result<Report, CliError> {
    let t = analysis::thresholds(cfg.modes, cfg.scan_points)?;
    let mut r = Report::new("thresholds", vec![]);
    r.note("modes", cfg.modes);
    r.note("lambda1", t.lambda1);
    r.note("kappa0", t.kappa0);
    r.note("lambda2", t.lambda2);
    if let Some(l0) = t.lambda0_numeric {
        r.note("lambda0_numeric", l0);
    }
    r.note("ordering_ok", t.ordering_ok);
    Ok(r)
}

fn oracle(cfg: &RunConfig) -> Result<Report, CliError> {
    let g = cfg.geometry()?;
    let h0 = cfg.oracle_h;
    let steps = [h0, h0 / 2.0, h0 / 4.0];
    let runs = fdm::extrapolate_branches(cfg.model, &g, &steps, g.lambda() + fdm::DEFAULT_TAIL_LENGTH, cfg.branch)?;
    let mut r = Report::new("oracle", vec!["branch", "h", "eigenvalue_over_mu"]);
    r.note("model", cfg.model.name());
    r.note("lambda", g.lambda());
    for (b, run) in runs.iter().enumerate() {
        r.note(format!("estimate_{}", b + 1), run.estimate);
        r.note(format!("order_{}", b + 1), run.order);
        for &(h, v) in &run.values {
            r.push(vec![(b + 1).into(), h.into(), v.into()]);
        }
    }
    Ok(r)
}

fn analyze(cfg: &RunConfig) -> Result<Report, CliError> {
    let g = cfg.geometry()?;
    let f = ground_field(cfg, &g, 1)?;
    let mut r = Report::new("analyze", vec!["switch_x", "wall", "exponent", "r_squared"]);
    describe(&mut r, cfg, &g);
    r.note("rho", cfg.rho);
    let radii = analysis::default_corner_radii();
    for corner in analysis::switch_points(cfg.model, &g) {
        let fit = analysis::corner_exponent(&f, corner, &radii)?;
        let wall = match corner.wall {
            wavebound::geometry::Wall::Bottom => "bottom",
            wavebound::geometry::Wall::Top => "top",
        };
        r.push(vec![(corner.x / g.d()).into(), wall.into(), fit.exponent.into(), fit.r_squared.into()]);
    }
    // Six points from λ to ρλ: enough for the monotonicity check and both
    // ends of the scaling inequality on the grid.
    let l = g.lambda();
    let hi = if cfg.rho > 1.0 { l * cfg.rho } else { 1.5 * l };
    let lambdas: Vec<f64> = (0..6).map(|i| l + (hi - l) * i as f64 / 5.0).collect();
    let spectra = pool(cfg)?.install(|| {
        lambdas
            .par_iter()
            .map(|&x| scan(cfg.model, &Geometry::new(cfg.d, x * cfg.d).map_err(|e| CliError::Config(e.to_string()))?, cfg))
            .collect::<Result<Vec<_>, CliError>>()
    })?;
    let sweep = SweepResult::new(cfg.model, lambdas, spectra)?;
    let mono = analysis::monotonicity_check(&sweep, 1)?;
    r.note("monotone", mono.ok);
    r.note("monotone_violations", mono.violations.len());
    let scaling = analysis::scaling_check(&sweep, l, cfg.rho, 1)?;
    r.note("scaling_ok", scaling.ok);
    r.note("mu_lambda", scaling.mu_lambda);
    r.note("mu_scaled", scaling.mu_scaled);
    r.note("scaling_margin", scaling.worst_margin);
    Ok(r)
}
