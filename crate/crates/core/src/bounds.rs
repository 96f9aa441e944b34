//! Dirichlet–Neumann bracketing bounds on the number and position of bound
//! states, as functions of the window parameter `λ = δ/d`.

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BracketReport {
    pub lambda: f64,
    pub n_min: usize,
    pub n_max: usize,
    /// `(lower, upper)` on `μ_m/μ` for `m = 1..=n_max`, upper clamped to 1.
    pub windows: Vec<(f64, f64)>,
    /// Whether the unclamped upper bound exceeded 1, per window.
    pub vacuous_upper: Vec<bool>,
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidArgument(format!("lambda must be positive, got {lambda}")));
    }
    Ok(())
}

/// `(-⌊-λ⌋ - 1, -⌊-λ⌋)`: the number of bound states lies in this range.
pub fn state_count_bounds(lambda: f64) -> Result<(usize, usize)> {
    check_lambda(lambda)?;
    let upper = -(-lambda).floor();
    let n_max = upper as usize;
    Ok((n_max - 1, n_max))
}

fn raw_window(m: usize, lambda: f64) -> Result<(f64, f64)> {
    if m < 1 {
        return Err(Error::InvalidArgument("eigenvalue index starts at 1".into()));
    }
    check_lambda(lambda)?;
    let m = m as f64;
    Ok((((m - 1.0) / lambda).powi(2), (m / lambda).powi(2)))
}

/// Bounds on `μ_m/μ` for the `m`-th eigenvalue, upper end clamped to 1.
pub fn eigenvalue_window(m: usize, lambda: f64) -> Result<(f64, f64)> {
    let (lo, hi) = raw_window(m, lambda)?;
    Ok((lo, hi.min(1.0)))
}

/// The `m`-th eigenvalue detaches from μ at some `λ_m ∈ [m - 1, m]`.
pub fn critical_lambda_window(m: usize) -> Result<(f64, f64)> {
    if m < 1 {
        return Err(Error::InvalidArgument("eigenvalue index starts at 1".into()));
    }
    Ok(((m - 1) as f64, m as f64))
}

pub fn bracket_report(lambda: f64) -> Result<BracketReport> {
    let (n_min, n_max) = state_count_bounds(lambda)?;
    let mut windows = Vec::with_capacity(n_max);
    let mut vacuous_upper = Vec::with_capacity(n_max);
    for m in 1..=n_max {
        let (lo, hi) = raw_window(m, lambda)?;
        windows.push((lo, hi.min(1.0)));
        vacuous_upper.push(hi > 1.0);
    }
    Ok(BracketReport {
        lambda,
        n_min,
        n_max,
        windows,
        vacuous_upper,
    })
}

/// A reported spectrum that contradicts the bracketing bounds.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Count { count: usize, n_min: usize, n_max: usize },
    Window { index: usize, value: f64, lower: f64, upper: f64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Count { count, n_min, n_max } => {
                write!(f, "{count} bound states outside [{n_min}, {n_max}]")
            }
            Violation::Window { index, value, lower, upper } => {
                write!(f, "eigenvalue {index} at {value} outside [{lower}, {upper}]")
            }
        }
    }
}

/// Checks sorted eigenvalues (units of μ) against the bounds. Windows are
/// inflated by `slack` to absorb rounding.
pub fn validate(lambda: f64, eigenvalues: &[f64], slack: f64) -> Result<Vec<Violation>> {
    let report = bracket_report(lambda)?;
    let mut out = Vec::new();
    let count = eigenvalues.len();
    if count < report.n_min || count > report.n_max {
        out.push(Violation::Count {
            count,
            n_min: report.n_min,
            n_max: report.n_max,
        });
    }
    for (i, &value) in eigenvalues.iter().enumerate() {
        let (lower, upper) = eigenvalue_window(i + 1, lambda)?;
        if value < lower - slack || value > upper + slack {
            out.push(Violation::Window {
                index: i + 1,
                value,
                lower,
                upper,
            });
        }
    }
    Ok(out)
}
