//! Run configuration: flat `key = value` files with command-line overrides.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use wavebound::{Geometry, ModelKind};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format '{s}' (expected csv or json)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Everything a subcommand needs. Keys in config files use the field names.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    #[serde(serialize_with = "model_name")]
    pub model: ModelKind,
    pub d: f64,
    pub lambda: Option<f64>,
    pub delta: Option<f64>,
    pub modes: usize,
    pub scan_points: usize,
    pub out: Option<String>,
    pub format: Format,
    /// Worker threads for sweeps; 0 picks the machine default. Output does
    /// not depend on it.
    #[serde(skip)]
    pub jobs: usize,
    pub lambda_lo: Option<f64>,
    pub lambda_hi: Option<f64>,
    pub step: Option<f64>,
    pub branch: usize,
    pub nx: usize,
    pub ny: usize,
    pub x_halfwidth: Option<f64>,
    pub rho: f64,
    /// Coarsest finite-difference spacing; the oracle halves it twice.
    pub oracle_h: f64,
}

fn model_name<S: serde::Serializer>(m: &ModelKind, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(m.name())
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            model: ModelKind::A,
            d: 1.0,
            lambda: None,
            delta: None,
            modes: wavebound::modematch::DEFAULT_MODES,
            scan_points: wavebound::modematch::DEFAULT_SCAN_POINTS,
            out: None,
            format: Format::Csv,
            jobs: 0,
            lambda_lo: None,
            lambda_hi: None,
            step: None,
            branch: 1,
            nx: 201,
            ny: 51,
            x_halfwidth: None,
            rho: 1.5,
            oracle_h: wavebound::fdm::DEFAULT_STEPS[0],
        }
    }
}

pub const KEYS: &[&str] = &[
    "model",
    "d",
    "lambda",
    "delta",
    "modes",
    "scan_points",
    "out",
    "format",
    "jobs",
    "lambda_lo",
    "lambda_hi",
    "step",
    "branch",
    "nx",
    "ny",
    "x_halfwidth",
    "rho",
    "oracle_h",
];

/// Splits a config file into `(key, value)` pairs. Blank lines and lines
/// starting with `#` are skipped; keys may not repeat.
pub fn parse_key_values(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out: Vec<(String, String)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(CliError::Config(format!("line {}: expected key = value", n + 1)));
        };
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || !k.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            return Err(CliError::Config(format!("line {}: bad key '{k}'", n + 1)));
        }
        let k = k.replace('-', "_");
        if out.iter().any(|(seen, _)| *seen == k) {
            return Err(CliError::Config(format!("line {}: duplicate key '{k}'", n + 1)));
        }
        out.push((k, v.to_string()));
    }
    Ok(out)
}

fn number<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Config(format!("{key}: cannot parse '{value}'")))
}

impl RunConfig {
    /// Parses a whole config file on top of the defaults.
    pub fn from_text(text: &str) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        for (k, v) in parse_key_values(text)? {
            cfg.set(&k, &v)?;
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "model" => {
                self.model = value
                    .parse()
                    .map_err(|_| CliError::Config(format!("model: expected A or B, got '{value}'")))?
            }
            "d" => self.d = number(key, value)?,
            "lambda" => self.lambda = Some(number(key, value)?),
            "delta" => self.delta = Some(number(key, value)?),
            "modes" => self.modes = number(key, value)?,
            "scan_points" => self.scan_points = number(key, value)?,
            "out" => self.out = Some(value.to_string()),
            "format" => self.format = value.parse().map_err(CliError::Config)?,
            "jobs" => self.jobs = number(key, value)?,
            "lambda_lo" => self.lambda_lo = Some(number(key, value)?),
            "lambda_hi" => self.lambda_hi = Some(number(key, value)?),
            "step" => self.step = Some(number(key, value)?),
            "branch" => self.branch = number(key, value)?,
            "nx" => self.nx = number(key, value)?,
            "ny" => self.ny = number(key, value)?,
            "x_halfwidth" => self.x_halfwidth = Some(number(key, value)?),
            "rho" => self.rho = number(key, value)?,
            "oracle_h" => self.oracle_h = number(key, value)?,
            _ => return Err(CliError::Config(format!("unknown key '{key}'"))),
        }
        Ok(())
    }

    /// Checks values that do not depend on the subcommand.
    pub fn validate(&self) -> Result<(), CliError> {
        let positive = |name: &str, v: Option<f64>| match v {
            Some(x) if !(x.is_finite() && x > 0.0) => Err(CliError::Config(format!("{name} must be positive, got {x}"))),
            _ => Ok(()),
        };
        positive("d", Some(self.d))?;
        positive("lambda", self.lambda)?;
        positive("delta", self.delta)?;
        positive("lambda_lo", self.lambda_lo)?;
        positive("lambda_hi", self.lambda_hi)?;
        positive("step", self.step)?;
        positive("x_halfwidth", self.x_halfwidth)?;
        positive("oracle_h", Some(self.oracle_h))?;
        if self.lambda.is_some() && self.delta.is_some() {
            return Err(CliError::Config("give lambda or delta, not both".into()));
        }
        let (lo, hi) = (wavebound::modematch::MIN_MODES, wavebound::modematch::MAX_MODES);
        if !(lo..=hi).contains(&self.modes) {
            return Err(CliError::Config(format!("modes must lie in {lo}..={hi}, got {}", self.modes)));
        }
        if self.scan_points < 10 {
            return Err(CliError::Config("scan_points must be at least 10".into()));
        }
        if self.branch == 0 {
            return Err(CliError::Config("branch index starts at 1".into()));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(CliError::Config("field grids need at least 2 points per axis".into()));
        }
        if !(self.rho.is_finite() && self.rho >= 1.0) {
            return Err(CliError::Config(format!("rho must be at least 1, got {}", self.rho)));
        }
        Ok(())
    }

    /// Strip geometry from `lambda` (with `d`) or `delta` (with `d`).
    pub fn geometry(&self) -> Result<Geometry, CliError> {
        let delta = match (self.lambda, self.delta) {
            (Some(l), None) => l * self.d,
            (None, Some(delta)) => delta,
            (None, None) => return Err(CliError::Config("this command needs lambda or delta".into())),
            (Some(_), Some(_)) => return Err(CliError::Config("give lambda or delta, not both".into())),
        };
        Geometry::new(self.d, delta).map_err(|e| CliError::Config(e.to_string()))
    }
}
