use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("energy {energy} is not below the transverse eigenvalue {threshold}")]
    PropagatingMode { energy: f64, threshold: f64 },

    #[error("no sign change of {what} on [{lo}, {hi}]")]
    NoBracket { what: &'static str, lo: f64, hi: f64 },

    #[error("{what} did not converge: {detail}")]
    NotConverged { what: &'static str, detail: String },

    #[error("near-degenerate singular values at root (σ_min = {sigma_min:e}, σ_2 = {sigma_2:e})")]
    PossibleDegeneracy { sigma_min: f64, sigma_2: f64 },

    #[error("point ({x}, {y}) lies outside the strip")]
    OutsideDomain { x: f64, y: f64 },

    #[error("grid: {0}")]
    Grid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
