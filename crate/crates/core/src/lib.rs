//! Discrete spectrum of the Laplacian in a straight planar strip whose walls
//! switch between Dirichlet and Neumann conditions.
//!
//! Two configurations are supported (see [`ModelKind`]). Eigenvalues are
//! computed by mode matching across the two interfaces at `x = ±δ`, checked
//! against Dirichlet–Neumann bracketing bounds, variational thresholds and an
//! independent finite-difference discretization.
//!
//! All spectral work happens in units where the strip width is one; energies
//! are reported in units of the essential-spectrum threshold `μ = π²/(4d²)`.

pub mod analysis;
pub mod bounds;
mod error;
pub mod fdm;
pub mod geometry;
pub mod modematch;
pub mod quadrature;
pub mod roots;
pub mod variational;

pub use error::{Error, Result};
pub use geometry::{Geometry, ModelKind};
pub use modematch::{EigenField, Spectrum};
