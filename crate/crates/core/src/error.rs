use num_complex::Complex64;
use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invariant form is singular (|det B| = {det:.3e})")]
    SingularForm { det: f64 },

    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{z} lies within the pole exclusion radius of 2πiZ*")]
    Pole { z: Complex64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("eigenvalue clusters cannot be separated: {0}")]
    ClusterSeparation(String),

    #[error("resolvent is numerically singular at ξ = {xi} (condition ≈ {cond:.3e})")]
    SingularResolvent { xi: Complex64, cond: f64 },

    #[error("spectral radius {radius:.6} is not below the series radius {limit}")]
    Radius { radius: f64, limit: f64 },

    #[error("operator is not diagonalizable")]
    NotDiagonalizable,

    #[error("vector is not an eigenvector (residual {residual:.3e})")]
    NotEigenvector { residual: f64 },

    #[error("parameter out of range: {0}")]
    ParameterRange(String),

    #[error("requested order {order} exceeds the supported maximum {max}")]
    OrderOverflow { order: usize, max: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
