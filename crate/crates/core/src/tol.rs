//! Numerical thresholds shared by every module.

use serde::{Deserialize, Serialize};

/// Radius below which the Bernoulli series is used for the canonical function.
pub const SERIES_RADIUS: f64 = 1.0;
/// Number of odd Taylor terms kept for the canonical function (powers up to 47).
pub const SERIES_TERMS: usize = 24;
/// Highest mixed order supported by the analytic identity checks.
pub const MAX_ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Axiom residuals for exact or near-exact data.
    pub tol_exact: f64,
    /// Lower bound on |det B|.
    pub tol_rank: f64,
    /// Relative eigenvalue clustering threshold.
    pub tol_cluster: f64,
    /// Projector and nilpotency decisions.
    pub tol_spectral: f64,
    /// mCDYBE / equivariance residual budget.
    pub tol_residual: f64,
    /// Exclusion radius around 2πiZ* and around vanishing denominators.
    pub delta_pole: f64,
    /// Initial number of trapezoidal nodes per circle.
    pub nodes: usize,
    /// Node cap for adaptive doubling.
    pub max_nodes: usize,
    /// Successive-doubling convergence threshold.
    pub quad_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tol_exact: 1e-12,
            tol_rank: 1e-9,
            tol_cluster: 1e-6,
            tol_spectral: 1e-9,
            tol_residual: 1e-8,
            delta_pole: 1e-6,
            nodes: 64,
            max_nodes: 1024,
            quad_tol: 1e-10,
        }
    }
}

impl Tolerances {
    /// Tolerance used for the tensor form of the Yang-Baxter residual.
    pub fn tensor_residual(&self) -> f64 {
        10.0 * self.tol_residual
    }
}
