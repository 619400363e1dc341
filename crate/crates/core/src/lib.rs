//! Canonical dynamical r-matrix `R(w) = f(ad w)` with
//! `f(z) = coth(z/2)/2 - 1/z` on finite-dimensional self-dual Lie algebras,
//! together with numerical and exact checks of the modified classical
//! dynamical Yang-Baxter equation and the scalar identities behind it.

pub mod cli;
pub mod error;
pub mod holofun;
pub mod identities;
pub mod liealg;
pub mod matfun;
pub mod rmat;
pub mod tol;
pub mod ybe;

pub use error::{Error, Result};
pub use tol::Tolerances;

/// Dense complex operator on the algebra, acting on coordinate columns.
pub type Operator = nalgebra::DMatrix<num_complex::Complex64>;
