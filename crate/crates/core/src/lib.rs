//! Finite alternating binomial sums, polylogarithms, and several globally
//! convergent series for the Riemann zeta function, with the tooling to
//! cross-check them against each other.

pub mod error;
pub mod euler_maclaurin;
pub mod exec;
mod extended;
pub mod finite_sums;
pub mod numeric;
pub mod param_zeta;
pub mod polylog;
pub mod quad;
pub mod series;
pub mod special;
pub mod zero_lab;

pub use error::{Error, Result};
pub use exec::Execution;
pub use numeric::ComplexVal;
