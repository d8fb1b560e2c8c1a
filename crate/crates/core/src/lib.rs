//! Function theory on finite-dimensional real commutative superalgebras.

pub mod acceptance;
pub mod algebra;
pub mod conditions;
pub mod error;
pub mod exec;
pub mod kernels;
pub mod linalg;
pub mod quadrature;
pub mod scalar;
pub mod superfunc;
pub mod textio;

#[cfg(test)]
mod fixtures;

pub use error::{Error, Result};
