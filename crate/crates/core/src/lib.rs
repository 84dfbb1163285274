//! Multiplicatively monotone arithmetic functions and Toeplitz-multiplicative
//! determinants.
//!
//! - [`arith`]: tabulated functions, Dirichlet convolution, Bougaïef
//!   derivative/integral, multiplicative monotonicity.
//! - [`dfactor`]: direct-factor pairs, friable/sifted splits, reductions,
//!   empirical densities.
//! - [`means`]: `α(f; y)`, `α(f; A)`, logarithmic and Cesàro means.
//! - [`toeplitz`]: kernels, incremental Cholesky determinant sequences,
//!   product formulas and limit diagnostics.

pub mod arith;
pub mod dfactor;
pub mod error;
pub mod exec;
pub mod functions;
pub mod interval;
pub mod means;
pub mod rational;
pub mod sets;
pub mod sieve;
pub mod toeplitz;

pub use error::{Error, Result};
pub use exec::Exec;
