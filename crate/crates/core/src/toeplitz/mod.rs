//! Hermitian Toeplitz-multiplicative determinants `D_n = det(c(i/j))`.
//!
//! All determinant sequences come from one incremental `LDLᴴ` engine
//! ([`cholesky`]); pivots are the ratios `r_n = D_n / D_{n-1}`, stored in
//! the log domain.

pub mod checks;
pub mod cholesky;
pub mod kernel;
pub mod oracle;
pub mod product;
pub mod scalar;
pub mod szego;

pub use checks::{check_ratio_mult_monotone, prop29_summary, prop30_factorization_check, Prop29Report, Prop30Report};
pub use cholesky::{
    additive_toeplitz_dets, cholesky_on_indices, det_sequences, incremental_cholesky_dets, DeterminantSequence,
};
pub use kernel::{parse_kernel, DfValues, Kernel, Sigma};
pub use product::{cm_limit, hilberdink_product_formula, product_formula_sequence, CmLimit};
pub use szego::{szego_symbol_tools, SzegoReport, TrigPoly};
