//! Isospectral reduction of column-stochastic matrices and stationary
//! vectors computed through it.
//!
//! A matrix is reduced onto a kept vertex set `S` at `lambda = 1`; the
//! reduced matrix is again stochastic, its stationary vector is found
//! directly or by power iteration, and the full vector is lifted back.
//! [`symbolic`] carries the exact rational-function version used as an
//! oracle; [`randgen`] builds benchmark and example instances.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN. Dense
// kernels index several arrays per loop variable.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod io;
pub mod lu;
pub mod matrix;
pub mod randgen;
pub mod reduction;
pub mod solvers;
pub mod spectral;
pub mod symbolic;

pub use error::{Error, Result};
pub use matrix::{
    distance, one_norm, project_columns, residual, validate_stochastic, CscMatrix, IndexSet, NonNegativeMatrix,
    ProbabilityVector, StochasticMatrix, Storage,
};
pub use reduction::{
    reconstruct_stationary, reduce, reduce_block, reduce_sequential, select_subset, ReductionMode, ReductionRecord,
    SelectionStrategy,
};
pub use solvers::{
    direct_stationary, isospectral_stationary, perron_frobenius, InnerSolver, Method, SolveOutcome, SolverConfig,
};
pub use spectral::{diameter_tau, inner_spectral_radius, is_non_critical, min_entry, SpectralReport};
