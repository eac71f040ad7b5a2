//! Exact isospectral reduction over rational functions in `lambda`.
//!
//! Desk-scale only: branch enumeration is exponential in the worst case.
//! The numeric routes in [`crate::reduction`] are checked against it.

pub mod graph;
pub mod poly;
pub mod rational;
pub mod spectrum;

pub use graph::{Branch, WeightedDigraph};
pub use poly::{characteristic_polynomial, parse_rational, Polynomial};
pub use rational::RationalFunction;
pub use spectrum::{determinant, polynomial_roots, reduced_characteristic, reduced_spectrum};
