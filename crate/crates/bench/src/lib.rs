//! Repeated comparison of the isospectral stationary solver against a
//! baseline on heavy-tailed random sparse chains.
//!
//! Each trial draws a matrix, measures its inner spectral radius, then
//! times the baseline and the reduce-solve-lift scheme separately. Rows
//! go to CSV; [`summarize`] condenses a batch.

mod record;
mod run;
mod summary;

pub use record::{read_csv, read_csv_file, write_csv, write_csv_file, BenchRecord, Flag};
pub use run::{compare_on, run_comparison, run_on_matrix, Baseline, RunConfig};
pub use summary::{summarize, Quartiles, Summary};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("no records to summarize")]
    EmptyInput,

    #[error("invalid run configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown flag {0:?}")]
    UnknownFlag(String),

    #[error(transparent)]
    Core(#[from] isored::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, BenchError>;
