use std::fmt;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{BenchError, Result};

/// Per-trial warning attached to a record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flag {
    /// The dense eigensolver failed, `rho_i` is NaN.
    RhoFailed,
    BaselineFailed,
    BaselineNotConverged,
    SchemeFailed,
    SchemeNotConverged,
}

impl Flag {
    const ALL: [Flag; 5] = [
        Flag::RhoFailed,
        Flag::BaselineFailed,
        Flag::BaselineNotConverged,
        Flag::SchemeFailed,
        Flag::SchemeNotConverged,
    ];

    fn name(self) -> &'static str {
        match self {
            Flag::RhoFailed => "rho-failed",
            Flag::BaselineFailed => "baseline-failed",
            Flag::BaselineNotConverged => "baseline-not-converged",
            Flag::SchemeFailed => "scheme-failed",
            Flag::SchemeNotConverged => "scheme-not-converged",
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flag {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self> {
        Flag::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| BenchError::UnknownFlag(s.to_string()))
    }
}

/// One trial. Times in seconds; residuals are `||A v - v||_2`, `d` the
/// Euclidean distance between the two vectors. Failed solves leave NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub rho_i: f64,
    pub t1: f64,
    pub t2: f64,
    pub e1: f64,
    pub e2: f64,
    pub d: f64,
    pub flags: Vec<Flag>,
}

impl BenchRecord {
    /// Both solves returned a converged vector with finite residual.
    pub fn is_convergent(&self) -> bool {
        self.e1.is_finite()
            && self.e2.is_finite()
            && !self.flags.iter().any(|f| {
                matches!(
                    f,
                    Flag::BaselineFailed | Flag::BaselineNotConverged | Flag::SchemeFailed | Flag::SchemeNotConverged
                )
            })
    }

    pub fn has_finite_residuals(&self) -> bool {
        self.e1.is_finite() && self.e2.is_finite()
    }
}

// `csv` writes floats through ryu, the shortest representation that reads
// back to the same bits
#[derive(Serialize, Deserialize)]
struct Row {
    rho_i: f64,
    t1: f64,
    t2: f64,
    e1: f64,
    e2: f64,
    d: f64,
    flags: String,
}

impl From<&BenchRecord> for Row {
    fn from(r: &BenchRecord) -> Self {
        Row {
            rho_i: r.rho_i,
            t1: r.t1,
            t2: r.t2,
            e1: r.e1,
            e2: r.e2,
            d: r.d,
            flags: r.flags.iter().map(|f| f.name()).collect::<Vec<_>>().join("|"),
        }
    }
}

impl TryFrom<Row> for BenchRecord {
    type Error = BenchError;

    fn try_from(r: Row) -> Result<Self> {
        let flags = r
            .flags
            .split('|')
            .filter(|s| !s.is_empty())
            .map(Flag::from_str)
            .collect::<Result<Vec<_>>>()?;
        Ok(BenchRecord {
            rho_i: r.rho_i,
            t1: r.t1,
            t2: r.t2,
            e1: r.e1,
            e2: r.e2,
            d: r.d,
            flags,
        })
    }
}

/// Header `rho_i,t1,t2,e1,e2,d,flags`, flags joined by `|`.
pub fn write_csv<W: Write>(records: &[BenchRecord], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in records {
        w.serialize(Row::from(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv_file(records: &[BenchRecord], path: impl AsRef<Path>) -> Result<()> {
    write_csv(records, File::create(path)?)
}

pub fn read_csv<R: Read>(reader: R) -> Result<Vec<BenchRecord>> {
    let mut r = csv::Reader::from_reader(reader);
    r.deserialize::<Row>().map(|row| BenchRecord::try_from(row?)).collect()
}

pub fn read_csv_file(path: impl AsRef<Path>) -> Result<Vec<BenchRecord>> {
    read_csv(File::open(path)?)
}
