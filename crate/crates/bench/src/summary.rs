use serde::Serialize;

use crate::record::BenchRecord;
use crate::{BenchError, Result};

/// Quartiles by linear interpolation between order statistics. NaN when
/// the sample was empty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quartiles {
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
}

impl Quartiles {
    fn of(mut xs: Vec<f64>) -> Self {
        xs.retain(|x| !x.is_nan());
        xs.sort_by(f64::total_cmp);
        Quartiles {
            q1: quantile(&xs, 0.25),
            median: quantile(&xs, 0.5),
            q3: quantile(&xs, 0.75),
        }
    }

    pub fn iqr(&self) -> f64 {
        self.q3 - self.q1
    }
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let h = q * (sorted.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub trials: usize,
    /// Trials where both solves converged with finite residuals.
    pub convergent: usize,
    pub rho_i: Quartiles,
    /// Over all trials; times are recorded even when a solve fails.
    pub time_ratio: Quartiles,
    /// `e2 / e1` over convergent trials with `e1 > 0`.
    pub error_ratio: Quartiles,
    pub distance: Quartiles,
    /// Share of convergent trials with `e2 <= e1`.
    pub scheme_not_worse: f64,
}

pub fn summarize(records: &[BenchRecord]) -> Result<Summary> {
    if records.is_empty() {
        return Err(BenchError::EmptyInput);
    }
    let ok: Vec<&BenchRecord> = records.iter().filter(|r| r.is_convergent()).collect();
    let not_worse = ok.iter().filter(|r| r.e2 <= r.e1).count();
    Ok(Summary {
        trials: records.len(),
        convergent: ok.len(),
        rho_i: Quartiles::of(records.iter().map(|r| r.rho_i).collect()),
        time_ratio: Quartiles::of(records.iter().map(|r| r.t2 / r.t1).collect()),
        error_ratio: Quartiles::of(ok.iter().filter(|r| r.e1 > 0.0).map(|r| r.e2 / r.e1).collect()),
        distance: Quartiles::of(ok.iter().map(|r| r.d).collect()),
        scheme_not_worse: if ok.is_empty() {
            f64::NAN
        } else {
            not_worse as f64 / ok.len() as f64
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::Flag;

    fn rec(t1: f64, t2: f64, e1: f64, e2: f64) -> BenchRecord {
        BenchRecord {
            rho_i: 0.95,
            t1,
            t2,
            e1,
            e2,
            d: 1e-12,
            flags: Vec::new(),
        }
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(summarize(&[]), Err(BenchError::EmptyInput)));
    }

    #[test]
    fn single_record_is_its_own_median() {
        let s = summarize(&[rec(2.0, 1.0, 4e-16, 1e-16)]).unwrap();
        assert_eq!(
            s.time_ratio,
            Quartiles {
                q1: 0.5,
                median: 0.5,
                q3: 0.5
            }
        );
        assert_eq!(s.error_ratio.median, 0.25);
        assert_eq!(s.distance.median, 1e-12);
        assert_eq!(s.rho_i.median, 0.95);
        assert_eq!(s.scheme_not_worse, 1.0);
    }

    #[test]
    fn identical_records_have_no_spread() {
        let s = summarize(&vec![rec(0.3, 0.1, 1e-15, 2e-16); 7]).unwrap();
        assert_eq!(s.time_ratio.iqr(), 0.0);
        assert_eq!(s.error_ratio.iqr(), 0.0);
        assert_eq!(s.distance.iqr(), 0.0);
    }

    #[test]
    fn interpolated_quartiles() {
        // ratios 1, 2, 3, 4
        let r: Vec<_> = (1..=4).map(|k| rec(1.0, k as f64, 1.0, 1.0)).collect();
        let s = summarize(&r).unwrap();
        assert_eq!(
            s.time_ratio,
            Quartiles {
                q1: 1.75,
                median: 2.5,
                q3: 3.25
            }
        );
    }

    #[test]
    fn failed_trials_leave_the_accuracy_columns() {
        let mut bad = rec(1.0, 3.0, 1e-16, f64::NAN);
        bad.flags.push(Flag::SchemeFailed);
        let s = summarize(&[rec(1.0, 1.0, 1e-16, 2e-16), bad]).unwrap();
        assert_eq!(s.trials, 2);
        assert_eq!(s.convergent, 1);
        assert_eq!(s.scheme_not_worse, 0.0);
        assert_eq!(s.time_ratio.median, 2.0);
        assert_eq!(s.error_ratio.median, 2.0);
    }
}
