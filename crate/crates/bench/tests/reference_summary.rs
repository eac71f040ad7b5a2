use std::path::Path;

use isored_bench::{read_csv_file, summarize};

fn fixture() -> Vec<isored_bench::BenchRecord> {
    read_csv_file(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/reference_run.csv")).unwrap()
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let k = xs.len();
    if k % 2 == 1 {
        xs[k / 2]
    } else {
        0.5 * (xs[k / 2 - 1] + xs[k / 2])
    }
}

#[test]
fn reference_run_summary() {
    let records = fixture();
    assert_eq!(records.len(), 36);
    let s = summarize(&records).unwrap();
    assert_eq!(s.trials, 36);
    assert_eq!(s.convergent, 36);
    // every row of the reference run has the scheme at least as accurate
    assert_eq!(s.scheme_not_worse, 1.0);
    let ratios: Vec<f64> = records.iter().map(|r| r.t2 / r.t1).collect();
    assert_eq!(s.time_ratio.median, median(ratios));
    assert!(s.time_ratio.median < 0.5);
    assert_eq!(s.rho_i.median, median(records.iter().map(|r| r.rho_i).collect()));
    assert!(s.rho_i.median >= 0.93);
    assert!(s.rho_i.q1 <= s.rho_i.median && s.rho_i.median <= s.rho_i.q3);
}

#[test]
fn reference_run_round_trips() {
    let records = fixture();
    let mut buf = Vec::new();
    isored_bench::write_csv(&records, &mut buf).unwrap();
    assert_eq!(isored_bench::read_csv(buf.as_slice()).unwrap(), records);
}
