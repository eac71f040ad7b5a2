mod common;

use common::{seeded, stochastic};
use isored::matrix::submatrix;
use isored::{project_columns, NonNegativeMatrix, ProbabilityVector};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::seq::index::sample;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn projection_is_idempotent(n in 1usize..25, seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let raw = DMatrix::from_fn(n, n, |_, _| rng.random_range(0.0..5.0));
        let once = project_columns(NonNegativeMatrix::from_dense(raw).unwrap()).unwrap();
        let twice = project_columns(once.as_non_negative().clone()).unwrap();
        prop_assert!((once.to_dense() - twice.to_dense()).amax() <= 1e-14);
    }

    #[test]
    fn stochastic_map_keeps_the_simplex(n in 1usize..40, zeros in 0.0f64..0.9, seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = stochastic(n, zeros, &mut rng);
        let x = ProbabilityVector::from_weights((0..n).map(|_| rng.random::<f64>() + 1e-3).collect()).unwrap();
        let y = a.mul_vec(x.as_slice()).unwrap();
        prop_assert!(y.iter().all(|&v| v >= 0.0));
        prop_assert!((y.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert!(a.apply(&x).is_ok());
    }

    #[test]
    fn submatrix_composes(n in 2usize..15, seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let m = DMatrix::from_fn(n, n, |_, _| rng.random::<f64>());
        let mut pick = |len: usize| {
            let k = rng.random_range(1..=len);
            sample(&mut rng, len, k).into_vec()
        };
        let rows = pick(n);
        let cols = pick(n);
        let inner_rows = pick(rows.len());
        let inner_cols = pick(cols.len());
        let nested = submatrix(&submatrix(&m, &rows, &cols).unwrap(), &inner_rows, &inner_cols).unwrap();
        let r: Vec<usize> = inner_rows.iter().map(|&i| rows[i]).collect();
        let c: Vec<usize> = inner_cols.iter().map(|&j| cols[j]).collect();
        prop_assert_eq!(nested, submatrix(&m, &r, &c).unwrap());
    }
}
