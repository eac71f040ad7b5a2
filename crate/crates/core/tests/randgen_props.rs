mod common;

use common::{seeded, stochastic};
use isored::randgen::{
    bounded_zeros, gen_sparse_stochastic, irreducible_positive_row, make_banded, make_near_averaging, make_two_block,
    near_averaging_bound_holds, primitive_complement, random_chain, random_doubly_stochastic, random_stochastic,
    BurrConfig, ChainFamily, SparseGenConfig, TwoBlockVariant,
};
use isored::{diameter_tau, reduce_block, validate_stochastic, StochasticMatrix};
use proptest::prelude::*;

fn assert_stochastic(a: &StochasticMatrix) -> Result<(), TestCaseError> {
    prop_assert!(validate_stochastic(a.as_non_negative().clone()).is_ok());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn generators_return_stochastic_matrices(n in 4usize..40, alpha in 0.05f64..0.95, seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let burr = BurrConfig::new(alpha).unwrap();
        assert_stochastic(&gen_sparse_stochastic(&SparseGenConfig { n, nnz_per_col: 3.min(n), burr, seed }).unwrap())?;
        assert_stochastic(&random_stochastic(n, 0.4, &mut rng).unwrap())?;
        assert_stochastic(&random_doubly_stochastic(n, &mut rng).unwrap())?;
        assert_stochastic(&make_banded(n, 1 + n / 4).unwrap())?;
        assert_stochastic(&bounded_zeros(n, 1, &mut rng).unwrap().0)?;
        assert_stochastic(&primitive_complement(n, n / 2, &mut rng).unwrap().0)?;
        for family in ChainFamily::ALL {
            assert_stochastic(&random_chain(family, n, &mut rng).unwrap())?;
        }
        let (m, row) = irreducible_positive_row(n, &mut rng).unwrap();
        prop_assert!(m.to_dense().row(row).iter().all(|&v| v > 0.0));
        let quarter = 4 * (n / 4).max(1);
        if near_averaging_bound_holds(quarter, 2.0) {
            assert_stochastic(&make_near_averaging(quarter, 2.0, seed).unwrap())?;
        }
    }

    #[test]
    fn two_block_reduction_scales_the_diameter(m in 2usize..12, a in 0.01f64..0.49, p in 0.01f64..0.99, variant in 0usize..3, seed in any::<u64>()) {
        let b = stochastic(m, 0.3, &mut seeded(seed));
        let variant = match variant {
            0 => TwoBlockVariant::Padded,
            1 => TwoBlockVariant::LWeighted(None),
            _ => TwoBlockVariant::SingleRow(None),
        };
        let built = make_two_block(a, p, &b, &variant);
        // the default weights can sit below a/m
        prop_assume!(built.is_ok());
        let (full, kept) = built.unwrap();
        assert_stochastic(&full)?;
        let r = reduce_block(&full, &kept).unwrap().reduced;
        let expected = (1.0 - p) * diameter_tau(&b);
        prop_assert!((diameter_tau(&r) - expected).abs() <= 1e-10, "{} vs {}", diameter_tau(&r), expected);
    }
}
