mod common;

use common::{seeded, stochastic};
use isored::randgen::{random_chain, ChainFamily};
use isored::spectral::{distance_to_union, eigenvalues, gershgorin, spectral_gap};
use isored::{diameter_tau, inner_spectral_radius, is_non_critical, min_entry, StochasticMatrix};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn inner_radius_below_diameter(n in 1usize..30, zeros in 0.0f64..0.95, seed in any::<u64>()) {
        let a = stochastic(n, zeros, &mut seeded(seed));
        let rho = inner_spectral_radius(&a).unwrap();
        prop_assert!(rho <= diameter_tau(&a) + 1e-10, "rho {} tau {}", rho, diameter_tau(&a));
    }

    #[test]
    fn minimum_entry_bounds(n in 1usize..30, zeros in 0.0f64..0.5, seed in any::<u64>()) {
        let a = stochastic(n, zeros, &mut seeded(seed));
        let nm = n as f64 * min_entry(&a);
        prop_assert!(diameter_tau(&a) <= 1.0 - nm + 1e-12);
        prop_assert!(spectral_gap(&a).unwrap() >= nm - 1e-10);
    }

    #[test]
    fn heavy_row_bounds_diameter(n in 2usize..25, c in 0.0f64..1.0, row in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let b = stochastic(n, 0.5, &mut seeded(seed)).to_dense();
        let i0 = row.index(n);
        let a = DMatrix::from_fn(n, n, |i, j| (1.0 - c) * b[(i, j)] + if i == i0 { c } else { 0.0 });
        let a = StochasticMatrix::from_dense(a).unwrap();
        prop_assert!(diameter_tau(&a) <= 1.0 - c + 1e-12);
    }

    #[test]
    fn non_criticality_matches_spectrum(n in 4usize..20, family in 0usize..4, seed in any::<u64>()) {
        let family = ChainFamily::ALL[family];
        let a = random_chain(family, n, &mut seeded(seed)).unwrap();
        let rho = inner_spectral_radius(&a).unwrap();
        prop_assert_eq!(is_non_critical(&a), rho < 1.0 - 1e-9, "{:?} rho {}", family, rho);
    }

    #[test]
    fn eigenvalues_inside_gershgorin_union(n in 1usize..25, seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let m = DMatrix::from_fn(n, n, |_, _| rng.random_range(-2.0..2.0));
        let disks = gershgorin(&m);
        for z in eigenvalues(&m).unwrap() {
            prop_assert!(distance_to_union(&disks, z) <= 1e-9, "{} outside", z);
        }
    }

    #[test]
    fn minimum_entry_is_superadditive(n in 1usize..20, seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let a = stochastic(n, 0.2, &mut rng);
        let b = stochastic(n, 0.2, &mut rng);
        let mean = StochasticMatrix::from_dense((a.to_dense() + b.to_dense()) * 0.5).unwrap();
        prop_assert!(min_entry(&mean) >= 0.5 * (min_entry(&a) + min_entry(&b)) - 1e-15);
    }
}
