use proptest::prelude::*;
use segstrat::{
    compute_lwd, fold_class_pixels, split_with, wdes_split, Execution, GaConfig, LabeledDataset,
    Method, SplitSpec,
};

fn dataset_strategy() -> impl Strategy<Value = LabeledDataset> {
    (1usize..5, 6usize..30).prop_flat_map(|(c, n)| {
        prop::collection::vec(prop::collection::vec(0u64..500, c), n).prop_map(|rows| {
            let rows = rows
                .into_iter()
                .map(|mut r| {
                    if r.iter().all(|&v| v == 0) {
                        r[0] = 1;
                    }
                    r
                })
                .collect();
            LabeledDataset::from_counts(rows).unwrap()
        })
    })
}

fn small_ga(seed: u64) -> GaConfig {
    GaConfig::default().with_seed(seed).with_budget(12, 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_method_conserves_samples_and_pixels(d in dataset_strategy(), k in 2usize..4, seed in any::<u64>()) {
        let spec = SplitSpec::uniform(k, seed).unwrap();
        for method in Method::ALL {
            let a = split_with(method, &d, &spec, &small_ga(seed)).unwrap();
            prop_assert_eq!(a.len(), d.len());
            prop_assert_eq!(a.fold_sizes().iter().sum::<usize>(), d.len());
            let rows = fold_class_pixels(&d, &a).unwrap();
            for c in 0..d.class_count() {
                prop_assert_eq!(rows.iter().map(|r| r[c]).sum::<u64>(), d.class_pixels()[c]);
            }
            if method != Method::Ips {
                prop_assert_eq!(a.fold_sizes(), spec.fold_sizes(d.len()).unwrap());
            }
        }
    }

    #[test]
    fn every_method_is_deterministic(d in dataset_strategy(), seed in any::<u64>()) {
        let spec = SplitSpec::uniform(3, seed).unwrap();
        for method in Method::ALL {
            let a = split_with(method, &d, &spec, &small_ga(seed)).unwrap();
            let b = split_with(method, &d, &spec, &small_ga(seed)).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn wdes_never_worse_than_its_initial_population(d in dataset_strategy(), seed in any::<u64>()) {
        let spec = SplitSpec::uniform(2, 0).unwrap();
        let (a, trace) = wdes_split(&d, &spec, &small_ga(seed)).unwrap();
        let (lwd, _) = compute_lwd(&d, &a).unwrap();
        prop_assert!(lwd <= trace.best_fitness_per_generation[0]);
        for w in trace.best_fitness_per_generation.windows(2) {
            prop_assert!(w[1] <= w[0]);
        }
    }

    #[test]
    fn wdes_independent_of_execution_mode(d in dataset_strategy(), seed in any::<u64>()) {
        let spec = SplitSpec::uniform(2, 0).unwrap();
        let seq = wdes_split(&d, &spec, &small_ga(seed).with_execution(Execution::Sequential)).unwrap();
        let par = wdes_split(&d, &spec, &small_ga(seed).with_execution(Execution::Parallel)).unwrap();
        prop_assert_eq!(seq, par);
    }
}
