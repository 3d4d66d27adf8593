//! Library metrics against the exact-arithmetic reference, and the oracle
//! module against an independent bitmask enumeration.

#[path = "support/reference.rs"]
mod reference;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use segstrat::oracle::{enumerate_optimal, DEFAULT_LIMIT};
use segstrat::{
    compute_complexity, compute_lwd, compute_pld, compute_sd, FoldAssignment, LabeledDataset,
    SplitSpec,
};

const TOL: f64 = 1e-12;

fn random_counts(rng: &mut ChaCha8Rng, n: usize, c: usize) -> Vec<Vec<u64>> {
    (0..n)
        .map(|_| {
            let mut row: Vec<u64> = (0..c)
                .map(|_| if rng.gen_bool(0.35) { 0 } else { rng.gen_range(1..60) })
                .collect();
            if row.iter().all(|&v| v == 0) {
                row[rng.gen_range(0..c)] = rng.gen_range(1..60);
            }
            row
        })
        .collect()
}

#[test]
fn metrics_match_reference_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    for case in 0..1000 {
        let n = rng.gen_range(2..=8);
        let c = rng.gen_range(1..=3);
        let counts = random_counts(&mut rng, n, c);
        let d = LabeledDataset::from_counts(counts.clone()).unwrap();
        let split_at = rng.gen_range(1..n);
        let r0 = split_at as f64 / n as f64 + rng.gen_range(-0.05..0.05);
        let r0 = r0.clamp(0.05, 0.95);
        let spec = SplitSpec::new(vec![r0, 1.0 - r0], 0).unwrap();

        let mut fold_of: Vec<usize> = (0..n).map(|i| usize::from(i >= split_at)).collect();
        rand::seq::SliceRandom::shuffle(fold_of.as_mut_slice(), &mut rng);
        let a = FoldAssignment::new(2, fold_of.clone()).unwrap();

        let sd = compute_sd(&a, &spec).unwrap();
        assert!((sd - reference::sd(&fold_of, spec.proportions())).abs() < TOL, "case {case}");

        let (lwd, _) = compute_lwd(&d, &a).unwrap();
        let want = reference::lwd(&counts, &fold_of, 2).unwrap();
        assert!((lwd - want).abs() < TOL, "case {case}: {lwd} vs {want}");

        match (compute_pld(&d, &a), reference::pld(&counts, &fold_of, 2)) {
            (Ok(got), Some(want)) => {
                assert!((got.mean - want).abs() < TOL * want.max(1.0), "case {case}: {} vs {want}", got.mean)
            }
            (Err(_), None) => {}
            (got, want) => panic!("case {case}: PLD disagreement {got:?} vs {want:?}"),
        }

        let cx = compute_complexity(&d);
        assert!((cx.cc - reference::cc(&counts)).abs() < TOL, "case {case}");
        assert!((cx.cu - reference::cu(&counts)).abs() < TOL, "case {case}");
        assert!((cx.air - reference::air(&counts)).abs() < TOL * cx.air.max(1.0), "case {case}");
        assert!((cx.entropy - reference::entropy(&counts)).abs() < TOL, "case {case}");
    }
}

#[test]
fn oracle_matches_bitmask_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let n = rng.gen_range(2..=10);
        let c = rng.gen_range(1..=4);
        let counts = random_counts(&mut rng, n, c);
        let d = LabeledDataset::from_counts(counts.clone()).unwrap();
        let spec = SplitSpec::uniform(2, 0).unwrap();
        let sizes = spec.fold_sizes(n).unwrap();
        let got = enumerate_optimal(&d, &spec, DEFAULT_LIMIT).unwrap();
        let (want, feasible) = reference::brute_force_min_lwd_two_folds(&counts, [sizes[0], sizes[1]]);
        assert_eq!(got.enumerated_count, feasible as u128);
        assert!((got.optimal_lwd - want).abs() < TOL, "{} vs {want}", got.optimal_lwd);
        assert!(!got.optimal_assignments.is_empty());
    }
}
