//! Exhaustive search over every assignment with the target fold sizes.
//!
//! This is ground truth for the genetic search, not a production solver: the
//! only pruning is the fixed fold sizes.

use crate::dataset::{FoldAssignment, LabeledDataset, SplitSpec};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::metrics::LwdEvaluator;

pub const DEFAULT_LIMIT: u128 = 10_000_000;
pub const DEFAULT_WITNESS_CAP: usize = 16;

/// Assignments whose LWD is within this distance of the minimum count as optimal.
pub const OPTIMUM_TOLERANCE: f64 = 1e-12;

const BATCH: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub optimal_lwd: f64,
    /// Optimal assignments in enumeration order, at most `witness_cap` of them.
    pub optimal_assignments: Vec<FoldAssignment>,
    pub enumerated_count: u128,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    pub limit: u128,
    pub witness_cap: usize,
    pub execution: Execution,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            limit: DEFAULT_LIMIT,
            witness_cap: DEFAULT_WITNESS_CAP,
            execution: Execution::default(),
        }
    }
}

/// N! / prod(|S^k|!), or `None` on u128 overflow.
pub fn multinomial(sizes: &[usize]) -> Option<u128> {
    let mut total: u128 = 1;
    let mut placed = 0usize;
    for &s in sizes {
        // C(placed + s, s), built incrementally so every step stays integral
        for i in 1..=s {
            total = total.checked_mul((placed + i) as u128)? / i as u128;
        }
        placed += s;
    }
    Some(total)
}

pub fn enumerate_optimal(dataset: &LabeledDataset, spec: &SplitSpec, limit: u128) -> Result<OracleResult> {
    enumerate_optimal_with(dataset, spec, OracleOptions { limit, ..Default::default() })
}

pub fn enumerate_optimal_with(
    dataset: &LabeledDataset,
    spec: &SplitSpec,
    options: OracleOptions,
) -> Result<OracleResult> {
    let sizes = spec.fold_sizes(dataset.len())?;
    let count = match multinomial(&sizes) {
        Some(c) if c <= options.limit => c,
        Some(c) => return Err(Error::EnumerationLimit { count: c.to_string(), limit: options.limit }),
        None => {
            return Err(Error::EnumerationLimit {
                count: "more than 2^128".into(),
                limit: options.limit,
            })
        }
    };

    let lwd = LwdEvaluator::new(dataset);
    let k = spec.k();
    let mut current: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(fold, &s)| std::iter::repeat_n(fold, s))
        .collect();

    let mut best = f64::INFINITY;
    let mut witnesses: Vec<(f64, Vec<usize>)> = Vec::new();
    let mut enumerated: u128 = 0;
    let mut exhausted = false;

    while !exhausted {
        let mut batch = Vec::with_capacity(BATCH);
        while batch.len() < BATCH {
            batch.push(current.clone());
            if !next_permutation(&mut current) {
                exhausted = true;
                break;
            }
        }
        let scores = options.execution.map(&batch, |genes| lwd.fitness(dataset, k, genes));
        enumerated += batch.len() as u128;

        for (genes, score) in batch.into_iter().zip(scores) {
            let score = score?;
            if score < best {
                best = score;
                witnesses.retain(|(s, _)| *s <= best + OPTIMUM_TOLERANCE);
            }
            if score <= best + OPTIMUM_TOLERANCE && witnesses.len() < options.witness_cap {
                witnesses.push((score, genes));
            }
        }
    }
    debug_assert_eq!(enumerated, count);

    Ok(OracleResult {
        optimal_lwd: best,
        optimal_assignments: witnesses
            .into_iter()
            .map(|(_, g)| FoldAssignment::from_raw(k, g))
            .collect(),
        enumerated_count: enumerated,
    })
}

/// Advances to the next lexicographic permutation of a multiset; returns
/// `false` once the sequence is in descending order.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let pivot = i - 1;
    let j = (i..v.len()).rev().find(|&j| v[j] > v[pivot]).expect("pivot has a successor");
    v.swap(pivot, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::compute_lwd;

    fn ds(counts: Vec<Vec<u64>>) -> LabeledDataset {
        LabeledDataset::from_counts(counts).unwrap()
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(&[2, 2]), Some(6));
        assert_eq!(multinomial(&[4, 4]), Some(70));
        assert_eq!(multinomial(&[1, 1, 1]), Some(6));
        assert_eq!(multinomial(&[3, 2, 1]), Some(60));
        assert_eq!(multinomial(&[300, 300]), None);
    }

    #[test]
    fn permutations_are_counted_exactly() {
        let mut v = vec![0, 0, 1, 1, 2];
        let mut seen = 1;
        while next_permutation(&mut v) {
            seen += 1;
        }
        assert_eq!(seen, 30);
        assert_eq!(v, vec![2, 1, 1, 0, 0]);
    }

    #[test]
    fn identical_samples() {
        let d = ds(vec![vec![2, 5]; 4]);
        let r = enumerate_optimal(&d, &SplitSpec::uniform(2, 0).unwrap(), DEFAULT_LIMIT).unwrap();
        assert_eq!(r.optimal_lwd, 0.0);
        assert_eq!(r.enumerated_count, 6);
        assert_eq!(r.optimal_assignments.len(), 6);
    }

    #[test]
    fn two_pure_samples() {
        let d = ds(vec![vec![10, 0], vec![0, 10]]);
        let r = enumerate_optimal(&d, &SplitSpec::uniform(2, 0).unwrap(), DEFAULT_LIMIT).unwrap();
        assert!((r.optimal_lwd - 0.5).abs() < 1e-12);
        assert_eq!(r.optimal_assignments.len(), 2);
        assert_eq!(r.enumerated_count, 2);
    }

    #[test]
    fn eight_samples_enumerate_seventy() {
        let d = ds((0..8).map(|i| vec![i + 1, 8 - i, (i * 3) % 5]).collect());
        let r = enumerate_optimal(&d, &SplitSpec::uniform(2, 0).unwrap(), DEFAULT_LIMIT).unwrap();
        assert_eq!(r.enumerated_count, 70);
        for a in &r.optimal_assignments {
            let (lwd, _) = compute_lwd(&d, a).unwrap();
            assert!((lwd - r.optimal_lwd).abs() <= OPTIMUM_TOLERANCE);
            assert_eq!(a.fold_sizes(), vec![4, 4]);
        }
    }

    #[test]
    fn limit_is_enforced() {
        let d = ds((0..8).map(|i| vec![i + 1, 2]).collect());
        let err = enumerate_optimal(&d, &SplitSpec::uniform(2, 0).unwrap(), 69).unwrap_err();
        assert!(err.to_string().contains("70"), "{err}");
    }

    #[test]
    fn sample_order_does_not_change_optimum() {
        let d = ds(vec![
            vec![5, 1, 0],
            vec![0, 3, 8],
            vec![2, 2, 2],
            vec![9, 0, 1],
            vec![1, 7, 1],
            vec![4, 4, 0],
        ]);
        let spec = SplitSpec::uniform(2, 0).unwrap();
        let base = enumerate_optimal(&d, &spec, DEFAULT_LIMIT).unwrap().optimal_lwd;
        let p = d.permuted(&[5, 3, 1, 0, 2, 4]).unwrap();
        let permuted = enumerate_optimal(&p, &spec, DEFAULT_LIMIT).unwrap().optimal_lwd;
        assert!((base - permuted).abs() <= OPTIMUM_TOLERANCE);
    }
}
