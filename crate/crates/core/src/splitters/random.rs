use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::{FoldAssignment, LabeledDataset, SplitSpec};
use crate::error::Result;

/// Shuffles the samples with the spec's seed and cuts the permutation into
/// contiguous blocks of the target fold sizes.
pub fn random_split(dataset: &LabeledDataset, spec: &SplitSpec) -> Result<FoldAssignment> {
    let sizes = spec.fold_sizes(dataset.len())?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed());
    Ok(random_assignment(dataset.len(), &sizes, &mut rng))
}

pub(crate) fn random_assignment<R: Rng + ?Sized>(
    n: usize,
    sizes: &[usize],
    rng: &mut R,
) -> FoldAssignment {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut fold_of = vec![0; n];
    let mut start = 0;
    for (fold, &size) in sizes.iter().enumerate() {
        for &sample in &order[start..start + size] {
            fold_of[sample] = fold;
        }
        start += size;
    }
    FoldAssignment::from_raw(sizes.len(), fold_of)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::compute_sd;

    fn dataset(n: usize) -> LabeledDataset {
        LabeledDataset::from_counts((0..n).map(|i| vec![1 + i as u64 % 7, 3]).collect()).unwrap()
    }

    #[test]
    fn even_split_has_zero_sd() {
        let spec = SplitSpec::uniform(2, 9).unwrap();
        let a = random_split(&dataset(4), &spec).unwrap();
        assert_eq!(a.fold_sizes(), vec![2, 2]);
        assert_eq!(compute_sd(&a, &spec).unwrap(), 0.0);
    }

    #[test]
    fn deterministic_per_seed() {
        let d = dataset(50);
        let spec = SplitSpec::uniform(5, 1234).unwrap();
        assert_eq!(random_split(&d, &spec).unwrap(), random_split(&d, &spec).unwrap());
        let other = random_split(&d, &spec.with_seed(1235)).unwrap();
        assert_ne!(random_split(&d, &spec).unwrap(), other);
    }

    #[test]
    fn rounding_forced_sd_for_2913() {
        let d = dataset(2913);
        for seed in 0..3 {
            let spec = SplitSpec::uniform(10, seed).unwrap();
            let a = random_split(&d, &spec).unwrap();
            assert!((compute_sd(&a, &spec).unwrap() - 0.42).abs() < 1e-12);
        }
    }

    #[test]
    fn too_few_samples() {
        let spec = SplitSpec::uniform(5, 0).unwrap();
        assert!(random_split(&dataset(3), &spec).is_err());
    }
}
