use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::{FoldAssignment, LabeledDataset, SplitSpec};
use crate::error::Result;

/// Iterative pixel stratification.
///
/// Each fold starts with a sample desire `r^k * N` and a per-class pixel desire
/// `r^k * P_c`. Every round picks the class with the fewest pixels left among
/// unassigned samples and hands each unassigned sample containing it to the
/// fold that most wants that class. Ties go to the fold with the largest
/// remaining sample desire, then to a seeded random pick. Assigning a sample
/// lowers the fold's sample desire by one and its pixel desires by the
/// sample's counts.
///
/// Fold sizes are not enforced, so SD can be large.
pub fn ips_split(dataset: &LabeledDataset, spec: &SplitSpec) -> Result<FoldAssignment> {
    let n = dataset.len();
    let k = spec.k();
    // validates n >= k and the proportions
    spec.fold_sizes(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed());
    let r = spec.proportions();

    let mut sample_desire: Vec<f64> = r.iter().map(|rk| rk * n as f64).collect();
    let mut pixel_desire: Vec<Vec<f64>> = r
        .iter()
        .map(|rk| dataset.class_pixels().iter().map(|&p| rk * p as f64).collect())
        .collect();
    let mut remaining = dataset.class_pixels().to_vec();
    let mut fold_of: Vec<Option<usize>> = vec![None; n];
    let mut unassigned = n;

    while unassigned > 0 {
        let rarest = remaining
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0)
            .min_by_key(|&(c, &p)| (p, c))
            .map(|(c, _)| c)
            .expect("unassigned samples always carry pixels");

        for (slot, hist) in fold_of.iter_mut().zip(dataset.histograms()) {
            if slot.is_some() || !hist.contains(rarest) {
                continue;
            }
            let fold = choose_fold(&pixel_desire, &sample_desire, rarest, &mut rng);
            *slot = Some(fold);
            unassigned -= 1;
            sample_desire[fold] -= 1.0;
            for (c, &p) in hist.counts().iter().enumerate() {
                pixel_desire[fold][c] -= p as f64;
                remaining[c] -= p;
            }
        }
    }

    let fold_of = fold_of.into_iter().map(|f| f.expect("all samples assigned")).collect();
    Ok(FoldAssignment::from_raw(k, fold_of))
}

fn choose_fold<R: Rng>(
    pixel_desire: &[Vec<f64>],
    sample_desire: &[f64],
    class: usize,
    rng: &mut R,
) -> usize {
    let best = pixel_desire
        .iter()
        .map(|d| d[class])
        .fold(f64::NEG_INFINITY, f64::max);
    let by_pixels: Vec<usize> = (0..pixel_desire.len())
        .filter(|&f| pixel_desire[f][class] == best)
        .collect();
    if let [only] = by_pixels[..] {
        return only;
    }
    let most = by_pixels
        .iter()
        .map(|&f| sample_desire[f])
        .fold(f64::NEG_INFINITY, f64::max);
    let by_samples: Vec<usize> = by_pixels
        .into_iter()
        .filter(|&f| sample_desire[f] == most)
        .collect();
    match by_samples[..] {
        [only] => only,
        _ => by_samples[rng.gen_range(0..by_samples.len())],
    }
}
