//! Split-quality measures (SD, PLD, LWD) and dataset-complexity measures
//! (class cardinality, class ubiquity, average imbalance ratio, entropy).
//!
//! Everything here is a pure function of immutable inputs.

use serde::{Deserialize, Serialize};

use crate::dataset::{fold_class_pixels_unchecked, FoldAssignment, LabeledDataset, SplitSpec};
use crate::error::{Error, Result};

/// SD, PLD and LWD for one assignment, with their breakdowns.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimilarityReport {
    pub sd: f64,
    pub pld_mean: f64,
    /// `None` for classes excluded from PLD (no pixels, or every pixel).
    pub pld_per_class: Vec<Option<f64>>,
    pub lwd_mean: f64,
    pub lwd_per_fold: Vec<f64>,
    /// (class, fold) pairs where the fold held every pixel of the class.
    pub degenerate_pld_terms: Vec<(usize, usize)>,
    /// Classes left out of the PLD average.
    pub excluded_pld_classes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexityReport {
    /// Average number of classes per sample.
    pub cc: f64,
    /// Average number of samples per class.
    pub cu: f64,
    /// Mean over classes of (largest class pixel total / class pixel total).
    pub air: f64,
    /// Shannon entropy (natural log) of the class pixel proportions.
    pub entropy: f64,
    /// Classes with no pixels at all; left out of `air`.
    pub zero_pixel_classes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PldResult {
    pub mean: f64,
    pub per_class: Vec<Option<f64>>,
    pub degenerate_terms: Vec<(usize, usize)>,
    pub excluded_classes: Vec<usize>,
}

fn check_k(assignment: &FoldAssignment, spec: &SplitSpec) -> Result<()> {
    if assignment.k() != spec.k() {
        return Err(Error::InvalidAssignment(format!(
            "assignment has {} folds, spec has {}",
            assignment.k(),
            spec.k()
        )));
    }
    Ok(())
}

/// Mean absolute deviation of fold sizes from the real-valued targets `r^k * N`.
pub fn compute_sd(assignment: &FoldAssignment, spec: &SplitSpec) -> Result<f64> {
    check_k(assignment, spec)?;
    let n = assignment.len() as f64;
    let total: f64 = assignment
        .fold_sizes()
        .iter()
        .zip(spec.proportions())
        .map(|(&size, r)| (size as f64 - r * n).abs())
        .sum();
    Ok(total / spec.k() as f64)
}

/// Pixel label distribution.
///
/// For each class and fold, compares the in-fold/out-of-fold pixel ratio with
/// the dataset's class/non-class ratio. When a fold holds every pixel of a
/// class, the out-of-fold count is taken as 1 and the pair is recorded in
/// `degenerate_terms`. Classes with zero pixels or covering every pixel are
/// excluded from the mean.
pub fn compute_pld(dataset: &LabeledDataset, assignment: &FoldAssignment) -> Result<PldResult> {
    assignment.check_against(dataset)?;
    let rows = fold_class_pixels_unchecked(dataset, assignment.k(), assignment.fold_of());
    pld_from_rows(dataset, &rows)
}

fn pld_from_rows(dataset: &LabeledDataset, rows: &[Vec<u64>]) -> Result<PldResult> {
    let total = dataset.total_pixels();
    let k = rows.len();
    let mut per_class = Vec::with_capacity(dataset.class_count());
    let mut degenerate_terms = Vec::new();
    let mut excluded_classes = Vec::new();

    for (c, &pc) in dataset.class_pixels().iter().enumerate() {
        if pc == 0 || pc == total {
            excluded_classes.push(c);
            per_class.push(None);
            continue;
        }
        let global = pc as f64 / (total - pc) as f64;
        let mut acc = 0.0;
        for (fold, row) in rows.iter().enumerate() {
            let inside = row[c];
            let outside = match pc - inside {
                0 => {
                    degenerate_terms.push((c, fold));
                    1
                }
                o => o,
            };
            acc += (inside as f64 / outside as f64 - global).abs();
        }
        per_class.push(Some(acc / k as f64));
    }

    let defined: Vec<f64> = per_class.iter().flatten().copied().collect();
    if defined.is_empty() {
        return Err(Error::PldUndefined);
    }
    let mean = defined.iter().sum::<f64>() / defined.len() as f64;
    Ok(PldResult {
        mean,
        per_class,
        degenerate_terms,
        excluded_classes,
    })
}

/// Label Wasserstein distance: mean over folds of the L1 distance between the
/// fold's normalized class CDF and the dataset's. Returns `(mean, per_fold)`.
pub fn compute_lwd(
    dataset: &LabeledDataset,
    assignment: &FoldAssignment,
) -> Result<(f64, Vec<f64>)> {
    assignment.check_against(dataset)?;
    LwdEvaluator::new(dataset).per_fold(dataset, assignment.k(), assignment.fold_of())
}

/// Cached global CDF for repeated LWD evaluation over one dataset.
#[derive(Debug, Clone)]
pub(crate) struct LwdEvaluator {
    global_cdf: Vec<f64>,
}

impl LwdEvaluator {
    pub(crate) fn new(dataset: &LabeledDataset) -> Self {
        LwdEvaluator {
            global_cdf: normalized_cdf(dataset.class_pixels()),
        }
    }

    pub(crate) fn per_fold(
        &self,
        dataset: &LabeledDataset,
        k: usize,
        fold_of: &[usize],
    ) -> Result<(f64, Vec<f64>)> {
        let rows = fold_class_pixels_unchecked(dataset, k, fold_of);
        self.on_rows(&rows)
    }

    pub(crate) fn on_rows(&self, rows: &[Vec<u64>]) -> Result<(f64, Vec<f64>)> {
        let mut per_fold = Vec::with_capacity(rows.len());
        for (fold, row) in rows.iter().enumerate() {
            if row.iter().all(|&p| p == 0) {
                return Err(Error::EmptyFold { fold });
            }
            let cdf = normalized_cdf(row);
            let dist: f64 = cdf
                .iter()
                .zip(&self.global_cdf)
                .map(|(a, b)| (a - b).abs())
                .sum();
            per_fold.push(dist);
        }
        let mean = per_fold.iter().sum::<f64>() / rows.len() as f64;
        Ok((mean, per_fold))
    }

    /// Mean LWD, for use as GA fitness.
    pub(crate) fn fitness(&self, dataset: &LabeledDataset, k: usize, fold_of: &[usize]) -> Result<f64> {
        self.per_fold(dataset, k, fold_of).map(|(mean, _)| mean)
    }
}

fn normalized_cdf(counts: &[u64]) -> Vec<f64> {
    let total: u64 = counts.iter().sum();
    let mut running = 0u64;
    counts
        .iter()
        .map(|&p| {
            running += p;
            running as f64 / total as f64
        })
        .collect()
}

/// Computes all three similarity measures at once.
pub fn similarity_report(
    dataset: &LabeledDataset,
    assignment: &FoldAssignment,
    spec: &SplitSpec,
) -> Result<SimilarityReport> {
    assignment.check_against(dataset)?;
    let sd = compute_sd(assignment, spec)?;
    let rows = fold_class_pixels_unchecked(dataset, assignment.k(), assignment.fold_of());
    let (lwd_mean, lwd_per_fold) = LwdEvaluator::new(dataset).on_rows(&rows)?;
    let pld = pld_from_rows(dataset, &rows)?;
    Ok(SimilarityReport {
        sd,
        pld_mean: pld.mean,
        pld_per_class: pld.per_class,
        lwd_mean,
        lwd_per_fold,
        degenerate_pld_terms: pld.degenerate_terms,
        excluded_pld_classes: pld.excluded_classes,
    })
}

pub fn compute_complexity(dataset: &LabeledDataset) -> ComplexityReport {
    let n = dataset.len() as f64;
    let c = dataset.class_count() as f64;
    let cc = dataset
        .histograms()
        .iter()
        .map(|h| h.cardinality() as f64)
        .sum::<f64>()
        / n;
    let cu = dataset.class_sample_counts().iter().sum::<usize>() as f64 / c;

    let class_pixels = dataset.class_pixels();
    let max = class_pixels.iter().copied().max().unwrap_or(0) as f64;
    let zero_pixel_classes: Vec<usize> = class_pixels
        .iter()
        .enumerate()
        .filter(|(_, &p)| p == 0)
        .map(|(i, _)| i)
        .collect();
    let present: Vec<f64> = class_pixels
        .iter()
        .filter(|&&p| p > 0)
        .map(|&p| max / p as f64)
        .collect();
    let air = present.iter().sum::<f64>() / present.len() as f64;

    let total = dataset.total_pixels() as f64;
    let entropy = class_pixels
        .iter()
        .filter(|&&p| p > 0)
        .map(|&p| {
            let q = p as f64 / total;
            -q * q.ln()
        })
        .sum();

    ComplexityReport {
        cc,
        cu,
        air,
        entropy,
        zero_pixel_classes,
    }
}
