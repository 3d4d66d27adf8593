//! Histogram-only dataset model, split specification and fold assignments.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance on the sum of fold proportions.
pub const PROPORTION_TOLERANCE: f64 = 1e-9;

/// Pixel counts per class for one sample.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassHistogram(Vec<u64>);

impl ClassHistogram {
    pub fn new(pixel_counts: Vec<u64>) -> Self {
        ClassHistogram(pixel_counts)
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, class: usize) -> u64 {
        self.0[class]
    }

    pub fn class_count(&self) -> usize {
        self.0.len()
    }

    /// Total labeled pixels in the sample.
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn contains(&self, class: usize) -> bool {
        self.0[class] > 0
    }

    /// Number of classes present in the sample.
    pub fn cardinality(&self) -> usize {
        self.0.iter().filter(|&&p| p > 0).count()
    }
}

impl From<Vec<u64>> for ClassHistogram {
    fn from(v: Vec<u64>) -> Self {
        ClassHistogram(v)
    }
}

/// N samples' class histograms with the derived totals every metric needs.
///
/// Immutable once built; the totals are computed at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    class_names: Vec<String>,
    sample_ids: Vec<String>,
    histograms: Vec<ClassHistogram>,
    total_pixels: u64,
    class_pixels: Vec<u64>,
    class_sample_counts: Vec<usize>,
}

impl LabeledDataset {
    pub fn new(
        class_names: Vec<String>,
        sample_ids: Vec<String>,
        histograms: Vec<ClassHistogram>,
    ) -> Result<Self> {
        let c = class_names.len();
        if c == 0 {
            return Err(Error::InvalidDataset("at least one class is required".into()));
        }
        if histograms.is_empty() {
            return Err(Error::InvalidDataset("at least one sample is required".into()));
        }
        if sample_ids.len() != histograms.len() {
            return Err(Error::InvalidDataset(format!(
                "{} sample ids for {} histograms",
                sample_ids.len(),
                histograms.len()
            )));
        }
        let mut seen = HashSet::with_capacity(sample_ids.len());
        for id in &sample_ids {
            if !seen.insert(id.as_str()) {
                return Err(Error::DuplicateId(id.clone()));
            }
        }
        let mut names = HashSet::with_capacity(c);
        for name in &class_names {
            if !names.insert(name.as_str()) {
                return Err(Error::InvalidDataset(format!("duplicate class name '{name}'")));
            }
        }

        let mut class_pixels = vec![0u64; c];
        let mut class_sample_counts = vec![0usize; c];
        for (id, h) in sample_ids.iter().zip(&histograms) {
            if h.class_count() != c {
                return Err(Error::InvalidDataset(format!(
                    "sample '{id}' has {} counts, expected {c}",
                    h.class_count()
                )));
            }
            if h.total() == 0 {
                return Err(Error::InvalidDataset(format!(
                    "sample '{id}' has no labeled pixels"
                )));
            }
            for (cls, &p) in h.counts().iter().enumerate() {
                class_pixels[cls] += p;
                if p > 0 {
                    class_sample_counts[cls] += 1;
                }
            }
        }
        let total_pixels = class_pixels.iter().sum();

        Ok(LabeledDataset {
            class_names,
            sample_ids,
            histograms,
            total_pixels,
            class_pixels,
            class_sample_counts,
        })
    }

    /// Builds a dataset from a raw count matrix with generated names
    /// (`class0..`, `sample0..`).
    pub fn from_counts(counts: Vec<Vec<u64>>) -> Result<Self> {
        let c = counts.first().map_or(0, Vec::len);
        let class_names = (0..c).map(|i| format!("class{i}")).collect();
        let sample_ids = (0..counts.len()).map(|i| format!("sample{i}")).collect();
        let histograms = counts.into_iter().map(ClassHistogram::new).collect();
        Self::new(class_names, sample_ids, histograms)
    }

    /// A copy with samples reordered so that new position `i` holds old sample `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(Error::InvalidDataset("permutation length mismatch".into()));
        }
        let ids = order.iter().map(|&i| self.sample_ids[i].clone()).collect();
        let hists = order.iter().map(|&i| self.histograms[i].clone()).collect();
        Self::new(self.class_names.clone(), ids, hists)
    }

    /// Number of samples, N.
    pub fn len(&self) -> usize {
        self.histograms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.histograms.is_empty()
    }

    /// Number of classes, C.
    pub fn class_count(&self) -> usize {
        self.class_names.len()
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn sample_ids(&self) -> &[String] {
        &self.sample_ids
    }

    pub fn histograms(&self) -> &[ClassHistogram] {
        &self.histograms
    }

    pub fn histogram(&self, sample: usize) -> &ClassHistogram {
        &self.histograms[sample]
    }

    /// P
    pub fn total_pixels(&self) -> u64 {
        self.total_pixels
    }

    /// P_c for every class.
    pub fn class_pixels(&self) -> &[u64] {
        &self.class_pixels
    }

    /// N_c: samples containing each class.
    pub fn class_sample_counts(&self) -> &[usize] {
        &self.class_sample_counts
    }
}

/// Fold count, target proportions and seed for a split.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    k: usize,
    proportions: Vec<f64>,
    seed: u64,
}

impl SplitSpec {
    pub fn new(proportions: Vec<f64>, seed: u64) -> Result<Self> {
        let k = proportions.len();
        if k < 2 {
            return Err(Error::InvalidSpec(format!("need at least 2 folds, got {k}")));
        }
        if let Some(bad) = proportions.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
            return Err(Error::InvalidSpec(format!(
                "proportions must be positive, got {bad}"
            )));
        }
        let sum: f64 = proportions.iter().sum();
        if (sum - 1.0).abs() > PROPORTION_TOLERANCE {
            return Err(Error::InvalidSpec(format!("proportions sum to {sum}, expected 1")));
        }
        Ok(SplitSpec { k, proportions, seed })
    }

    /// K equal proportions.
    pub fn uniform(k: usize, seed: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidSpec(format!("need at least 2 folds, got {k}")));
        }
        Self::new(vec![1.0 / k as f64; k], seed)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn proportions(&self) -> &[f64] {
        &self.proportions
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        SplitSpec { seed, ..self.clone() }
    }

    /// Integer fold sizes for `n` samples; see [`target_fold_sizes`].
    pub fn fold_sizes(&self, n: usize) -> Result<Vec<usize>> {
        target_fold_sizes(n, &self.proportions)
    }
}

/// Largest-remainder rounding of `r^k * n`.
///
/// Each fold first gets `floor(r^k * n)`; the leftover units go to the folds
/// with the largest fractional parts, lower fold index first on ties.
pub fn target_fold_sizes(n: usize, proportions: &[f64]) -> Result<Vec<usize>> {
    let k = proportions.len();
    if n < k {
        return Err(Error::TooManyFolds { folds: k, samples: n });
    }
    let exact: Vec<f64> = proportions.iter().map(|r| r * n as f64).collect();
    // nudge values like 2.9999999999999996 onto the integer they represent
    let floors: Vec<usize> = exact.iter().map(|x| (x + 1e-9).floor() as usize).collect();
    let assigned: usize = floors.iter().sum();
    if assigned > n {
        return Err(Error::InvalidSpec("proportions overshoot the sample count".into()));
    }
    let mut order: Vec<usize> = (0..k).collect();
    let frac = |i: usize| (exact[i] - floors[i] as f64).max(0.0);
    // stable sort keeps the lower index first among equal remainders
    order.sort_by(|&a, &b| frac(b).total_cmp(&frac(a)));

    let mut sizes = floors;
    for &i in order.iter().take(n - assigned) {
        sizes[i] += 1;
    }
    if sizes.contains(&0) {
        return Err(Error::TooManyFolds { folds: k, samples: n });
    }
    Ok(sizes)
}

/// The fold index of every sample. Folds are disjoint and exhaustive by
/// construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FoldAssignment {
    k: usize,
    fold_of: Vec<usize>,
}

impl FoldAssignment {
    pub fn new(k: usize, fold_of: Vec<usize>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidAssignment("fold count must be positive".into()));
        }
        if let Some((n, &f)) = fold_of.iter().enumerate().find(|(_, &f)| f >= k) {
            return Err(Error::InvalidAssignment(format!(
                "sample {n} has fold index {f}, but k = {k}"
            )));
        }
        Ok(FoldAssignment { k, fold_of })
    }

    pub(crate) fn from_raw(k: usize, fold_of: Vec<usize>) -> Self {
        debug_assert!(fold_of.iter().all(|&f| f < k));
        FoldAssignment { k, fold_of }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.fold_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fold_of.is_empty()
    }

    pub fn fold_of(&self) -> &[usize] {
        &self.fold_of
    }

    pub fn fold(&self, sample: usize) -> usize {
        self.fold_of[sample]
    }

    pub(crate) fn genes_mut(&mut self) -> &mut [usize] {
        &mut self.fold_of
    }

    /// |S^k| for every fold.
    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &f in &self.fold_of {
            sizes[f] += 1;
        }
        sizes
    }

    /// Sample indices belonging to each fold, in ascending order.
    pub fn folds(&self) -> Vec<Vec<usize>> {
        let mut folds = vec![Vec::new(); self.k];
        for (n, &f) in self.fold_of.iter().enumerate() {
            folds[f].push(n);
        }
        folds
    }

    pub(crate) fn check_against(&self, dataset: &LabeledDataset) -> Result<()> {
        if self.len() != dataset.len() {
            return Err(Error::InvalidAssignment(format!(
                "assignment covers {} samples, dataset has {}",
                self.len(),
                dataset.len()
            )));
        }
        Ok(())
    }
}

/// K×C matrix whose entry (k, c) is the number of class-c pixels in fold k.
pub fn fold_class_pixels(
    dataset: &LabeledDataset,
    assignment: &FoldAssignment,
) -> Result<Vec<Vec<u64>>> {
    assignment.check_against(dataset)?;
    Ok(fold_class_pixels_unchecked(dataset, assignment.k(), assignment.fold_of()))
}

pub(crate) fn fold_class_pixels_unchecked(
    dataset: &LabeledDataset,
    k: usize,
    fold_of: &[usize],
) -> Vec<Vec<u64>> {
    let mut rows = vec![vec![0u64; dataset.class_count()]; k];
    for (h, &f) in dataset.histograms().iter().zip(fold_of) {
        for (acc, &p) in rows[f].iter_mut().zip(h.counts()) {
            *acc += p;
        }
    }
    rows
}
