//! Pixel-aware K-fold stratification for semantic segmentation datasets.
//!
//! Samples are represented only by their per-class pixel histograms. Three
//! strategies assign them to folds:
//!
//! - [`random_split`]: a seeded shuffle cut into blocks of the target fold sizes;
//! - [`ips_split`]: iterative pixel stratification, a greedy pass that serves
//!   the rarest class's pixel demand first;
//! - [`wdes_split`]: an elitist genetic search minimizing the label
//!   Wasserstein distance between each fold and the whole dataset.
//!
//! [`metrics`] scores a split (SD, PLD, LWD) and profiles a dataset (CC, CU,
//! AIR, entropy); [`oracle`] finds the exact optimum by enumeration for small
//! instances; [`io`] reads masks and the histogram/assignment documents.
//!
//! The `parallel` feature (on by default) evaluates GA fitness, oracle batches
//! and mask decoding on the rayon pool. Results do not depend on it.

pub mod benchmark;
pub mod dataset;
pub mod error;
pub mod exec;
pub mod io;
pub mod metrics;
pub mod oracle;
pub mod splitters;

pub use dataset::{
    fold_class_pixels, target_fold_sizes, ClassHistogram, FoldAssignment, LabeledDataset, SplitSpec,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use metrics::{
    compute_complexity, compute_lwd, compute_pld, compute_sd, similarity_report, ComplexityReport,
    SimilarityReport,
};
pub use oracle::{enumerate_optimal, OracleResult};
pub use splitters::{
    evolve_generation, ips_split, random_split, split_with, wdes_split, EvolutionTrace, GaConfig,
    Individual, Method,
};
