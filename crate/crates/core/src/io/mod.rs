//! Mask ingestion and the portable histogram / assignment document formats.

mod assignment;
mod histograms;
mod masks;

pub use assignment::{read_assignment, write_assignment, AssignmentDocument};
pub use histograms::{
    histograms_from_csv, histograms_from_json, histograms_to_csv, histograms_to_json,
    read_histograms, write_histograms, HistogramFormat,
};
pub use masks::{scan_masks, IngestConfig, MASK_EXTENSIONS};

use std::path::Path;

use crate::error::Error;

pub(crate) fn format_error(path: &Path, reason: impl std::fmt::Display) -> Error {
    Error::Format {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    }
}
