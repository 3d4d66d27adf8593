use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use image::DynamicImage;

use crate::dataset::{ClassHistogram, LabeledDataset};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// File extensions treated as mask rasters; other files are skipped.
pub const MASK_EXTENSIONS: &[&str] = &["png", "tif", "tiff", "bmp", "pgm", "pnm"];

/// How to turn index-valued masks into class histograms.
#[derive(Debug, Clone)]
pub struct IngestConfig {
    class_names: Vec<String>,
    ignore_labels: BTreeSet<u32>,
    pub execution: Execution,
}

impl IngestConfig {
    /// Classes named after their pixel value, `0..count`.
    pub fn with_class_count(count: usize, ignore_labels: impl IntoIterator<Item = u32>) -> Result<Self> {
        Self::with_class_names((0..count).map(|c| c.to_string()).collect(), ignore_labels)
    }

    /// Class `i` is the pixel value `i`.
    pub fn with_class_names(
        class_names: Vec<String>,
        ignore_labels: impl IntoIterator<Item = u32>,
    ) -> Result<Self> {
        if class_names.is_empty() {
            return Err(Error::InvalidDataset("at least one class is required".into()));
        }
        let ignore_labels: BTreeSet<u32> = ignore_labels.into_iter().collect();
        if let Some(v) = ignore_labels.iter().find(|&&v| (v as usize) < class_names.len()) {
            return Err(Error::InvalidDataset(format!(
                "ignore label {v} collides with a declared class index"
            )));
        }
        Ok(IngestConfig {
            class_names,
            ignore_labels,
            execution: Execution::default(),
        })
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn ignore_labels(&self) -> &BTreeSet<u32> {
        &self.ignore_labels
    }
}

/// Builds one histogram per mask file in `dir`, ordered by file stem.
///
/// Masks must be single-channel 8- or 16-bit rasters whose pixel value is the
/// class index. Ignored values are dropped from every count.
pub fn scan_masks(dir: &Path, config: &IngestConfig) -> Result<LabeledDataset> {
    let mut files: Vec<(String, PathBuf)> = Vec::new();
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if !path.is_file() || !is_mask_file(&path) {
            continue;
        }
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .ok_or_else(|| Error::Mask {
                file: path.clone(),
                reason: "file name is not valid UTF-8".into(),
            })?
            .to_owned();
        files.push((stem, path));
    }
    if files.is_empty() {
        return Err(Error::NoMasks(dir.to_path_buf()));
    }
    files.sort();
    for w in files.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::DuplicateId(w[0].0.clone()));
        }
    }

    let hists = config
        .execution
        .map(&files, |(_, path)| histogram_of(path, config))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let ids = files.into_iter().map(|(stem, _)| stem).collect();
    LabeledDataset::new(config.class_names.clone(), ids, hists)
}

fn is_mask_file(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| MASK_EXTENSIONS.iter().any(|m| e.eq_ignore_ascii_case(m)))
}

fn histogram_of(path: &Path, config: &IngestConfig) -> Result<ClassHistogram> {
    let img = image::open(path).map_err(|e| Error::Mask {
        file: path.to_path_buf(),
        reason: format!("cannot decode: {e}"),
    })?;
    let raw: Vec<u64> = match img {
        DynamicImage::ImageLuma8(buf) => value_counts(buf.as_raw().iter().map(|&v| v as usize), 1 << 8),
        DynamicImage::ImageLuma16(buf) => value_counts(buf.as_raw().iter().map(|&v| v as usize), 1 << 16),
        other => {
            return Err(Error::Mask {
                file: path.to_path_buf(),
                reason: format!(
                    "expected a single-channel 8- or 16-bit index mask, found {:?}",
                    other.color()
                ),
            })
        }
    };

    let c = config.class_names.len();
    let mut counts = vec![0u64; c];
    for (value, &n) in raw.iter().enumerate().filter(|(_, &n)| n > 0) {
        if config.ignore_labels.contains(&(value as u32)) {
            continue;
        }
        if value >= c {
            return Err(Error::UnknownPixelValue {
                file: path.to_path_buf(),
                value: value as u32,
            });
        }
        counts[value] = n;
    }
    if counts.iter().all(|&n| n == 0) {
        return Err(Error::AllPixelsIgnored { file: path.to_path_buf() });
    }
    Ok(ClassHistogram::new(counts))
}

fn value_counts(values: impl Iterator<Item = usize>, range: usize) -> Vec<u64> {
    let mut counts = vec![0u64; range];
    for v in values {
        counts[v] += 1;
    }
    counts
}
