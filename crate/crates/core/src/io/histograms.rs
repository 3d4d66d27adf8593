use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::format_error;
use crate::dataset::{ClassHistogram, LabeledDataset};
use crate::error::{Error, Result};

/// On-disk histogram layouts, chosen by file extension: `.csv` is the flat
/// table, anything else the JSON document.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HistogramFormat {
    Json,
    Csv,
}

impl HistogramFormat {
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => HistogramFormat::Csv,
            _ => HistogramFormat::Json,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HistogramDocument {
    classes: Vec<String>,
    samples: Vec<SampleRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SampleRecord {
    id: String,
    counts: Vec<u64>,
}

pub fn read_histograms(path: &Path) -> Result<LabeledDataset> {
    let text = fs::read_to_string(path)?;
    match HistogramFormat::from_path(path) {
        HistogramFormat::Json => histograms_from_json(&text),
        HistogramFormat::Csv => histograms_from_csv(&text),
    }
    .map_err(|e| match e {
        Error::Format { reason, .. } => format_error(path, reason),
        Error::Json(e) => format_error(path, e),
        other => other,
    })
}

pub fn write_histograms(dataset: &LabeledDataset, path: &Path) -> Result<()> {
    let text = match HistogramFormat::from_path(path) {
        HistogramFormat::Json => histograms_to_json(dataset)?,
        HistogramFormat::Csv => histograms_to_csv(dataset)?,
    };
    fs::write(path, text)?;
    Ok(())
}

pub fn histograms_to_json(dataset: &LabeledDataset) -> Result<String> {
    let doc = HistogramDocument {
        classes: dataset.class_names().to_vec(),
        samples: dataset
            .sample_ids()
            .iter()
            .zip(dataset.histograms())
            .map(|(id, h)| SampleRecord {
                id: id.clone(),
                counts: h.counts().to_vec(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    Ok(text)
}

pub fn histograms_from_json(text: &str) -> Result<LabeledDataset> {
    let doc: HistogramDocument = serde_json::from_str(text)?;
    let (ids, hists) = doc
        .samples
        .into_iter()
        .map(|s| (s.id, ClassHistogram::new(s.counts)))
        .unzip();
    LabeledDataset::new(doc.classes, ids, hists)
}

pub fn histograms_to_csv(dataset: &LabeledDataset) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header = std::iter::once("id").chain(dataset.class_names().iter().map(String::as_str));
    w.write_record(header).map_err(csv_err)?;
    for (id, h) in dataset.sample_ids().iter().zip(dataset.histograms()) {
        let row = std::iter::once(id.clone()).chain(h.counts().iter().map(u64::to_string));
        w.write_record(row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn histograms_from_csv(text: &str) -> Result<LabeledDataset> {
    let mut r = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = r.headers().map_err(csv_err)?.clone();
    if header.len() < 2 {
        return Err(format_error(Path::new("<csv>"), "header needs an id column and at least one class"));
    }
    let classes: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();
    let c = classes.len();

    let mut ids = Vec::new();
    let mut hists = Vec::new();
    for (line, record) in r.records().enumerate() {
        let record = record.map_err(csv_err)?;
        let row = line + 2;
        if record.len() != c + 1 {
            return Err(format_error(
                Path::new("<csv>"),
                format!("row {row} has {} fields, expected {}", record.len(), c + 1),
            ));
        }
        let counts = record
            .iter()
            .skip(1)
            .map(|cell| parse_count(cell, row))
            .collect::<Result<Vec<_>>>()?;
        ids.push(record[0].to_owned());
        hists.push(ClassHistogram::new(counts));
    }
    LabeledDataset::new(classes, ids, hists)
}

fn parse_count(cell: &str, row: usize) -> Result<u64> {
    if cell.starts_with('-') {
        return Err(format_error(Path::new("<csv>"), format!("row {row}: negative count {cell}")));
    }
    cell.parse()
        .map_err(|_| format_error(Path::new("<csv>"), format!("row {row}: '{cell}' is not a pixel count")))
}

fn csv_err(e: csv::Error) -> Error {
    format_error(Path::new("<csv>"), e)
}
