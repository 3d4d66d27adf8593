use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::format_error;
use crate::dataset::{FoldAssignment, LabeledDataset, SplitSpec};
use crate::error::{Error, Result};
use crate::metrics::{similarity_report, SimilarityReport};
use crate::splitters::GaConfig;

/// A fold assignment plus everything needed to reproduce and score it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssignmentDocument {
    pub method: String,
    pub seed: u64,
    pub k: usize,
    pub proportions: Vec<f64>,
    pub sample_ids: Vec<String>,
    pub fold_of: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ga_config: Option<GaConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metrics: Option<SimilarityReport>,
}

impl AssignmentDocument {
    pub fn new(
        method: impl Into<String>,
        dataset: &LabeledDataset,
        spec: &SplitSpec,
        assignment: &FoldAssignment,
    ) -> Result<Self> {
        if assignment.len() != dataset.len() || assignment.k() != spec.k() {
            return Err(Error::InvalidAssignment(
                "assignment does not match dataset and spec".into(),
            ));
        }
        Ok(AssignmentDocument {
            method: method.into(),
            seed: spec.seed(),
            k: spec.k(),
            proportions: spec.proportions().to_vec(),
            sample_ids: dataset.sample_ids().to_vec(),
            fold_of: assignment.fold_of().to_vec(),
            ga_config: None,
            metrics: None,
        })
    }

    pub fn with_ga_config(mut self, config: &GaConfig) -> Self {
        self.ga_config = Some(config.clone());
        self
    }

    pub fn with_metrics(mut self, metrics: SimilarityReport) -> Self {
        self.metrics = Some(metrics);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.fold_of.len() != self.sample_ids.len() {
            return Err(Error::InvalidAssignment(format!(
                "fold_of has {} entries for {} sample ids",
                self.fold_of.len(),
                self.sample_ids.len()
            )));
        }
        if self.proportions.len() != self.k {
            return Err(Error::InvalidAssignment(format!(
                "{} proportions for k = {}",
                self.proportions.len(),
                self.k
            )));
        }
        FoldAssignment::new(self.k, self.fold_of.clone()).map(|_| ())
    }

    pub fn assignment(&self) -> Result<FoldAssignment> {
        FoldAssignment::new(self.k, self.fold_of.clone())
    }

    pub fn spec(&self) -> Result<SplitSpec> {
        SplitSpec::new(self.proportions.clone(), self.seed)
    }

    /// Assignment re-indexed to `dataset`'s sample order; every dataset
    /// sample must appear exactly once.
    pub fn assignment_for(&self, dataset: &LabeledDataset) -> Result<FoldAssignment> {
        if self.sample_ids.as_slice() == dataset.sample_ids() {
            return self.assignment();
        }
        let index: std::collections::HashMap<&str, usize> = self
            .sample_ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.as_str(), i))
            .collect();
        if index.len() != dataset.len() || self.sample_ids.len() != dataset.len() {
            return Err(Error::InvalidAssignment(format!(
                "assignment lists {} samples, dataset has {}",
                self.sample_ids.len(),
                dataset.len()
            )));
        }
        let fold_of = dataset
            .sample_ids()
            .iter()
            .map(|id| {
                index.get(id.as_str()).map(|&i| self.fold_of[i]).ok_or_else(|| {
                    Error::InvalidAssignment(format!("sample '{id}' missing from assignment"))
                })
            })
            .collect::<Result<_>>()?;
        FoldAssignment::new(self.k, fold_of)
    }

    /// The embedded report, or a freshly computed one when absent.
    pub fn metrics_or_compute(&self, dataset: &LabeledDataset) -> Result<SimilarityReport> {
        match &self.metrics {
            Some(m) => Ok(m.clone()),
            None => similarity_report(dataset, &self.assignment_for(dataset)?, &self.spec()?),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: AssignmentDocument = serde_json::from_str(text)?;
        doc.validate()?;
        Ok(doc)
    }
}

pub fn write_assignment(doc: &AssignmentDocument, path: &Path) -> Result<()> {
    fs::write(path, doc.to_json()?)?;
    Ok(())
}

pub fn read_assignment(path: &Path) -> Result<AssignmentDocument> {
    let text = fs::read_to_string(path)?;
    AssignmentDocument::from_json(&text).map_err(|e| match e {
        Error::Json(e) => format_error(path, e),
        Error::InvalidAssignment(reason) => format_error(path, reason),
        other => other,
    })
}
