//! Repeated-shuffle comparison of splitting methods.
//!
//! Each repetition `i` permutes the sample order with seed `seed + i`, runs
//! every method with that same seed, and scores the result. Means and sample
//! standard deviations are reported per method and metric.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dataset::{LabeledDataset, SplitSpec};
use crate::error::{Error, Result};
use crate::metrics::similarity_report;
use crate::splitters::{split_with, GaConfig, Method};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    pub std: f64,
}

impl Stat {
    /// Mean and sample (n - 1) standard deviation.
    pub fn of(values: &[f64]) -> Stat {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        Stat { mean, std: var.sqrt() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub repetition: usize,
    pub seed: u64,
    pub sd: f64,
    pub pld: f64,
    pub lwd: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodSummary {
    pub method: Method,
    pub sd: Stat,
    pub pld: Stat,
    pub lwd: Stat,
    pub runs: Vec<RunMetrics>,
    /// Wall-clock seconds per run; left out of the document unless requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seconds: Option<Stat>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub folds: usize,
    pub proportions: Vec<f64>,
    pub repeats: usize,
    pub seed: u64,
    pub methods: Vec<MethodSummary>,
}

impl BenchmarkReport {
    pub fn method(&self, method: Method) -> Option<&MethodSummary> {
        self.methods.iter().find(|m| m.method == method)
    }

    /// Copy without wall-clock timings, which vary between runs.
    pub fn without_timings(&self) -> Self {
        let mut out = self.clone();
        for m in &mut out.methods {
            m.seconds = None;
        }
        out
    }
}

pub fn run_benchmark(
    dataset: &LabeledDataset,
    methods: &[Method],
    repeats: usize,
    spec: &SplitSpec,
    ga: &GaConfig,
) -> Result<BenchmarkReport> {
    if repeats < 2 {
        return Err(Error::InvalidArgument(
            "repeats must be ≥ 2 for standard deviation".into(),
        ));
    }
    if methods.is_empty() {
        return Err(Error::InvalidArgument("at least one method is required".into()));
    }
    ga.validate()?;

    let mut runs: Vec<Vec<RunMetrics>> = vec![Vec::with_capacity(repeats); methods.len()];
    let mut seconds: Vec<Vec<f64>> = vec![Vec::with_capacity(repeats); methods.len()];
    for rep in 0..repeats {
        let seed = spec.seed().wrapping_add(rep as u64);
        let mut order: Vec<usize> = (0..dataset.len()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let shuffled = dataset.permuted(&order)?;
        let rep_spec = spec.with_seed(seed);
        let rep_ga = ga.clone().with_seed(seed);

        for (i, &method) in methods.iter().enumerate() {
            let start = Instant::now();
            let assignment = split_with(method, &shuffled, &rep_spec, &rep_ga)?;
            seconds[i].push(start.elapsed().as_secs_f64());
            let report = similarity_report(&shuffled, &assignment, &rep_spec)?;
            runs[i].push(RunMetrics {
                repetition: rep,
                seed,
                sd: report.sd,
                pld: report.pld_mean,
                lwd: report.lwd_mean,
            });
        }
    }

    let methods = methods
        .iter()
        .zip(runs)
        .zip(seconds)
        .map(|((&method, runs), secs)| {
            let col = |f: fn(&RunMetrics) -> f64| Stat::of(&runs.iter().map(f).collect::<Vec<_>>());
            MethodSummary {
                method,
                sd: col(|r| r.sd),
                pld: col(|r| r.pld),
                lwd: col(|r| r.lwd),
                runs,
                seconds: Some(Stat::of(&secs)),
            }
        })
        .collect();

    Ok(BenchmarkReport {
        folds: spec.k(),
        proportions: spec.proportions().to_vec(),
        repeats,
        seed: spec.seed(),
        methods,
    })
}
