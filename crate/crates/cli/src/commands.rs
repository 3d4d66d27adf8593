use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use segstrat::benchmark::{run_benchmark, BenchmarkReport};
use segstrat::io::{
    read_assignment, read_histograms, scan_masks, write_assignment, write_histograms,
    AssignmentDocument, IngestConfig,
};
use segstrat::oracle::{enumerate_optimal_with, OracleOptions};
use segstrat::{
    compute_complexity, random_split, ips_split, similarity_report, wdes_split, LabeledDataset,
    Method, SimilarityReport,
};
use serde::Serialize;

use crate::table::Table;
use crate::{
    execution, BenchmarkArgs, ComplexityArgs, EvaluateArgs, IngestArgs, OracleArgs, SplitArgs,
};

fn load(path: &Path) -> Result<LabeledDataset> {
    read_histograms(path).with_context(|| format!("reading {}", path.display()))
}

fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn print_similarity(report: &SimilarityReport, dataset: &LabeledDataset) {
    println!(
        "SD={:.6} PLD={:.6} LWD={:.6}",
        report.sd, report.pld_mean, report.lwd_mean
    );
    for &(class, fold) in &report.degenerate_pld_terms {
        println!(
            "warning: fold {fold} holds every pixel of class '{}'; PLD term uses one phantom out-of-fold pixel",
            dataset.class_names()[class]
        );
    }
    for &class in &report.excluded_pld_classes {
        println!(
            "warning: class '{}' excluded from PLD (no pixels, or every pixel)",
            dataset.class_names()[class]
        );
    }
}

pub fn ingest(args: IngestArgs) -> Result<()> {
    let config = match (args.classes, args.class_names) {
        (_, Some(names)) => IngestConfig::with_class_names(names, args.ignore)?,
        (Some(c), None) => IngestConfig::with_class_count(c, args.ignore)?,
        (None, None) => anyhow::bail!("either --classes or --class-names is required"),
    };
    let dataset = scan_masks(&args.masks, &config)?;
    write_histograms(&dataset, &args.output)?;

    println!(
        "N={} C={} P={}",
        dataset.len(),
        dataset.class_count(),
        dataset.total_pixels()
    );
    let mut t = Table::new(["class", "pixels", "samples"]);
    for ((name, p), n) in dataset
        .class_names()
        .iter()
        .zip(dataset.class_pixels())
        .zip(dataset.class_sample_counts())
    {
        t.row([name.clone(), p.to_string(), n.to_string()]);
    }
    println!("{}", t.render());
    Ok(())
}

pub fn split(args: SplitArgs) -> Result<()> {
    let dataset = load(&args.histograms)?;
    let spec = args.folds.spec()?;
    let ga = args.ga.config(spec.seed());

    let (assignment, ga_used) = match args.method {
        Method::Random => (random_split(&dataset, &spec)?, None),
        Method::Ips => (ips_split(&dataset, &spec)?, None),
        Method::Wdes => {
            let (a, trace) = wdes_split(&dataset, &spec, &ga)?;
            println!(
                "generations={} evaluations={} best LWD {:.6} -> {:.6}",
                ga.generations,
                trace.evaluations,
                trace.best_fitness_per_generation[0],
                trace.best_fitness_per_generation.last().copied().unwrap_or(f64::NAN)
            );
            (a, Some(ga))
        }
    };
    let report = similarity_report(&dataset, &assignment, &spec)?;
    let mut doc = AssignmentDocument::new(args.method.name(), &dataset, &spec, &assignment)?
        .with_metrics(report.clone());
    if let Some(ga) = &ga_used {
        doc = doc.with_ga_config(ga);
    }
    write_assignment(&doc, &args.output)?;

    println!(
        "method={} N={} K={} fold sizes {:?}",
        args.method,
        dataset.len(),
        spec.k(),
        assignment.fold_sizes()
    );
    print_similarity(&report, &dataset);
    Ok(())
}

pub fn evaluate(args: EvaluateArgs) -> Result<()> {
    let dataset = load(&args.histograms)?;
    let doc = read_assignment(&args.assignment)?;
    let assignment = doc.assignment_for(&dataset)?;
    let spec = doc.spec()?;
    let report = similarity_report(&dataset, &assignment, &spec)?;

    println!("method={} K={} fold sizes {:?}", doc.method, spec.k(), assignment.fold_sizes());
    print_similarity(&report, &dataset);
    if let Some(embedded) = &doc.metrics {
        if embedded != &report {
            println!("warning: embedded metrics differ from recomputed values");
        }
    }
    let mut t = Table::new(["fold", "samples", "LWD"]);
    for (fold, (size, lwd)) in assignment.fold_sizes().iter().zip(&report.lwd_per_fold).enumerate() {
        t.row([fold.to_string(), size.to_string(), format!("{lwd:.6}")]);
    }
    println!("{}", t.render());
    if let Some(path) = &args.output {
        write_json(&report, path)?;
    }
    Ok(())
}

pub fn complexity(args: ComplexityArgs) -> Result<()> {
    let dataset = load(&args.histograms)?;
    let report = compute_complexity(&dataset);
    let mut t = Table::new(["N", "C", "CC", "CU", "AIR", "Entropy"]);
    t.row([
        dataset.len().to_string(),
        dataset.class_count().to_string(),
        format!("{:.4}", report.cc),
        format!("{:.4}", report.cu),
        format!("{:.4}", report.air),
        format!("{:.4}", report.entropy),
    ]);
    println!("{}", t.render());
    for &c in &report.zero_pixel_classes {
        println!("note: class '{}' has no pixels and is left out of AIR", dataset.class_names()[c]);
    }
    if let Some(path) = &args.output {
        write_json(&report, path)?;
    }
    Ok(())
}

pub fn benchmark(args: BenchmarkArgs) -> Result<()> {
    let dataset = load(&args.histograms)?;
    let spec = args.folds.spec()?;
    let ga = args.ga.config(spec.seed());
    let report = run_benchmark(&dataset, &args.methods, args.repeats, &spec, &ga)?;
    print_benchmark(&report);
    if let Some(path) = &args.output {
        let doc = if args.record_timings { report } else { report.without_timings() };
        write_json(&doc, path)?;
    }
    Ok(())
}

fn print_benchmark(report: &BenchmarkReport) {
    let mut t = Table::new([
        "method", "SD mean", "SD std", "PLD mean", "PLD std", "LWD mean", "LWD std", "seconds",
    ]);
    for m in &report.methods {
        t.row([
            m.method.to_string(),
            format!("{:.4}", m.sd.mean),
            format!("{:.4}", m.sd.std),
            format!("{:.6}", m.pld.mean),
            format!("{:.6}", m.pld.std),
            format!("{:.6}", m.lwd.mean),
            format!("{:.6}", m.lwd.std),
            m.seconds.map_or("-".into(), |s| format!("{:.3}", s.mean)),
        ]);
    }
    println!("repeats={} folds={} seed={}", report.repeats, report.folds, report.seed);
    println!("{}", t.render());
}

#[derive(Serialize)]
struct OracleDocument<'a> {
    k: usize,
    proportions: &'a [f64],
    sample_ids: &'a [String],
    optimal_lwd: f64,
    enumerated_count: u128,
    optimal_assignments: Vec<&'a [usize]>,
}

pub fn oracle(args: OracleArgs) -> Result<()> {
    let dataset = load(&args.histograms)?;
    let spec = args.folds.spec()?;
    let options = OracleOptions {
        limit: args.limit,
        witness_cap: args.witnesses,
        execution: execution(args.sequential),
    };
    let result = enumerate_optimal_with(&dataset, &spec, options)?;
    println!(
        "enumerated={} optimal LWD={:.6} witnesses={}",
        result.enumerated_count,
        result.optimal_lwd,
        result.optimal_assignments.len()
    );
    if let Some(path) = &args.output {
        let doc = OracleDocument {
            k: spec.k(),
            proportions: spec.proportions(),
            sample_ids: dataset.sample_ids(),
            optimal_lwd: result.optimal_lwd,
            enumerated_count: result.enumerated_count,
            optimal_assignments: result.optimal_assignments.iter().map(|a| a.fold_of()).collect(),
        };
        write_json(&doc, path)?;
    }
    Ok(())
}
