//! Elitist genetic search over fixed-size fold assignments, minimizing LWD.
//!
//! A generation is produced by [`evolve_generation`] in this order:
//!
//! 1. the `elite_count` fittest individuals are copied unchanged;
//! 2. tournament selection (with replacement) fills the mating pool;
//! 3. consecutive pool pairs undergo uniform crossover, exchanging each gene
//!    with probability `gene_mating_prob`;
//! 4. each child is repaired back onto the target fold sizes by moving
//!    randomly chosen genes out of oversized folds into undersized ones;
//! 5. each child is mutated with probability `individual_mutation_prob` by
//!    `swaps_per_mutation` swaps of two samples sitting in different folds.
//!
//! All random draws come from one seeded generator in that fixed order.
//! Fitness evaluation happens afterwards and may run in parallel, so the
//! execution mode never changes the result.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::random_assignment;
use crate::dataset::{FoldAssignment, LabeledDataset, SplitSpec};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::metrics::LwdEvaluator;

/// Genetic-algorithm settings. Defaults: 50 generations, 100 individuals,
/// gene mating probability 0.5, individual mutation probability 0.2,
/// tournament size 3, one elite, one swap per mutation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaConfig {
    pub generations: usize,
    pub population: usize,
    pub gene_mating_prob: f64,
    pub individual_mutation_prob: f64,
    pub tournament_size: usize,
    pub elite_count: usize,
    pub swaps_per_mutation: usize,
    pub seed: u64,
    #[serde(skip)]
    pub execution: Execution,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            generations: 50,
            population: 100,
            gene_mating_prob: 0.5,
            individual_mutation_prob: 0.2,
            tournament_size: 3,
            elite_count: 1,
            swaps_per_mutation: 1,
            seed: 0,
            execution: Execution::default(),
        }
    }
}

impl GaConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_budget(mut self, population: usize, generations: usize) -> Self {
        self.population = population;
        self.generations = generations;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        if self.generations < 1 {
            return fail("generations must be at least 1".into());
        }
        if self.population < 2 {
            return fail(format!("population must be at least 2, got {}", self.population));
        }
        if self.tournament_size < 1 || self.tournament_size > self.population {
            return fail(format!(
                "tournament size {} must be in 1..={}",
                self.tournament_size, self.population
            ));
        }
        if self.elite_count < 1 || self.elite_count >= self.population {
            return fail(format!(
                "elite count {} must be in 1..{}",
                self.elite_count, self.population
            ));
        }
        if self.swaps_per_mutation < 1 {
            return fail("swaps per mutation must be at least 1".into());
        }
        for (name, p) in [
            ("gene mating probability", self.gene_mating_prob),
            ("individual mutation probability", self.individual_mutation_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return fail(format!("{name} {p} is outside [0, 1]"));
            }
        }
        Ok(())
    }
}

/// A candidate assignment and its cached LWD.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genes: FoldAssignment,
    pub fitness: Option<f64>,
}

impl Individual {
    pub fn new(genes: FoldAssignment) -> Self {
        Individual { genes, fitness: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionTrace {
    /// Best fitness in the initial population followed by one entry per generation.
    pub best_fitness_per_generation: Vec<f64>,
    pub final_best: Individual,
    /// Number of distinct genomes whose fitness was computed.
    pub evaluations: usize,
}

/// Runs the genetic search and returns the fittest assignment ever seen.
///
/// The result always has exactly the target fold sizes for `spec`.
pub fn wdes_split(
    dataset: &LabeledDataset,
    spec: &SplitSpec,
    config: &GaConfig,
) -> Result<(FoldAssignment, EvolutionTrace)> {
    config.validate()?;
    let targets = spec.fold_sizes(dataset.len())?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut cache = FitnessCache::new(dataset, spec.k(), config.execution);

    let mut population: Vec<Individual> = (0..config.population)
        .map(|_| Individual::new(random_assignment(dataset.len(), &targets, &mut rng)))
        .collect();
    cache.evaluate(&mut population)?;

    let mut best = fittest(&population).clone();
    let mut history = Vec::with_capacity(config.generations + 1);
    history.push(best.fitness.expect("evaluated"));

    for _ in 0..config.generations {
        population = evolve_generation(&population, dataset, spec, config, &mut rng)?;
        cache.evaluate(&mut population)?;
        let candidate = fittest(&population);
        let score = candidate.fitness.expect("evaluated");
        if score < best.fitness.expect("evaluated") {
            best = candidate.clone();
        }
        history.push(score);
    }

    let trace = EvolutionTrace {
        best_fitness_per_generation: history,
        final_best: best.clone(),
        evaluations: cache.evaluations,
    };
    Ok((best.genes, trace))
}

/// Produces the next population from an evaluated one.
///
/// Elites keep their fitness; every other returned individual is unevaluated.
pub fn evolve_generation<R: Rng + ?Sized>(
    population: &[Individual],
    dataset: &LabeledDataset,
    spec: &SplitSpec,
    config: &GaConfig,
    rng: &mut R,
) -> Result<Vec<Individual>> {
    let targets = spec.fold_sizes(dataset.len())?;
    let fitness: Vec<f64> = population
        .iter()
        .map(|ind| {
            ind.fitness
                .ok_or_else(|| Error::InvalidConfig("population must be evaluated".into()))
        })
        .collect::<Result<_>>()?;
    let m = population.len();
    let elites = config.elite_count.min(m);

    let mut ranked: Vec<usize> = (0..m).collect();
    ranked.sort_by(|&a, &b| fitness[a].total_cmp(&fitness[b]).then(a.cmp(&b)));
    let mut next: Vec<Individual> = ranked[..elites].iter().map(|&i| population[i].clone()).collect();

    let mut pool: Vec<Vec<usize>> = (0..m - elites)
        .map(|_| {
            let winner = tournament(&fitness, config.tournament_size, rng);
            population[winner].genes.fold_of().to_vec()
        })
        .collect();

    for pair in pool.chunks_mut(2) {
        if let [a, b] = pair {
            uniform_crossover(a, b, config.gene_mating_prob, rng);
        }
    }

    for genes in pool.iter_mut() {
        repair(genes, &targets, rng);
    }

    for genes in pool.iter_mut() {
        if rng.gen_bool(config.individual_mutation_prob) {
            for _ in 0..config.swaps_per_mutation {
                mutate_swap(genes, rng);
            }
        }
    }

    next.extend(
        pool.into_iter()
            .map(|g| Individual::new(FoldAssignment::from_raw(spec.k(), g))),
    );
    Ok(next)
}

fn tournament<R: Rng + ?Sized>(fitness: &[f64], size: usize, rng: &mut R) -> usize {
    let mut winner = rng.gen_range(0..fitness.len());
    for _ in 1..size {
        let challenger = rng.gen_range(0..fitness.len());
        let better = fitness[challenger]
            .total_cmp(&fitness[winner])
            .then(challenger.cmp(&winner))
            .is_lt();
        if better {
            winner = challenger;
        }
    }
    winner
}

fn uniform_crossover<R: Rng + ?Sized>(a: &mut [usize], b: &mut [usize], prob: f64, rng: &mut R) {
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        if rng.gen_bool(prob) {
            std::mem::swap(x, y);
        }
    }
}

/// Moves random genes out of oversized folds into random undersized folds
/// until every fold has its target size.
fn repair<R: Rng + ?Sized>(genes: &mut [usize], targets: &[usize], rng: &mut R) {
    let mut sizes = vec![0usize; targets.len()];
    for &f in genes.iter() {
        sizes[f] += 1;
    }
    loop {
        let surplus: Vec<usize> = (0..genes.len())
            .filter(|&i| sizes[genes[i]] > targets[genes[i]])
            .collect();
        if surplus.is_empty() {
            break;
        }
        let deficit: Vec<usize> = (0..targets.len()).filter(|&f| sizes[f] < targets[f]).collect();
        let gene = surplus[rng.gen_range(0..surplus.len())];
        let to = deficit[rng.gen_range(0..deficit.len())];
        sizes[genes[gene]] -= 1;
        sizes[to] += 1;
        genes[gene] = to;
    }
}

/// Samples that `sample` may swap with: those in a different fold.
fn swap_partners(genes: &[usize], sample: usize) -> Vec<usize> {
    (0..genes.len()).filter(|&j| genes[j] != genes[sample]).collect()
}

fn mutate_swap<R: Rng + ?Sized>(genes: &mut [usize], rng: &mut R) {
    let i = rng.gen_range(0..genes.len());
    let partners = swap_partners(genes, i);
    if partners.is_empty() {
        return;
    }
    let j = partners[rng.gen_range(0..partners.len())];
    genes.swap(i, j);
}

/// Every assignment one mutation swap away from `assignment`.
pub fn swap_neighbors(assignment: &FoldAssignment) -> Vec<FoldAssignment> {
    let genes = assignment.fold_of();
    let mut out = Vec::new();
    for i in 0..genes.len() {
        for j in swap_partners(genes, i).into_iter().filter(|&j| j > i) {
            let mut next = assignment.clone();
            next.genes_mut().swap(i, j);
            out.push(next);
        }
    }
    out
}

fn fittest(population: &[Individual]) -> &Individual {
    population
        .iter()
        .min_by(|a, b| a.fitness.unwrap_or(f64::INFINITY).total_cmp(&b.fitness.unwrap_or(f64::INFINITY)))
        .expect("population is non-empty")
}

/// LWD cache keyed by a hash of the genome.
struct FitnessCache<'a> {
    dataset: &'a LabeledDataset,
    k: usize,
    lwd: LwdEvaluator,
    execution: Execution,
    seen: HashMap<u64, f64>,
    evaluations: usize,
}

impl<'a> FitnessCache<'a> {
    fn new(dataset: &'a LabeledDataset, k: usize, execution: Execution) -> Self {
        FitnessCache {
            dataset,
            k,
            lwd: LwdEvaluator::new(dataset),
            execution,
            seen: HashMap::new(),
            evaluations: 0,
        }
    }

    fn key(genes: &[usize]) -> u64 {
        let mut h = DefaultHasher::new();
        genes.hash(&mut h);
        h.finish()
    }

    fn evaluate(&mut self, population: &mut [Individual]) -> Result<()> {
        let mut pending: Vec<(u64, &[usize])> = Vec::new();
        let mut queued = std::collections::HashSet::new();
        let keys: Vec<Option<u64>> = population
            .iter()
            .map(|ind| ind.fitness.is_none().then(|| Self::key(ind.genes.fold_of())))
            .collect();
        for (ind, key) in population.iter().zip(&keys) {
            if let Some(key) = *key {
                if !self.seen.contains_key(&key) && queued.insert(key) {
                    pending.push((key, ind.genes.fold_of()));
                }
            }
        }

        let (dataset, k, lwd) = (self.dataset, self.k, &self.lwd);
        let scores = self
            .execution
            .map(&pending, |(_, genes)| lwd.fitness(dataset, k, genes));
        self.evaluations += pending.len();
        for ((key, _), score) in pending.iter().zip(scores) {
            self.seen.insert(*key, score?);
        }

        for (ind, key) in population.iter_mut().zip(keys) {
            if let Some(key) = key {
                ind.fitness = Some(self.seen[&key]);
            }
        }
        Ok(())
    }
}
