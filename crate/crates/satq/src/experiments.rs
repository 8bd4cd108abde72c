//! Experiment harnesses: solution-quality distributions by bitcount,
//! α-sweep phase-transition curves, solution-bias frequencies, and the
//! query-count confidence bound, with CSV/JSON persistence.
//!
//! All randomness derives from a single master seed through
//! [`mix_seed`](crate::samplers::mix_seed) streams, so identical
//! configurations produce byte-identical outputs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::encoder::{encode, Bitstring, QuboMatrix};
use crate::postprocess::{
    classify, complete_witnesses, decode, logical_postprocess, subproblem_postprocess,
    Classification, PostprocessConfig,
};
use crate::samplers::{
    brute_force_minimize, mix_seed, simulated_annealing_sample, tabu_sample, Sample, SampleSet,
    SamplerConfig,
};
use crate::sat::{dpll_satisfiable, generate_random_3sat, CnfFormula};
use crate::{Error, Result};

/// Which classical sampler stands in for the annealer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SamplerKind {
    Sa,
    Tabu,
    Brute,
}

/// Postprocessing applied to each raw answer before classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Postprocessing {
    None,
    Logical,
    Subproblem,
    /// Subproblem descent first, then the clause-wise logical repair.
    Both,
}

/// Configuration for the quality and bias experiments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub m: usize,
    /// Number of satisfiable instances to collect.
    pub instances: usize,
    pub reads_per_instance: usize,
    pub sampler: SamplerKind,
    pub sampler_config: SamplerConfig,
    pub postprocessing: Postprocessing,
    pub postprocess_config: PostprocessConfig,
    pub master_seed: u64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 3 || self.m < 1 || self.instances < 1 {
            return Err(Error::Config(
                "n >= 3, m >= 1 and instances >= 1 are required".into(),
            ));
        }
        Ok(())
    }
}

/// One classified answer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance_id: usize,
    pub read_index: usize,
    /// Set bits in the (postprocessed) answer.
    pub bitcount: usize,
    pub classification: Classification,
    pub energy: f64,
    /// Canonical decoded assignment, present for correct answers.
    pub distinct_solution_key: Option<String>,
}

/// Per-bitcount classification counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub correct: u64,
    pub fixable: u64,
    pub incorrect: u64,
}

impl ClassCounts {
    fn add(&mut self, c: Classification) {
        match c {
            Classification::Correct => self.correct += 1,
            Classification::FixableByLogical => self.fixable += 1,
            Classification::Incorrect => self.incorrect += 1,
        }
    }
}

/// Aggregated output of the quality experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityReport {
    pub config: ExperimentConfig,
    /// Generator seed per instance, for auditability.
    pub instance_seeds: Vec<u64>,
    pub per_bitcount: BTreeMap<usize, ClassCounts>,
    pub total_correct: u64,
    /// Instances with at least one correct answer.
    pub instances_solved: usize,
    pub per_instance_correct: BTreeMap<usize, u64>,
}

/// One row of the α-sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaRow {
    pub alpha: f64,
    pub m: usize,
    pub satisfiable_fraction: f64,
    /// Mean DPLL decisions + backtracks over all instances at this α.
    pub mean_solver_effort: f64,
    /// Fraction of satisfiable instances on which the sampler produced at
    /// least one correct answer; 0 when sampling is disabled (reads = 0).
    pub sampler_success_fraction: f64,
}

/// Configuration for the α-sweep experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaSweepConfig {
    pub n: usize,
    /// Strictly increasing grid of m/n targets.
    pub alpha_grid: Vec<f64>,
    /// Fresh instances per grid point.
    pub instances: usize,
    /// Sampler reads per satisfiable instance; 0 disables sampling.
    pub reads_per_instance: usize,
    pub sampler: SamplerKind,
    pub sampler_config: SamplerConfig,
    pub master_seed: u64,
}

impl AlphaSweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 3 || self.instances < 1 {
            return Err(Error::Config("n >= 3 and instances >= 1 are required".into()));
        }
        if self.alpha_grid.is_empty() {
            return Err(Error::Config("alpha grid must be nonempty".into()));
        }
        if !self.alpha_grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Config("alpha grid must be strictly increasing".into()));
        }
        if self.alpha_grid[0] <= 0.0 {
            return Err(Error::Config("alpha values must be positive".into()));
        }
        Ok(())
    }
}

/// Aggregated output of the α-sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaSweepReport {
    pub config: AlphaSweepConfig,
    pub rows: Vec<AlphaRow>,
}

/// Per-instance frequency table of distinct correct solutions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceBias {
    pub instance_id: usize,
    pub instance_seed: u64,
    /// `(solution_key, frequency)` sorted by descending frequency, then key.
    pub entries: Vec<(String, u64)>,
}

/// Aggregated output of the solution-bias experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiasReport {
    pub config: ExperimentConfig,
    pub per_instance: Vec<InstanceBias>,
}

const REGENERATION_CAP: u64 = 1000;

/// Draws a random formula at `(n, m)`, regenerating with fresh derived
/// seeds until a DPLL-satisfiable one appears. Aborts after 1000 attempts.
pub fn generate_satisfiable_instance(
    n: usize,
    m: usize,
    master_seed: u64,
    instance_id: usize,
) -> Result<(CnfFormula, u64)> {
    for attempt in 0..REGENERATION_CAP {
        let seed = mix_seed(master_seed, instance_id as u64 * REGENERATION_CAP + attempt);
        let formula = generate_random_3sat(n, m, seed)?;
        if dpll_satisfiable(&formula).0 {
            return Ok((formula, seed));
        }
    }
    Err(Error::Input(format!(
        "no satisfiable instance at n = {n}, m = {m} after {REGENERATION_CAP} attempts \
         (instance {instance_id}); the ratio may be deep in the unsatisfiable phase"
    )))
}

fn brute_sample(q: &QuboMatrix, reads: usize) -> Result<SampleSet> {
    let (min_energy, argmins) = brute_force_minimize(q)?;
    let samples = (0..reads)
        .map(|read| Sample {
            x: argmins[read % argmins.len()].clone(),
            energy: min_energy,
            read_index: read,
        })
        .collect();
    Ok(SampleSet {
        samples,
        source_dimension: q.dimension(),
    })
}

/// Runs the configured sampler on one instance. Per-instance sampler seeds
/// use stream `1_000_000 + instance_id` off the master seed.
pub fn sample_instance(
    q: &QuboMatrix,
    config: &ExperimentConfig,
    instance_id: usize,
) -> Result<SampleSet> {
    if config.reads_per_instance == 0 {
        return Ok(SampleSet {
            samples: Vec::new(),
            source_dimension: q.dimension(),
        });
    }
    let sampler_config = SamplerConfig {
        reads: config.reads_per_instance,
        master_seed: mix_seed(config.master_seed, 1_000_000 + instance_id as u64),
        ..config.sampler_config.clone()
    };
    match config.sampler {
        SamplerKind::Sa => simulated_annealing_sample(q, &sampler_config),
        SamplerKind::Tabu => tabu_sample(q, &sampler_config),
        SamplerKind::Brute => brute_sample(q, config.reads_per_instance),
    }
}

/// Applies the configured postprocessing mode to one answer.
pub fn apply_postprocessing(
    mode: Postprocessing,
    q: &QuboMatrix,
    formula: &CnfFormula,
    x: &Bitstring,
    config: &PostprocessConfig,
) -> Result<Bitstring> {
    match mode {
        Postprocessing::None => Ok(x.clone()),
        Postprocessing::Logical => logical_postprocess(x, formula),
        Postprocessing::Subproblem => subproblem_postprocess(q, x, config),
        Postprocessing::Both => {
            let descended = subproblem_postprocess(q, x, config)?;
            logical_postprocess(&descended, formula)
        }
    }
}

fn record_sample(
    formula: &CnfFormula,
    q: &QuboMatrix,
    config: &ExperimentConfig,
    instance_id: usize,
    sample: &Sample,
) -> Result<RunRecord> {
    let y = apply_postprocessing(
        config.postprocessing,
        q,
        formula,
        &sample.x,
        &config.postprocess_config,
    )?;
    let classification = classify(&y, formula)?;
    let distinct_solution_key = if classification == Classification::Correct {
        let completed = complete_witnesses(&y, formula)?;
        Some(decode(&completed, formula)?.partial.canonical_key())
    } else {
        None
    };
    Ok(RunRecord {
        instance_id,
        read_index: sample.read_index,
        bitcount: y.count_ones(),
        classification,
        energy: crate::encoder::qubo_energy(q, &y)?,
        distinct_solution_key,
    })
}

/// Generates the satisfiable instance corpus, samples each instance, and
/// classifies every (postprocessed) answer. Returns the flat records plus
/// the per-instance generator seeds.
pub fn quality_run_records(config: &ExperimentConfig) -> Result<(Vec<RunRecord>, Vec<u64>)> {
    config.validate()?;
    let per_instance: Vec<(Vec<RunRecord>, u64)> = (0..config.instances)
        .into_par_iter()
        .map(|instance_id| -> Result<(Vec<RunRecord>, u64)> {
            let (formula, seed) =
                generate_satisfiable_instance(config.n, config.m, config.master_seed, instance_id)?;
            let q = encode(&formula)?;
            let set = sample_instance(&q, config, instance_id)?;
            let records = set
                .samples
                .iter()
                .map(|s| record_sample(&formula, &q, config, instance_id, s))
                .collect::<Result<Vec<_>>>()?;
            Ok((records, seed))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut records = Vec::new();
    let mut seeds = Vec::new();
    for (rs, seed) in per_instance {
        records.extend(rs);
        seeds.push(seed);
    }
    Ok((records, seeds))
}

/// Aggregates [`quality_run_records`] into the per-bitcount histogram and
/// solved-instance counts.
pub fn run_quality_experiment(config: &ExperimentConfig) -> Result<QualityReport> {
    let (records, instance_seeds) = quality_run_records(config)?;
    let mut per_bitcount: BTreeMap<usize, ClassCounts> = BTreeMap::new();
    let mut per_instance_correct: BTreeMap<usize, u64> =
        (0..config.instances).map(|i| (i, 0)).collect();
    let mut total_correct = 0;
    for r in &records {
        per_bitcount.entry(r.bitcount).or_default().add(r.classification);
        if r.classification == Classification::Correct {
            total_correct += 1;
            *per_instance_correct.get_mut(&r.instance_id).expect("instance id") += 1;
        }
    }
    let instances_solved = per_instance_correct.values().filter(|&&c| c > 0).count();
    Ok(QualityReport {
        config: config.clone(),
        instance_seeds,
        per_bitcount,
        total_correct,
        instances_solved,
        per_instance_correct,
    })
}

/// Runs the phase-transition sweep: per α, the satisfiable fraction, the
/// mean DPLL effort, and the sampler success fraction on the satisfiable
/// subset.
pub fn run_alpha_sweep(config: &AlphaSweepConfig) -> Result<AlphaSweepReport> {
    config.validate()?;
    let rows = config
        .alpha_grid
        .iter()
        .enumerate()
        .map(|(alpha_index, &alpha)| -> Result<AlphaRow> {
            let m = ((alpha * config.n as f64).round() as usize).max(1);
            let outcomes: Vec<(bool, u64, bool)> = (0..config.instances)
                .into_par_iter()
                .map(|id| -> Result<(bool, u64, bool)> {
                    let stream = (alpha_index * config.instances + id) as u64;
                    let seed = mix_seed(config.master_seed, 2_000_000_000 + stream);
                    let formula = generate_random_3sat(config.n, m, seed)?;
                    let (sat, stats) = dpll_satisfiable(&formula);
                    let mut success = false;
                    if sat && config.reads_per_instance > 0 {
                        let q = encode(&formula)?;
                        let sampler_config = SamplerConfig {
                            reads: config.reads_per_instance,
                            master_seed: mix_seed(config.master_seed, 3_000_000_000 + stream),
                            ..config.sampler_config.clone()
                        };
                        let set = match config.sampler {
                            SamplerKind::Sa => simulated_annealing_sample(&q, &sampler_config)?,
                            SamplerKind::Tabu => tabu_sample(&q, &sampler_config)?,
                            SamplerKind::Brute => brute_sample(&q, config.reads_per_instance)?,
                        };
                        success = set.samples.iter().any(|s| {
                            classify(&s.x, &formula)
                                .map(|c| c == Classification::Correct)
                                .unwrap_or(false)
                        });
                    }
                    Ok((sat, stats.effort(), success))
                })
                .collect::<Result<Vec<_>>>()?;

            let total = outcomes.len() as f64;
            let sat_count = outcomes.iter().filter(|o| o.0).count();
            let mean_effort = outcomes.iter().map(|o| o.1 as f64).sum::<f64>() / total;
            let sampler_success_fraction = if sat_count > 0 && config.reads_per_instance > 0 {
                outcomes.iter().filter(|o| o.2).count() as f64 / sat_count as f64
            } else {
                0.0
            };
            Ok(AlphaRow {
                alpha,
                m,
                satisfiable_fraction: sat_count as f64 / total,
                mean_solver_effort: mean_effort,
                sampler_success_fraction,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AlphaSweepReport {
        config: config.clone(),
        rows,
    })
}

/// Per-instance frequency tables of distinct correct decoded solutions.
/// Identity is the canonical partial assignment after witness completion,
/// i.e. solutions are counted in the original 3SAT space.
pub fn solution_bias(config: &ExperimentConfig) -> Result<BiasReport> {
    let (records, seeds) = quality_run_records(config)?;
    let mut tables: BTreeMap<usize, BTreeMap<String, u64>> = BTreeMap::new();
    for r in &records {
        if let Some(key) = &r.distinct_solution_key {
            *tables
                .entry(r.instance_id)
                .or_default()
                .entry(key.clone())
                .or_insert(0) += 1;
        }
    }
    let per_instance = (0..config.instances)
        .map(|instance_id| {
            let mut entries: Vec<(String, u64)> = tables
                .remove(&instance_id)
                .unwrap_or_default()
                .into_iter()
                .collect();
            entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
            InstanceBias {
                instance_id,
                instance_seed: seeds[instance_id],
                entries,
            }
        })
        .collect();
    Ok(BiasReport {
        config: config.clone(),
        per_instance,
    })
}

/// Smallest k with `(1 - p)^k <= epsilon`: the number of independent
/// queries needed so that at least one succeeds with confidence
/// `1 - epsilon`, given per-query success probability `p`.
pub fn queries_for_confidence(p: f64, epsilon: f64) -> Result<u64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Input(format!("p = {p} must lie strictly in (0, 1)")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Input(format!(
            "epsilon = {epsilon} must lie strictly in (0, 1)"
        )));
    }
    let q = 1.0 - p;
    let mut k = (epsilon.ln() / q.ln()).ceil() as u64;
    k = k.max(1);
    // Guard the boundary against rounding in the logarithms.
    while k > 1 && q.powf((k - 1) as f64) <= epsilon {
        k -= 1;
    }
    while q.powf(k as f64) > epsilon {
        k += 1;
    }
    Ok(k)
}

/// CSV with columns `bitcount,correct,fixable,incorrect`.
pub fn quality_csv(report: &QualityReport) -> String {
    let mut out = String::from("bitcount,correct,fixable,incorrect\n");
    for (bitcount, counts) in &report.per_bitcount {
        let _ = writeln!(
            out,
            "{bitcount},{},{},{}",
            counts.correct, counts.fixable, counts.incorrect
        );
    }
    out
}

/// CSV with columns `alpha,sat_fraction,mean_effort,sampler_success`.
pub fn sweep_csv(report: &AlphaSweepReport) -> String {
    let mut out = String::from("alpha,sat_fraction,mean_effort,sampler_success\n");
    for row in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            row.alpha, row.satisfiable_fraction, row.mean_solver_effort, row.sampler_success_fraction
        );
    }
    out
}

/// CSV with columns `instance_id,solution_key,frequency`.
pub fn bias_csv(report: &BiasReport) -> String {
    let mut out = String::from("instance_id,solution_key,frequency\n");
    for instance in &report.per_instance {
        for (key, freq) in &instance.entries {
            let _ = writeln!(out, "{},{key},{freq}", instance.instance_id);
        }
    }
    out
}

fn write_pair(base: &Path, csv: String, json: String) -> Result<()> {
    let csv_path = base.with_extension("csv");
    let json_path = base.with_extension("json");
    fs::write(&csv_path, csv).map_err(|e| Error::io(csv_path.display().to_string(), e))?;
    fs::write(&json_path, json).map_err(|e| Error::io(json_path.display().to_string(), e))?;
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::Format(format!("JSON serialization failed: {e}")))
}

/// Writes `<base>.csv` and `<base>.json` for a quality report.
pub fn emit_quality_report(report: &QualityReport, base: &Path) -> Result<()> {
    write_pair(base, quality_csv(report), to_json(report)?)
}

/// Writes `<base>.csv` and `<base>.json` for an α-sweep report.
pub fn emit_sweep_report(report: &AlphaSweepReport, base: &Path) -> Result<()> {
    write_pair(base, sweep_csv(report), to_json(report)?)
}

/// Writes `<base>.csv` and `<base>.json` for a bias report.
pub fn emit_bias_report(report: &BiasReport, base: &Path) -> Result<()> {
    write_pair(base, bias_csv(report), to_json(report)?)
}
