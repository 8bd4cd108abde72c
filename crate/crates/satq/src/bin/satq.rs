//! Command-line front end for the 3SAT/QUBO pipeline.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use satq::encoder::{encode, parse_qubo, write_qubo, QuboMatrix};
use satq::experiments::{
    emit_bias_report, emit_quality_report, emit_sweep_report, queries_for_confidence,
    run_alpha_sweep, run_quality_experiment, solution_bias, AlphaSweepConfig, ExperimentConfig,
    Postprocessing, SamplerKind,
};
use satq::postprocess::PostprocessConfig;
use satq::samplers::{brute_force_minimize, simulated_annealing_sample, tabu_sample, SamplerConfig};
use satq::sat::{generate_random_3sat, parse_dimacs, write_dimacs};
use satq::Error;

#[derive(Parser)]
#[command(
    name = "satq",
    about = "3SAT instance generation, QUBO encoding, classical annealing samplers and solution-quality experiments",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SamplerArgs {
    /// Which sampler stands in for the annealer.
    #[arg(long, value_enum, default_value = "sa")]
    sampler: SamplerKind,
    /// Answers per instance.
    #[arg(long, default_value_t = 1000)]
    reads: usize,
    /// Single-bit-flip passes per read.
    #[arg(long, default_value_t = 1000)]
    sweeps: usize,
    #[arg(long, default_value_t = 0.1)]
    beta_start: f64,
    #[arg(long, default_value_t = 10.0)]
    beta_end: f64,
    /// Tabu tenure in moves.
    #[arg(long, default_value_t = 10)]
    tabu_tenure: usize,
}

impl SamplerArgs {
    fn config(&self, seed: u64) -> SamplerConfig {
        SamplerConfig {
            reads: self.reads,
            sweeps: self.sweeps,
            beta_start: self.beta_start,
            beta_end: self.beta_end,
            tabu_tenure: self.tabu_tenure,
            master_seed: seed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random 3SAT instance and emit it as DIMACS CNF.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encode a DIMACS CNF file as a QUBO in sparse coordinate form.
    Encode {
        /// Input DIMACS CNF file.
        input: PathBuf,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a QUBO (or a DIMACS file, encoded on the fly) and emit the
    /// answer batch as JSON.
    Solve {
        /// Input file: sparse QUBO (`dim ...`) or DIMACS CNF (`p cnf ...`).
        input: PathBuf,
        #[command(flatten)]
        sampler: SamplerArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solution-quality experiment: per-bitcount answer histogram over a
    /// corpus of satisfiable instances.
    Quality {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        m: usize,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[command(flatten)]
        sampler: SamplerArgs,
        /// Postprocessing applied before classification.
        #[arg(long, value_enum, default_value = "none")]
        post: Postprocessing,
        /// Block width for subproblem postprocessing.
        #[arg(long, default_value_t = 6)]
        block_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Base output path; writes `<out>.csv` and `<out>.json`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Phase-transition sweep over a grid of clauses-to-variables ratios.
    Sweep {
        #[arg(long, default_value_t = 12)]
        n: usize,
        /// Grid as `start:end:step` or a comma-separated list.
        #[arg(long, default_value = "1.0:8.0:0.5")]
        alpha_grid: String,
        #[arg(long, default_value_t = 200)]
        instances: usize,
        #[command(flatten)]
        sampler: SamplerArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Base output path; writes `<out>.csv` and `<out>.json`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Solution-bias experiment: frequency of distinct correct solutions
    /// per instance.
    Bias {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        m: usize,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[command(flatten)]
        sampler: SamplerArgs,
        #[arg(long, value_enum, default_value = "none")]
        post: Postprocessing,
        #[arg(long, default_value_t = 6)]
        block_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Base output path; writes `<out>.csv` and `<out>.json`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Queries needed for a 1 - epsilon confidence of one success.
    Confidence {
        /// Per-query success probability.
        #[arg(long)]
        p: f64,
        #[arg(long)]
        epsilon: f64,
    },
}

fn read_input(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))
}

fn write_output(out: Option<&Path>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, content).map_err(|e| Error::io(path.display().to_string(), e)),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn load_qubo(path: &Path) -> Result<QuboMatrix, Error> {
    let text = read_input(path)?;
    if text.trim_start().starts_with("dim") {
        parse_qubo(&text)
    } else {
        encode(&parse_dimacs(&text)?)
    }
}

fn parse_alpha_grid(spec: &str) -> Result<Vec<f64>, Error> {
    let bad = |s: &str| Error::Config(format!("cannot parse alpha grid '{s}'"));
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(bad(spec));
        }
        let start: f64 = parts[0].parse().map_err(|_| bad(spec))?;
        let end: f64 = parts[1].parse().map_err(|_| bad(spec))?;
        let step: f64 = parts[2].parse().map_err(|_| bad(spec))?;
        if step <= 0.0 || end < start {
            return Err(bad(spec));
        }
        let mut grid = Vec::new();
        let mut i = 0;
        loop {
            let alpha = start + step * i as f64;
            if alpha > end + 1e-9 {
                break;
            }
            grid.push(alpha);
            i += 1;
        }
        Ok(grid)
    } else {
        spec.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| bad(spec)))
            .collect()
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Generate { n, m, seed, out } => {
            let formula = generate_random_3sat(n, m, seed)?;
            write_output(out.as_deref(), &write_dimacs(&formula))
        }
        Command::Encode { input, out } => {
            let formula = parse_dimacs(&read_input(&input)?)?;
            write_output(out.as_deref(), &write_qubo(&encode(&formula)?))
        }
        Command::Solve {
            input,
            sampler,
            seed,
            out,
        } => {
            let q = load_qubo(&input)?;
            let config = sampler.config(seed);
            let set = match sampler.sampler {
                SamplerKind::Sa => simulated_annealing_sample(&q, &config)?,
                SamplerKind::Tabu => tabu_sample(&q, &config)?,
                SamplerKind::Brute => {
                    let (energy, argmins) = brute_force_minimize(&q)?;
                    satq::samplers::SampleSet {
                        samples: argmins
                            .into_iter()
                            .enumerate()
                            .map(|(read_index, x)| satq::samplers::Sample {
                                x,
                                energy,
                                read_index,
                            })
                            .collect(),
                        source_dimension: q.dimension(),
                    }
                }
            };
            let json = serde_json::to_string_pretty(&set)
                .map_err(|e| Error::Format(format!("JSON serialization failed: {e}")))?;
            write_output(out.as_deref(), &format!("{json}\n"))
        }
        Command::Quality {
            n,
            m,
            instances,
            sampler,
            post,
            block_size,
            seed,
            out,
        } => {
            let config = experiment_config(n, m, instances, &sampler, post, block_size, seed);
            let report = run_quality_experiment(&config)?;
            emit_quality_report(&report, &out)?;
            println!(
                "total correct: {} / {}; instances solved: {} / {}",
                report.total_correct,
                instances * sampler.reads,
                report.instances_solved,
                instances
            );
            Ok(())
        }
        Command::Sweep {
            n,
            alpha_grid,
            instances,
            sampler,
            seed,
            out,
        } => {
            let config = AlphaSweepConfig {
                n,
                alpha_grid: parse_alpha_grid(&alpha_grid)?,
                instances,
                reads_per_instance: sampler.reads,
                sampler: sampler.sampler,
                sampler_config: sampler.config(seed),
                master_seed: seed,
            };
            let report = run_alpha_sweep(&config)?;
            emit_sweep_report(&report, &out)?;
            for row in &report.rows {
                println!(
                    "alpha {:.2}: sat {:.3}, effort {:.1}, sampler {:.3}",
                    row.alpha,
                    row.satisfiable_fraction,
                    row.mean_solver_effort,
                    row.sampler_success_fraction
                );
            }
            Ok(())
        }
        Command::Bias {
            n,
            m,
            instances,
            sampler,
            post,
            block_size,
            seed,
            out,
        } => {
            let config = experiment_config(n, m, instances, &sampler, post, block_size, seed);
            let report = solution_bias(&config)?;
            emit_bias_report(&report, &out)?;
            Ok(())
        }
        Command::Confidence { p, epsilon } => {
            println!("{}", queries_for_confidence(p, epsilon)?);
            Ok(())
        }
    }
}

fn experiment_config(
    n: usize,
    m: usize,
    instances: usize,
    sampler: &SamplerArgs,
    post: Postprocessing,
    block_size: usize,
    seed: u64,
) -> ExperimentConfig {
    ExperimentConfig {
        n,
        m,
        instances,
        reads_per_instance: sampler.reads,
        sampler: sampler.sampler,
        sampler_config: sampler.config(seed),
        postprocessing: post,
        postprocess_config: PostprocessConfig {
            block_size,
            ..PostprocessConfig::default()
        },
        master_seed: seed,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
