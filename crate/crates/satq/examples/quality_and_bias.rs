//! Run the solution-quality and solution-bias experiments on a small corpus
//! and print the per-bitcount histogram, the bias tables, and the number of
//! queries needed for high-confidence success.

use satq::experiments::{
    quality_csv, queries_for_confidence, run_quality_experiment, solution_bias, ExperimentConfig,
    Postprocessing, SamplerKind,
};
use satq::postprocess::PostprocessConfig;
use satq::samplers::SamplerConfig;

fn main() -> satq::Result<()> {
    let config = ExperimentConfig {
        n: 8,
        m: 30,
        instances: 10,
        reads_per_instance: 100,
        sampler: SamplerKind::Sa,
        sampler_config: SamplerConfig {
            reads: 100,
            sweeps: 200,
            ..SamplerConfig::default()
        },
        postprocessing: Postprocessing::Logical,
        postprocess_config: PostprocessConfig::default(),
        master_seed: 21,
    };

    let report = run_quality_experiment(&config)?;
    println!("per-bitcount classification histogram:\n{}", quality_csv(&report));
    println!(
        "total correct: {} / {}; instances with at least one correct answer: {} / {}",
        report.total_correct,
        config.instances * config.reads_per_instance,
        report.instances_solved,
        config.instances
    );

    let bias = solution_bias(&config)?;
    println!("\ndistinct solutions per instance (key = partial assignment):");
    for inst in bias.per_instance.iter().take(3) {
        println!("  instance {}:", inst.instance_id);
        for (key, freq) in &inst.entries {
            println!("    {key}  x{freq}");
        }
    }

    // If one read succeeds with probability p, how many reads until the
    // failure probability drops below epsilon?
    let p = report.total_correct as f64 / (config.instances * config.reads_per_instance) as f64;
    if p > 0.0 && p < 1.0 {
        let k = queries_for_confidence(p, 1e-12)?;
        println!("\nempirical per-read success p = {p:.3}; reads for 1 - 1e-12 confidence: {k}");
    }
    Ok(())
}
