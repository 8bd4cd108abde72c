//! Sweep the clauses-to-variables ratio alpha and print the satisfiable
//! fraction and DPLL effort per grid point. The fraction crosses 1/2 near
//! the critical ratio ~4.27 and the search effort peaks nearby.

use satq::experiments::{run_alpha_sweep, AlphaSweepConfig, SamplerKind};
use satq::samplers::SamplerConfig;

fn main() -> satq::Result<()> {
    let config = AlphaSweepConfig {
        n: 12,
        alpha_grid: (2..=16).map(|i| i as f64 * 0.5).collect(),
        instances: 100,
        reads_per_instance: 0, // skip sampling; this run studies the solver only
        sampler: SamplerKind::Sa,
        sampler_config: SamplerConfig::default(),
        master_seed: 0,
    };
    let report = run_alpha_sweep(&config)?;

    println!("alpha    m   sat_fraction  mean_effort");
    for row in &report.rows {
        let bar = "#".repeat((row.satisfiable_fraction * 30.0).round() as usize);
        println!(
            "{:>5.2} {:>4}      {:>6.3}      {:>7.2}  {bar}",
            row.alpha, row.m, row.satisfiable_fraction, row.mean_solver_effort
        );
    }
    Ok(())
}
