//! Compare the three QUBO samplers — exhaustive brute force, simulated
//! annealing, and tabu search — on one instance.

use satq::encoder::encode;
use satq::samplers::{
    brute_force_minimize, simulated_annealing_sample, tabu_sample, SamplerConfig,
};
use satq::sat::generate_random_3sat;

fn main() -> satq::Result<()> {
    let formula = generate_random_3sat(7, 8, 11)?;
    let q = encode(&formula)?;
    println!("QUBO dimension: {}", q.dimension());

    let (min, argmins) = brute_force_minimize(&q)?;
    println!("brute force: minimum {min} attained by {} bitstrings", argmins.len());

    let config = SamplerConfig {
        reads: 100,
        sweeps: 300,
        master_seed: 42,
        ..SamplerConfig::default()
    };

    for (name, set) in [
        ("simulated annealing", simulated_annealing_sample(&q, &config)?),
        ("tabu search", tabu_sample(&q, &config)?),
    ] {
        let best = set.best_energy().unwrap();
        let hits = set.samples.iter().filter(|s| s.energy == min).count();
        println!(
            "{name}: best {best}, ground-state hit rate {hits}/{} over {} reads",
            set.samples.len(),
            config.reads
        );
    }
    Ok(())
}
