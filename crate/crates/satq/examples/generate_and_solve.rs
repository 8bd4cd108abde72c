//! Generate a random 3SAT instance, encode it, and sample the QUBO with
//! simulated annealing. A ground-state energy of -m certifies a satisfying
//! assignment.

use satq::encoder::encode;
use satq::postprocess::{classify, decode, Classification};
use satq::samplers::{simulated_annealing_sample, SamplerConfig};
use satq::sat::{dpll_satisfiable, generate_random_3sat};

fn main() -> satq::Result<()> {
    let (n, m, seed) = (10, 42, 7);
    let formula = generate_random_3sat(n, m, seed)?;
    println!(
        "instance: n = {n}, m = {m}, alpha = {:.2}",
        formula.alpha()
    );

    let (sat, stats) = dpll_satisfiable(&formula);
    println!("DPLL: satisfiable = {sat}, effort = {}", stats.effort());

    let q = encode(&formula)?;
    println!("QUBO dimension: {}", q.dimension());

    let config = SamplerConfig {
        reads: 200,
        sweeps: 500,
        master_seed: 1,
        ..SamplerConfig::default()
    };
    let set = simulated_annealing_sample(&q, &config)?;
    let best = set.best_energy().unwrap();
    println!("best sampled energy: {best} (ground energy is -{m} iff satisfiable)");

    let mut correct = 0;
    for sample in &set.samples {
        if classify(&sample.x, &formula)? == Classification::Correct {
            correct += 1;
        }
    }
    println!("correct answers: {correct} / {}", set.samples.len());

    if let Some(sample) = set
        .samples
        .iter()
        .find(|s| s.energy == best && classify(&s.x, &formula).unwrap() == Classification::Correct)
    {
        let answer = decode(&sample.x, &formula)?;
        println!("one satisfying partial assignment: {}", answer.partial.canonical_key());
    }
    Ok(())
}
