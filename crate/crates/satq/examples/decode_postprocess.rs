//! Decode raw sampler answers into partial assignments and show what the
//! two postprocessing strategies recover.

use satq::encoder::{encode, qubo_energy, Bitstring};
use satq::experiments::generate_satisfiable_instance;
use satq::postprocess::{
    classify, complete_witnesses, decode, logical_postprocess, subproblem_postprocess,
    Classification, PostprocessConfig,
};
use satq::samplers::{simulated_annealing_sample, SamplerConfig};

fn main() -> satq::Result<()> {
    let (formula, seed) = generate_satisfiable_instance(8, 30, 5, 0)?;
    println!("satisfiable instance (seed {seed}), m = {}", formula.num_clauses());
    let q = encode(&formula)?;

    // Deliberately weak annealing so plenty of answers land short of the
    // ground state and leave room for repair.
    let config = SamplerConfig {
        reads: 300,
        sweeps: 10,
        master_seed: 3,
        ..SamplerConfig::default()
    };
    let set = simulated_annealing_sample(&q, &config)?;

    let pp = PostprocessConfig {
        block_size: 12,
        max_passes: 10,
    };
    let mut tally = [0u64; 3]; // raw, logical, subproblem
    let mut shown = false;
    for sample in &set.samples {
        let raw = classify(&sample.x, &formula)?;
        let logical = logical_postprocess(&sample.x, &formula)?;
        let sub = subproblem_postprocess(&q, &sample.x, &pp)?;
        let variants: [(&str, &Bitstring); 3] =
            [("raw", &sample.x), ("logical", &logical), ("subproblem", &sub)];
        for (slot, (_, y)) in variants.iter().enumerate() {
            if classify(y, &formula)? == Classification::Correct {
                tally[slot] += 1;
            }
        }
        if !shown
            && raw != Classification::Correct
            && classify(&sub, &formula)? == Classification::Correct
        {
            shown = true;
            println!("\none imperfect read (energy {}):", sample.energy);
            for (name, y) in variants {
                let d = decode(y, &formula)?;
                println!(
                    "  {name:<10} energy {:>5} class {:?} partial {}",
                    qubo_energy(&q, y)?,
                    d.classification,
                    d.partial.canonical_key()
                );
            }
        }
    }
    println!(
        "\ncorrect answers out of {}: raw {}, logical {}, subproblem {}",
        set.samples.len(),
        tally[0],
        tally[1],
        tally[2]
    );

    // Witness completion fills unwitnessed clauses of an already-correct
    // answer, which makes solution keys comparable across reads.
    if let Some(s) = set
        .samples
        .iter()
        .find(|s| classify(&s.x, &formula).unwrap() == Classification::Correct)
    {
        let full = complete_witnesses(&s.x, &formula)?;
        println!(
            "witness completion: {} set bits -> {} set bits",
            s.x.count_ones(),
            full.count_ones()
        );
    }
    Ok(())
}
