//! Classical QUBO minimizers standing in for the annealer: exhaustive
//! enumeration for small dimensions, simulated annealing and tabu search.
//!
//! Every stochastic sampler draws a per-read RNG seeded as
//! `mix_seed(master_seed, read_index)`, so a [`SampleSet`] is identical
//! whether reads run serially or in parallel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::encoder::{qubo_energy, Bitstring, QuboMatrix};
use crate::{Error, Result};

/// Enumeration guard: 2^24 states is the largest problem the exact solver
/// will attempt.
pub const BRUTE_FORCE_MAX_DIM: usize = 24;

/// SplitMix64-style mixer combining a master seed with a stream index.
///
/// This is the crate-wide seeding contract: any per-read or per-instance
/// RNG is seeded with `mix_seed(master, stream)` so results never depend
/// on scheduling.
pub fn mix_seed(master: u64, stream: u64) -> u64 {
    let mut z = master ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Run parameters shared by the stochastic samplers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    /// Number of answers (reads) to produce.
    pub reads: usize,
    /// Full single-bit-flip passes per read.
    pub sweeps: usize,
    /// Inverse temperature at the start of the schedule.
    pub beta_start: f64,
    /// Inverse temperature at the end of the schedule.
    pub beta_end: f64,
    /// Tabu tenure in moves; 0 degenerates to restarted greedy descent.
    pub tabu_tenure: usize,
    pub master_seed: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            reads: 1000,
            sweeps: 1000,
            beta_start: 0.1,
            beta_end: 10.0,
            tabu_tenure: 10,
            master_seed: 0,
        }
    }
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.reads < 1 {
            return Err(Error::Config("reads must be at least 1".into()));
        }
        if self.sweeps < 1 {
            return Err(Error::Config("sweeps must be at least 1".into()));
        }
        if !(self.beta_start > 0.0 && self.beta_end > 0.0) {
            return Err(Error::Config("beta values must be positive".into()));
        }
        if self.beta_start >= self.beta_end {
            return Err(Error::Config("beta_start must be below beta_end".into()));
        }
        Ok(())
    }
}

/// One answer: a bitstring, its energy under the sampled matrix, and the
/// index of the read that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub x: Bitstring,
    pub energy: f64,
    pub read_index: usize,
}

/// A batch of answers from one sampler invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub samples: Vec<Sample>,
    pub source_dimension: usize,
}

impl SampleSet {
    pub fn best_energy(&self) -> Option<f64> {
        self.samples
            .iter()
            .map(|s| s.energy)
            .min_by(|a, b| a.total_cmp(b))
    }
}

/// Adjacency view of a QUBO for O(deg) single-flip energy deltas.
pub(crate) struct DenseQubo {
    pub linear: Vec<f64>,
    pub adjacency: Vec<Vec<(usize, f64)>>,
}

impl DenseQubo {
    pub fn from_matrix(q: &QuboMatrix) -> Self {
        let dim = q.dimension();
        let linear = q.diagonal().to_vec();
        let mut adjacency = vec![Vec::new(); dim];
        for (i, j, v) in q.off_diagonal() {
            adjacency[i].push((j, v));
            adjacency[j].push((i, v));
        }
        DenseQubo { linear, adjacency }
    }

    /// Energy change from flipping bit `i` of `x`.
    pub fn flip_delta(&self, x: &[u8], i: usize) -> f64 {
        let mut field = self.linear[i];
        for &(j, w) in &self.adjacency[i] {
            if x[j] == 1 {
                field += w;
            }
        }
        if x[i] == 1 {
            -field
        } else {
            field
        }
    }
}

/// Exact global minimization by Gray-code enumeration of all `2^dim`
/// bitstrings. Returns the minimum energy and every minimizing bitstring.
pub fn brute_force_minimize(q: &QuboMatrix) -> Result<(f64, Vec<Bitstring>)> {
    let dim = q.dimension();
    if dim > BRUTE_FORCE_MAX_DIM {
        return Err(Error::Input(format!(
            "brute force refused for dimension {dim} > {BRUTE_FORCE_MAX_DIM}"
        )));
    }
    let dense = DenseQubo::from_matrix(q);
    let total: u64 = 1u64 << dim;

    // Pass 1: find the minimum of the Gray-code scan.
    let mut x = vec![0u8; dim];
    let mut energy = 0.0;
    let mut min_energy = 0.0;
    for k in 1..total {
        let bit = k.trailing_zeros() as usize;
        energy += dense.flip_delta(&x, bit);
        x[bit] ^= 1;
        if energy < min_energy {
            min_energy = energy;
        }
    }

    // Pass 2: collect states within a loose band of the minimum and rescore
    // them exactly, so accumulated flip deltas cannot misrank argmins.
    let mut x = vec![0u8; dim];
    let mut energy = 0.0;
    let mut state: u64 = 0;
    let mut candidates: Vec<u64> = Vec::new();
    if min_energy >= -1e-6 {
        candidates.push(0);
    }
    for k in 1..total {
        let bit = k.trailing_zeros() as usize;
        energy += dense.flip_delta(&x, bit);
        x[bit] ^= 1;
        state ^= 1u64 << bit;
        if energy <= min_energy + 1e-6 {
            candidates.push(state);
        }
    }

    let mask_to_bits = |mask: u64| -> Bitstring {
        Bitstring::from_bits((0..dim).map(|i| ((mask >> i) & 1) as u8).collect()).unwrap()
    };
    let mut exact_min = f64::INFINITY;
    let mut rescored: Vec<(f64, u64)> = Vec::new();
    for &mask in &candidates {
        let e = qubo_energy(q, &mask_to_bits(mask))?;
        if e < exact_min {
            exact_min = e;
        }
        rescored.push((e, mask));
    }
    let mut argmins: Vec<Bitstring> = rescored
        .into_iter()
        .filter(|&(e, _)| (e - exact_min).abs() <= 1e-9)
        .map(|(_, mask)| mask_to_bits(mask))
        .collect();
    argmins.sort();
    argmins.dedup();
    Ok((exact_min, argmins))
}

fn random_bitstring(rng: &mut ChaCha8Rng, dim: usize) -> Vec<u8> {
    (0..dim).map(|_| u8::from(rng.gen::<bool>())).collect()
}

fn finish_sample(q: &QuboMatrix, bits: Vec<u8>, read_index: usize) -> Sample {
    let x = Bitstring::from_bits(bits).expect("sampler produced 0/1 bits");
    let energy = qubo_energy(q, &x).expect("sampler state matches dimension");
    Sample {
        x,
        energy,
        read_index,
    }
}

/// Simulated annealing: per read, a random start followed by `sweeps` full
/// single-bit-flip passes under a geometric inverse-temperature schedule
/// with Metropolis acceptance. The final state of each read is its answer.
pub fn simulated_annealing_sample(q: &QuboMatrix, config: &SamplerConfig) -> Result<SampleSet> {
    config.validate()?;
    let dense = DenseQubo::from_matrix(q);
    let dim = q.dimension();
    let ratio = config.beta_end / config.beta_start;

    let samples: Vec<Sample> = (0..config.reads)
        .into_par_iter()
        .map(|read| {
            let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(config.master_seed, read as u64));
            let mut x = random_bitstring(&mut rng, dim);
            for sweep in 0..config.sweeps {
                let frac = if config.sweeps > 1 {
                    sweep as f64 / (config.sweeps - 1) as f64
                } else {
                    1.0
                };
                let beta = config.beta_start * ratio.powf(frac);
                for i in 0..dim {
                    let delta = dense.flip_delta(&x, i);
                    if delta <= 0.0 || rng.gen::<f64>() < (-beta * delta).exp() {
                        x[i] ^= 1;
                    }
                }
            }
            finish_sample(q, x, read)
        })
        .collect();

    Ok(SampleSet {
        samples,
        source_dimension: dim,
    })
}

/// Tabu search: per read, a random start and `sweeps` best-improvement
/// single-flip moves with a recency tabu on recently flipped bits.
/// Aspiration admits a tabu move that beats the best energy seen so far.
/// The best state visited in a read is its answer.
pub fn tabu_sample(q: &QuboMatrix, config: &SamplerConfig) -> Result<SampleSet> {
    config.validate()?;
    let dense = DenseQubo::from_matrix(q);
    let dim = q.dimension();

    let samples: Vec<Sample> = (0..config.reads)
        .into_par_iter()
        .map(|read| {
            let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(config.master_seed, read as u64));
            let mut x = random_bitstring(&mut rng, dim);
            let mut energy = {
                let b = Bitstring::from_bits(x.clone()).unwrap();
                qubo_energy(q, &b).unwrap()
            };
            let mut best = x.clone();
            let mut best_energy = energy;
            let mut tabu_until = vec![0usize; dim];

            for step in 1..=config.sweeps {
                let mut chosen: Option<(usize, f64)> = None;
                for i in 0..dim {
                    let delta = dense.flip_delta(&x, i);
                    let tabu = tabu_until[i] >= step;
                    let aspires = energy + delta < best_energy - 1e-12;
                    if tabu && !aspires {
                        continue;
                    }
                    if chosen.is_none_or(|(_, d)| delta < d) {
                        chosen = Some((i, delta));
                    }
                }
                // All moves tabu and none aspires: take the overall best flip.
                let (i, delta) = match chosen {
                    Some(m) => m,
                    None => {
                        let mut fallback = (0, dense.flip_delta(&x, 0));
                        for i in 1..dim {
                            let d = dense.flip_delta(&x, i);
                            if d < fallback.1 {
                                fallback = (i, d);
                            }
                        }
                        fallback
                    }
                };
                x[i] ^= 1;
                energy += delta;
                tabu_until[i] = step + config.tabu_tenure;
                if energy < best_energy {
                    best_energy = energy;
                    best = x.clone();
                }
            }
            finish_sample(q, best, read)
        })
        .collect();

    Ok(SampleSet {
        samples,
        source_dimension: dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoder::encode;
    use crate::sat::fixtures::{phi, psi};

    fn small_config(reads: usize, sweeps: usize) -> SamplerConfig {
        SamplerConfig {
            reads,
            sweeps,
            master_seed: 11,
            ..SamplerConfig::default()
        }
    }

    #[test]
    fn one_by_one_matrix() {
        let mut q = QuboMatrix::new(1);
        q.set_diagonal(0, -1.0).unwrap();
        let (min, argmins) = brute_force_minimize(&q).unwrap();
        assert_eq!(min, -1.0);
        assert_eq!(argmins, vec!["1".parse().unwrap()]);
    }

    #[test]
    fn psi_minimum_is_minus_two() {
        let q = encode(&psi()).unwrap();
        let (min, argmins) = brute_force_minimize(&q).unwrap();
        assert_eq!(min, -2.0);
        let a: Bitstring = "100001".parse().unwrap();
        let b: Bitstring = "010010".parse().unwrap();
        assert!(argmins.contains(&a));
        assert!(argmins.contains(&b));
    }

    #[test]
    fn phi_minimum_signals_unsatisfiability() {
        let q = encode(&phi()).unwrap();
        let (min, _) = brute_force_minimize(&q).unwrap();
        assert_eq!(min, -1.0);
        assert!(min > -2.0);
    }

    #[test]
    fn brute_force_refuses_large_dimensions() {
        let q = QuboMatrix::new(25);
        assert!(brute_force_minimize(&q).is_err());
    }

    #[test]
    fn sa_finds_psi_ground_state() {
        let q = encode(&psi()).unwrap();
        let set = simulated_annealing_sample(&q, &small_config(100, 500)).unwrap();
        assert_eq!(set.best_energy(), Some(-2.0));
    }

    #[test]
    fn sa_is_deterministic() {
        let q = encode(&psi()).unwrap();
        let cfg = small_config(50, 100);
        let a = simulated_annealing_sample(&q, &cfg).unwrap();
        let b = simulated_annealing_sample(&q, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sample_energies_are_reproducible() {
        let q = encode(&psi()).unwrap();
        let set = simulated_annealing_sample(&q, &small_config(30, 50)).unwrap();
        for s in &set.samples {
            assert_eq!(s.energy, qubo_energy(&q, &s.x).unwrap());
        }
    }

    #[test]
    fn tabu_finds_psi_ground_state() {
        let q = encode(&psi()).unwrap();
        let set = tabu_sample(&q, &small_config(20, 100)).unwrap();
        assert_eq!(set.best_energy(), Some(-2.0));
    }

    #[test]
    fn tabu_is_deterministic_even_with_zero_tenure() {
        let q = encode(&psi()).unwrap();
        let mut cfg = small_config(20, 50);
        cfg.tabu_tenure = 0;
        let a = tabu_sample(&q, &cfg).unwrap();
        let b = tabu_sample(&q, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn samplers_never_beat_the_oracle() {
        let f = crate::sat::generate_random_3sat(6, 5, 17).unwrap();
        let q = encode(&f).unwrap();
        let (min, _) = brute_force_minimize(&q).unwrap();
        let cfg = small_config(50, 200);
        for set in [
            simulated_annealing_sample(&q, &cfg).unwrap(),
            tabu_sample(&q, &cfg).unwrap(),
        ] {
            for s in &set.samples {
                assert!(s.energy >= min - 1e-9);
            }
        }
    }

    #[test]
    fn config_validation() {
        let mut cfg = SamplerConfig::default();
        cfg.reads = 0;
        assert!(cfg.validate().is_err());
        cfg.reads = 1;
        cfg.beta_start = 5.0;
        cfg.beta_end = 1.0;
        assert!(cfg.validate().is_err());
    }
}
