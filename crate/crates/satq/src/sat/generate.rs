//! Random 3SAT generation in the fixed-clause-length model: each clause
//! draws three distinct variables uniformly without replacement and negates
//! each independently with probability 1/2. This is the model for which the
//! satisfiability threshold sits near α ≈ 4.267.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Clause, CnfFormula, Literal};
use crate::{Error, Result};

/// Generates a random 3SAT formula with `n` variables and `m` clauses.
///
/// Deterministic for a fixed `(n, m, seed)` triple. Clauses may repeat
/// across the formula; literals within a clause never share a variable.
pub fn generate_random_3sat(n: usize, m: usize, seed: u64) -> Result<CnfFormula> {
    if n < 3 {
        return Err(Error::Input(format!(
            "cannot draw 3 distinct variables from n = {n} < 3"
        )));
    }
    if m < 1 {
        return Err(Error::Input("formula must have at least one clause".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut clauses = Vec::with_capacity(m);
    for _ in 0..m {
        let mut vars = [usize::MAX; 3];
        for slot in 0..3 {
            loop {
                let v = rng.gen_range(0..n);
                if !vars[..slot].contains(&v) {
                    vars[slot] = v;
                    break;
                }
            }
        }
        let literals = vars.map(|v| Literal {
            variable: v,
            negated: rng.gen::<bool>(),
        });
        clauses.push(Clause::new(literals));
    }
    CnfFormula::new(n, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_is_m_over_n() {
        let f = generate_random_3sat(10, 42, 1).unwrap();
        assert_eq!(f.num_variables(), 10);
        assert_eq!(f.num_clauses(), 42);
        assert!((f.alpha() - 4.2).abs() < 1e-12);
    }

    #[test]
    fn n_equals_three_forces_the_variable_set() {
        for seed in 0..20 {
            let f = generate_random_3sat(3, 1, seed).unwrap();
            let mut vars: Vec<usize> = f.clauses()[0].literals().iter().map(|l| l.variable).collect();
            vars.sort_unstable();
            assert_eq!(vars, vec![0, 1, 2]);
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = generate_random_3sat(12, 51, 7).unwrap();
        let b = generate_random_3sat(12, 51, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn distinct_variables_within_every_clause() {
        let f = generate_random_3sat(5, 200, 3).unwrap();
        for clause in f.clauses() {
            let l = clause.literals();
            assert_ne!(l[0].variable, l[1].variable);
            assert_ne!(l[0].variable, l[2].variable);
            assert_ne!(l[1].variable, l[2].variable);
        }
    }

    #[test]
    fn rejects_too_few_variables() {
        assert!(generate_random_3sat(2, 1, 0).is_err());
        assert!(generate_random_3sat(10, 0, 0).is_err());
    }

    #[test]
    fn literal_frequencies_close_to_uniform() {
        // 4000 clauses over n = 10 gives 12000 literals; check each variable
        // and the negation rate against 5σ binomial bounds.
        let n = 10;
        let m = 4000;
        let f = generate_random_3sat(n, m, 99).unwrap();
        let total = 3 * m;
        let mut var_counts = vec![0usize; n];
        let mut negated = 0usize;
        for clause in f.clauses() {
            for lit in clause.literals() {
                var_counts[lit.variable] += 1;
                if lit.negated {
                    negated += 1;
                }
            }
        }
        let p = 1.0 / n as f64;
        let sigma_var = (total as f64 * p * (1.0 - p)).sqrt();
        for &c in &var_counts {
            assert!((c as f64 - total as f64 * p).abs() < 5.0 * sigma_var);
        }
        let sigma_neg = (total as f64 * 0.25).sqrt();
        assert!((negated as f64 - total as f64 * 0.5).abs() < 5.0 * sigma_neg);
    }
}
