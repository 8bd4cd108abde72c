//! Exact satisfiability via DPLL: unit propagation plus chronological
//! backtracking. Branching is deterministic (lowest-index unassigned
//! variable, `true` first) so the effort counters are reproducible.

use serde::{Deserialize, Serialize};

use super::{CnfFormula, PartialAssignment};

/// Search-effort counters: branching decisions and backtracked branches.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverStats {
    pub decisions: u64,
    pub backtracks: u64,
}

impl SolverStats {
    /// Combined effort proxy used by the α-sweep experiments.
    pub fn effort(&self) -> u64 {
        self.decisions + self.backtracks
    }
}

/// Decides satisfiability of `formula` exactly.
pub fn dpll_satisfiable(formula: &CnfFormula) -> (bool, SolverStats) {
    let mut partial = PartialAssignment::unassigned(formula.num_variables());
    let mut stats = SolverStats::default();
    let sat = search(formula, &mut partial, &mut stats);
    (sat, stats)
}

enum ClauseState {
    Satisfied,
    Conflict,
    Unit(usize, bool),
    Open,
}

fn clause_state(clause: &super::Clause, partial: &PartialAssignment) -> ClauseState {
    let mut unassigned: Option<(usize, bool)> = None;
    let mut open = 0usize;
    for lit in clause.literals() {
        match partial.0[lit.variable] {
            Some(v) if lit.evaluate(v) => return ClauseState::Satisfied,
            Some(_) => {}
            None => {
                // Duplicate unassigned literals of the same variable count once
                // unless they disagree on polarity, in which case the clause
                // cannot become unit on that variable alone.
                match unassigned {
                    None => {
                        unassigned = Some((lit.variable, lit.satisfying_value()));
                        open += 1;
                    }
                    Some((v, val)) => {
                        if v != lit.variable || val != lit.satisfying_value() {
                            open += 1;
                            unassigned = Some((lit.variable, lit.satisfying_value()));
                        }
                    }
                }
            }
        }
    }
    match open {
        0 => ClauseState::Conflict,
        1 => {
            let (var, val) = unassigned.expect("one open literal");
            ClauseState::Unit(var, val)
        }
        _ => ClauseState::Open,
    }
}

fn search(formula: &CnfFormula, partial: &mut PartialAssignment, stats: &mut SolverStats) -> bool {
    let mut trail: Vec<usize> = Vec::new();

    // Unit propagation to fixpoint.
    loop {
        let mut unit: Option<(usize, bool)> = None;
        let mut conflict = false;
        for clause in formula.clauses() {
            match clause_state(clause, partial) {
                ClauseState::Conflict => {
                    conflict = true;
                    break;
                }
                ClauseState::Unit(var, val) => {
                    unit = Some((var, val));
                    break;
                }
                _ => {}
            }
        }
        if conflict {
            for var in trail {
                partial.0[var] = None;
            }
            return false;
        }
        match unit {
            Some((var, val)) => {
                partial.0[var] = Some(val);
                trail.push(var);
            }
            None => break,
        }
    }

    let all_satisfied = formula.clauses().iter().all(|clause| {
        clause
            .literals()
            .iter()
            .any(|lit| partial.0[lit.variable].is_some_and(|v| lit.evaluate(v)))
    });
    if all_satisfied {
        return true;
    }

    let var = partial
        .0
        .iter()
        .position(Option::is_none)
        .expect("all variables assigned but a clause is unsatisfied");

    stats.decisions += 1;
    for val in [true, false] {
        partial.0[var] = Some(val);
        if search(formula, partial, stats) {
            return true;
        }
        stats.backtracks += 1;
        partial.0[var] = None;
    }

    for var in trail {
        partial.0[var] = None;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{phi, psi};
    use super::super::{enumerate_satisfiable, generate_random_3sat};
    use super::*;

    #[test]
    fn psi_is_satisfiable() {
        let (sat, _) = dpll_satisfiable(&psi());
        assert!(sat);
    }

    #[test]
    fn phi_is_unsatisfiable() {
        let (sat, stats) = dpll_satisfiable(&phi());
        assert!(!sat);
        // Φ falls to unit propagation alone.
        assert_eq!(stats.decisions, 0);
    }

    #[test]
    fn empty_formula_is_satisfiable() {
        let f = super::super::CnfFormula::new(4, vec![]).unwrap();
        let (sat, stats) = dpll_satisfiable(&f);
        assert!(sat);
        assert_eq!(stats, SolverStats::default());
    }

    #[test]
    fn matches_enumeration_on_random_instances() {
        // 500 instances near the phase transition at n = 12.
        for seed in 0..500u64 {
            let f = generate_random_3sat(12, 50, seed).unwrap();
            let (sat, _) = dpll_satisfiable(&f);
            assert_eq!(sat, enumerate_satisfiable(&f).unwrap(), "seed {seed}");
        }
    }
}
