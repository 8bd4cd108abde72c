//! 3SAT instances: representation, evaluation, random generation at a
//! controlled clauses-to-variables ratio, DIMACS I/O and an exact DPLL
//! satisfiability oracle.

mod dimacs;
mod dpll;
mod generate;

pub use dimacs::{parse_dimacs, write_dimacs};
pub use dpll::{dpll_satisfiable, SolverStats};
pub use generate::generate_random_3sat;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A literal: a variable index together with a negation flag.
///
/// Variables are 0-indexed internally; the DIMACS boundary converts to and
/// from the 1-indexed convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub variable: usize,
    pub negated: bool,
}

impl Literal {
    pub fn positive(variable: usize) -> Self {
        Literal {
            variable,
            negated: false,
        }
    }

    pub fn negative(variable: usize) -> Self {
        Literal {
            variable,
            negated: true,
        }
    }

    /// The literal over the same variable with the opposite polarity.
    pub fn complement(self) -> Self {
        Literal {
            variable: self.variable,
            negated: !self.negated,
        }
    }

    /// Truth value of this literal when its variable takes `value`.
    pub fn evaluate(self, value: bool) -> bool {
        value != self.negated
    }

    /// The variable value that makes this literal true.
    pub fn satisfying_value(self) -> bool {
        !self.negated
    }
}

/// A clause of exactly three literals. Duplicate literals are permitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    literals: [Literal; 3],
}

impl Clause {
    pub fn new(literals: [Literal; 3]) -> Self {
        Clause { literals }
    }

    pub fn literals(&self) -> &[Literal; 3] {
        &self.literals
    }
}

/// A 3SAT instance: `n` variables and `m` three-literal clauses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    num_variables: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    /// Builds a formula, checking that every literal's variable is in range.
    pub fn new(num_variables: usize, clauses: Vec<Clause>) -> Result<Self> {
        if num_variables == 0 {
            return Err(Error::Input("formula must have at least one variable".into()));
        }
        for (k, clause) in clauses.iter().enumerate() {
            for lit in clause.literals() {
                if lit.variable >= num_variables {
                    return Err(Error::Input(format!(
                        "clause {k} references variable {} but the formula has {} variables",
                        lit.variable, num_variables
                    )));
                }
            }
        }
        Ok(CnfFormula {
            num_variables,
            clauses,
        })
    }

    pub fn num_variables(&self) -> usize {
        self.num_variables
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Clauses-to-variables ratio m/n.
    pub fn alpha(&self) -> f64 {
        self.clauses.len() as f64 / self.num_variables as f64
    }

    /// Literal at flat index `i`: literal `i % 3` of clause `i / 3`.
    pub fn literal(&self, index: usize) -> Literal {
        self.clauses[index / 3].literals()[index % 3]
    }

    /// Number of literal positions, i.e. `3 * m`.
    pub fn num_literals(&self) -> usize {
        3 * self.clauses.len()
    }
}

/// A total assignment of all `n` variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_partial(&self) -> PartialAssignment {
        PartialAssignment(self.0.iter().map(|&b| Some(b)).collect())
    }
}

/// A partial assignment: each variable is `Some(true)`, `Some(false)` or
/// unassigned (`None`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialAssignment(pub Vec<Option<bool>>);

impl PartialAssignment {
    pub fn unassigned(num_variables: usize) -> Self {
        PartialAssignment(vec![None; num_variables])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, variable: usize) -> Option<bool> {
        self.0[variable]
    }

    /// Canonical one-character-per-variable key: `T`, `F` or `-`.
    pub fn canonical_key(&self) -> String {
        self.0
            .iter()
            .map(|v| match v {
                Some(true) => 'T',
                Some(false) => 'F',
                None => '-',
            })
            .collect()
    }
}

/// True iff every clause contains at least one literal satisfied by the
/// (total) assignment.
pub fn evaluate(formula: &CnfFormula, assignment: &Assignment) -> Result<bool> {
    if assignment.len() != formula.num_variables() {
        return Err(Error::Input(format!(
            "assignment length {} does not match {} variables",
            assignment.len(),
            formula.num_variables()
        )));
    }
    Ok(formula.clauses().iter().all(|clause| {
        clause
            .literals()
            .iter()
            .any(|lit| lit.evaluate(assignment.0[lit.variable]))
    }))
}

/// True iff every clause has at least one literal made true by an *assigned*
/// variable. When this holds, every completion of the partial assignment
/// satisfies the formula.
pub fn satisfied_by_partial(formula: &CnfFormula, partial: &PartialAssignment) -> Result<bool> {
    if partial.len() != formula.num_variables() {
        return Err(Error::Input(format!(
            "partial assignment length {} does not match {} variables",
            partial.len(),
            formula.num_variables()
        )));
    }
    Ok(formula.clauses().iter().all(|clause| {
        clause
            .literals()
            .iter()
            .any(|lit| partial.0[lit.variable].is_some_and(|v| lit.evaluate(v)))
    }))
}

/// Exhaustive satisfiability check over all 2^n assignments. Test oracle;
/// refuse anything beyond small n.
pub fn enumerate_satisfiable(formula: &CnfFormula) -> Result<bool> {
    let n = formula.num_variables();
    if n > 24 {
        return Err(Error::Input(format!("enumeration refused for n = {n} > 24")));
    }
    for bits in 0u64..(1u64 << n) {
        let assignment = Assignment((0..n).map(|j| (bits >> j) & 1 == 1).collect());
        if evaluate(formula, &assignment)? {
            return Ok(true);
        }
    }
    Ok(false)
}
