//! Witness decoding of QUBO answers and the two postprocessing procedures.
//!
//! A set bit `x_i = 1` is a witness: the literal at position `i` proves its
//! clause. Decoding collects the implied variable values; an answer is
//! *correct* when the witnesses are mutually consistent and every clause has
//! a witnessed satisfying completion. Logical postprocessing repairs
//! clauses with no witness; subproblem postprocessing re-minimizes the QUBO
//! block by block with the remaining bits clamped.

use serde::{Deserialize, Serialize};

use crate::encoder::{Bitstring, QuboMatrix};
use crate::samplers::DenseQubo;
use crate::sat::{satisfied_by_partial, CnfFormula, PartialAssignment};
use crate::{Error, Result};

/// Answer classification, in decreasing order of quality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    /// The decoded partial assignment is consistent and satisfies every
    /// clause under any completion.
    Correct,
    /// Not correct as-is, but logical postprocessing repairs it.
    FixableByLogical,
    Incorrect,
}

/// Result of decoding one bitstring against its formula.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecodedAnswer {
    pub partial: PartialAssignment,
    /// Some variable was witnessed both true and false.
    pub conflicted: bool,
    /// Clause indices with at least one set bit.
    pub witnessed_clauses: Vec<usize>,
    pub classification: Classification,
}

/// Parameters for subproblem postprocessing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PostprocessConfig {
    /// Contiguous block width; capped at 20 to bound the exhaustive solve.
    pub block_size: usize,
    pub max_passes: usize,
}

impl Default for PostprocessConfig {
    fn default() -> Self {
        PostprocessConfig {
            block_size: 6,
            max_passes: 10,
        }
    }
}

/// Hard cap on the block width (2^20 clamped states per block solve).
pub const MAX_BLOCK_SIZE: usize = 20;

fn check_length(x: &Bitstring, formula: &CnfFormula) -> Result<()> {
    if x.len() != formula.num_literals() {
        return Err(Error::Input(format!(
            "bitstring length {} does not match 3m = {}",
            x.len(),
            formula.num_literals()
        )));
    }
    Ok(())
}

/// Decoded partial assignment, conflict flag and witnessed clause set,
/// without classification.
fn decode_witnesses(
    x: &Bitstring,
    formula: &CnfFormula,
) -> (PartialAssignment, bool, Vec<usize>) {
    let mut partial = PartialAssignment::unassigned(formula.num_variables());
    let mut conflicted = false;
    let mut witnessed = Vec::new();
    for i in x.ones() {
        let lit = formula.literal(i);
        let implied = lit.satisfying_value();
        match partial.0[lit.variable] {
            None => partial.0[lit.variable] = Some(implied),
            Some(v) if v != implied => conflicted = true,
            Some(_) => {}
        }
        let clause = i / 3;
        if witnessed.last() != Some(&clause) {
            witnessed.push(clause);
        }
    }
    witnessed.dedup();
    (partial, conflicted, witnessed)
}

fn is_correct(x: &Bitstring, formula: &CnfFormula) -> bool {
    let (partial, conflicted, _) = decode_witnesses(x, formula);
    !conflicted && satisfied_by_partial(formula, &partial).unwrap_or(false)
}

/// Decodes an answer bitstring: each set bit witnesses its literal's
/// implied value, unset bits say nothing.
pub fn decode(x: &Bitstring, formula: &CnfFormula) -> Result<DecodedAnswer> {
    check_length(x, formula)?;
    let (partial, conflicted, witnessed_clauses) = decode_witnesses(x, formula);
    let classification = classify(x, formula)?;
    Ok(DecodedAnswer {
        partial,
        conflicted,
        witnessed_clauses,
        classification,
    })
}

/// Classifies an answer: correct as-is, repairable by logical
/// postprocessing, or incorrect.
pub fn classify(x: &Bitstring, formula: &CnfFormula) -> Result<Classification> {
    check_length(x, formula)?;
    if is_correct(x, formula) {
        return Ok(Classification::Correct);
    }
    let repaired = logical_postprocess(x, formula)?;
    if is_correct(&repaired, formula) {
        Ok(Classification::FixableByLogical)
    } else {
        Ok(Classification::Incorrect)
    }
}

/// Clause-wise repair, one ascending pass: for each clause with no set bit,
/// set the first literal position whose implied value contradicts no bit
/// currently set (including bits set earlier in the same pass). Bits are
/// only ever flipped 0 → 1.
pub fn logical_postprocess(x: &Bitstring, formula: &CnfFormula) -> Result<Bitstring> {
    check_length(x, formula)?;
    let mut out = x.clone();
    let (mut partial, _, _) = decode_witnesses(&out, formula);
    for (k, clause) in formula.clauses().iter().enumerate() {
        let base = 3 * k;
        if (0..3).any(|t| out.get(base + t)) {
            continue;
        }
        for (t, lit) in clause.literals().iter().enumerate() {
            let implied = lit.satisfying_value();
            match partial.0[lit.variable] {
                Some(v) if v != implied => continue,
                _ => {
                    out.set(base + t, true);
                    partial.0[lit.variable] = Some(implied);
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Repeats [`logical_postprocess`] until a fixpoint is reached.
pub fn logical_postprocess_to_fixpoint(x: &Bitstring, formula: &CnfFormula) -> Result<Bitstring> {
    let mut current = x.clone();
    loop {
        let next = logical_postprocess(&current, formula)?;
        if next == current {
            return Ok(next);
        }
        current = next;
    }
}

/// Block-wise clamped re-minimization: partition the indices into
/// contiguous blocks, exhaustively minimize each block with all other bits
/// clamped, and adopt a block optimum only on strict total-energy
/// improvement. Passes repeat until no block improves or `max_passes`.
pub fn subproblem_postprocess(
    q: &QuboMatrix,
    x: &Bitstring,
    config: &PostprocessConfig,
) -> Result<Bitstring> {
    if config.block_size == 0 || config.max_passes == 0 {
        return Err(Error::Config("block_size and max_passes must be positive".into()));
    }
    if config.block_size > MAX_BLOCK_SIZE {
        return Err(Error::Config(format!(
            "block_size {} exceeds the cap of {MAX_BLOCK_SIZE}",
            config.block_size
        )));
    }
    if x.len() != q.dimension() {
        return Err(Error::Input(format!(
            "bitstring length {} does not match QUBO dimension {}",
            x.len(),
            q.dimension()
        )));
    }

    let dense = DenseQubo::from_matrix(q);
    let dim = q.dimension();
    let mut bits: Vec<u8> = x.bits().to_vec();

    for _ in 0..config.max_passes {
        let mut improved = false;
        let mut start = 0;
        while start < dim {
            let end = (start + config.block_size).min(dim);
            let width = end - start;

            // Gray-code walk over the block with everything else clamped.
            let mut delta = 0.0;
            let mut best_delta = 0.0;
            let mut best_mask: u64 = 0;
            let mut mask: u64 = 0;
            for k in 1u64..(1u64 << width) {
                let bit = k.trailing_zeros() as usize;
                delta += dense.flip_delta(&bits, start + bit);
                bits[start + bit] ^= 1;
                mask ^= 1u64 << bit;
                if delta < best_delta - 1e-9 {
                    best_delta = delta;
                    best_mask = mask;
                }
            }
            // Undo the walk (the final Gray state has the top bit set).
            for t in 0..width {
                if (mask >> t) & 1 == 1 {
                    bits[start + t] ^= 1;
                }
            }
            if best_delta < -1e-9 {
                for t in 0..width {
                    if (best_mask >> t) & 1 == 1 {
                        bits[start + t] ^= 1;
                    }
                }
                improved = true;
            }
            start = end;
        }
        if !improved {
            break;
        }
    }
    Bitstring::from_bits(bits)
}

/// Extends a correct answer so that every clause carries an explicit
/// witness: for each unwitnessed clause, the lowest literal position made
/// true by the decoded partial assignment is set.
pub fn complete_witnesses(x: &Bitstring, formula: &CnfFormula) -> Result<Bitstring> {
    check_length(x, formula)?;
    if classify(x, formula)? != Classification::Correct {
        return Err(Error::Contract(
            "complete_witnesses requires a Correct answer".into(),
        ));
    }
    let (partial, _, _) = decode_witnesses(x, formula);
    let mut out = x.clone();
    for (k, clause) in formula.clauses().iter().enumerate() {
        let base = 3 * k;
        if (0..3).any(|t| out.get(base + t)) {
            continue;
        }
        let position = clause.literals().iter().position(|lit| {
            partial.0[lit.variable].is_some_and(|v| lit.evaluate(v))
        });
        match position {
            Some(t) => out.set(base + t, true),
            None => {
                return Err(Error::Contract(format!(
                    "clause {k} has no satisfied literal in a Correct answer"
                )))
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoder::{encode, qubo_energy};
    use crate::sat::fixtures::{psi, redundant};

    fn bits(s: &str) -> Bitstring {
        s.parse().unwrap()
    }

    #[test]
    fn paper_worked_example_decodes() {
        let f = redundant();
        let d = decode(&bits("100001"), &f).unwrap();
        assert_eq!(d.partial.0, vec![Some(true), None, Some(true)]);
        assert!(!d.conflicted);
        assert_eq!(d.classification, Classification::Correct);

        let d2 = decode(&bits("001100"), &f).unwrap();
        assert_eq!(d2.partial.0, d.partial.0);
        assert_eq!(d2.classification, Classification::Correct);
    }

    #[test]
    fn suboptimal_answer_still_correct() {
        let f = redundant();
        let d = decode(&bits("100000"), &f).unwrap();
        assert_eq!(d.partial.0, vec![Some(true), None, None]);
        assert_eq!(d.classification, Classification::Correct);
        assert_eq!(d.witnessed_clauses, vec![0]);
    }

    #[test]
    fn all_zeros_is_never_correct() {
        let f = redundant();
        let c = classify(&bits("000000"), &f).unwrap();
        assert_ne!(c, Classification::Correct);
        // The empty answer is repairable here.
        assert_eq!(c, Classification::FixableByLogical);
    }

    #[test]
    fn psi_double_witness_is_correct() {
        let c = classify(&bits("010010"), &psi()).unwrap();
        assert_eq!(c, Classification::Correct);
    }

    #[test]
    fn conflicting_witnesses_are_incorrect() {
        let d = decode(&bits("100100"), &psi()).unwrap();
        assert!(d.conflicted);
        assert_eq!(d.classification, Classification::Incorrect);
    }

    #[test]
    fn logical_postprocess_fills_empty_clause() {
        let f = redundant();
        assert_eq!(logical_postprocess(&bits("100000"), &f).unwrap(), bits("100100"));
    }

    #[test]
    fn logical_postprocess_leaves_witnessed_clauses_alone() {
        let f = redundant();
        assert_eq!(logical_postprocess(&bits("100001"), &f).unwrap(), bits("100001"));
    }

    #[test]
    fn logical_postprocess_skips_contradicting_literal() {
        // On Ψ from all-zeros: clause 0 gains l0 = x1, clause 1 cannot use
        // ¬x1 and falls through to x2.
        assert_eq!(logical_postprocess(&bits("000000"), &psi()).unwrap(), bits("100010"));
    }

    #[test]
    fn subproblem_postprocess_reaches_block_optimum() {
        let f = redundant();
        let q = encode(&f).unwrap();
        let cfg = PostprocessConfig {
            block_size: 6,
            max_passes: 5,
        };
        let out = subproblem_postprocess(&q, &bits("100000"), &cfg).unwrap();
        assert_eq!(qubo_energy(&q, &out).unwrap(), -2.0);
    }

    #[test]
    fn subproblem_postprocess_keeps_global_minimum() {
        let q = encode(&psi()).unwrap();
        let cfg = PostprocessConfig::default();
        let x = bits("100001");
        let out = subproblem_postprocess(&q, &x, &cfg).unwrap();
        assert_eq!(qubo_energy(&q, &out).unwrap(), -2.0);
    }

    #[test]
    fn subproblem_postprocess_rejects_wide_blocks() {
        let q = encode(&psi()).unwrap();
        let cfg = PostprocessConfig {
            block_size: 21,
            max_passes: 1,
        };
        assert!(matches!(
            subproblem_postprocess(&q, &bits("000000"), &cfg),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn complete_witnesses_fixpoint_and_completion() {
        let f = redundant();
        // Both clauses already witnessed: unchanged, m bits set.
        let done = complete_witnesses(&bits("100001"), &f).unwrap();
        assert_eq!(done, bits("100001"));
        assert_eq!(done.count_ones(), f.num_clauses());
        // Clause 1 completed through v0.
        let filled = complete_witnesses(&bits("100000"), &f).unwrap();
        assert_eq!(filled, bits("100100"));
        assert_eq!(filled.count_ones(), f.num_clauses());
    }

    #[test]
    fn complete_witnesses_rejects_non_correct_input() {
        let f = redundant();
        assert!(matches!(
            complete_witnesses(&bits("000000"), &f),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn fixpoint_variant_matches_single_pass_when_stable() {
        let f = psi();
        let once = logical_postprocess(&bits("000000"), &f).unwrap();
        let fixed = logical_postprocess_to_fixpoint(&bits("000000"), &f).unwrap();
        assert_eq!(once, fixed);
    }
}
