//! DIMACS CNF interchange, restricted to exactly-3-literal clauses.
//!
//! Comment lines (`c ...`) are ignored; the header is `p cnf <n> <m>`;
//! clauses are 0-terminated runs of signed 1-indexed literals and may span
//! lines.

use std::fmt::Write as _;

use super::{Clause, CnfFormula, Literal};
use crate::{Error, Result};

/// Parses DIMACS CNF text into a [`CnfFormula`].
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut lines = text.lines().filter(|l| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('c')
    });

    let header = lines
        .next()
        .ok_or_else(|| Error::Format("missing DIMACS header".into()))?;
    let mut parts = header.split_whitespace();
    let (p, cnf) = (parts.next(), parts.next());
    if p != Some("p") || cnf != Some("cnf") {
        return Err(Error::Format(format!("expected 'p cnf' header, got '{header}'")));
    }
    let n: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Format("header missing variable count".into()))?;
    let m: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Format("header missing clause count".into()))?;

    let mut clauses = Vec::with_capacity(m);
    let mut current: Vec<Literal> = Vec::with_capacity(3);
    for line in lines {
        for token in line.split_whitespace() {
            let value: i64 = token
                .parse()
                .map_err(|_| Error::Format(format!("bad literal token '{token}'")))?;
            if value == 0 {
                if current.len() != 3 {
                    return Err(Error::Format(format!(
                        "clause with {} literals: not 3SAT",
                        current.len()
                    )));
                }
                let lits: [Literal; 3] = [current[0], current[1], current[2]];
                clauses.push(Clause::new(lits));
                current.clear();
            } else {
                let var = value.unsigned_abs() as usize;
                if var > n {
                    return Err(Error::Format(format!(
                        "literal {value} exceeds declared variable count {n}"
                    )));
                }
                current.push(Literal {
                    variable: var - 1,
                    negated: value < 0,
                });
            }
        }
    }
    if !current.is_empty() {
        return Err(Error::Format("unterminated clause at end of input".into()));
    }
    if clauses.len() != m {
        return Err(Error::Format(format!(
            "header declares {m} clauses but {} were found",
            clauses.len()
        )));
    }
    CnfFormula::new(n, clauses)
}

/// Writes a formula as DIMACS CNF text.
pub fn write_dimacs(formula: &CnfFormula) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "p cnf {} {}",
        formula.num_variables(),
        formula.num_clauses()
    );
    for clause in formula.clauses() {
        for lit in clause.literals() {
            let v = (lit.variable + 1) as i64;
            let _ = write!(out, "{} ", if lit.negated { -v } else { v });
        }
        out.pop();
        out.push_str(" 0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::psi;
    use super::*;

    #[test]
    fn parses_single_clause() {
        let f = parse_dimacs("p cnf 3 1\n1 -2 3 0\n").unwrap();
        assert_eq!(f.num_variables(), 3);
        assert_eq!(f.num_clauses(), 1);
        let lits = f.clauses()[0].literals();
        assert_eq!(lits[0], Literal::positive(0));
        assert_eq!(lits[1], Literal::negative(1));
        assert_eq!(lits[2], Literal::positive(2));
    }

    #[test]
    fn writes_psi() {
        assert_eq!(write_dimacs(&psi()), "p cnf 3 2\n1 2 3 0\n-1 2 3 0\n");
    }

    #[test]
    fn round_trip_is_structural_identity() {
        let f = super::super::generate_random_3sat(10, 42, 5).unwrap();
        assert_eq!(parse_dimacs(&write_dimacs(&f)).unwrap(), f);
    }

    #[test]
    fn rejects_two_literal_clause() {
        let err = parse_dimacs("p cnf 2 1\n1 -2 0\n").unwrap_err();
        assert!(err.to_string().contains("not 3SAT"));
    }

    #[test]
    fn rejects_missing_header() {
        assert!(parse_dimacs("1 2 3 0\n").is_err());
    }

    #[test]
    fn rejects_out_of_range_variable() {
        assert!(parse_dimacs("p cnf 3 1\n1 2 4 0\n").is_err());
    }

    #[test]
    fn ignores_comments_and_blank_lines() {
        let f = parse_dimacs("c generated\n\np cnf 3 1\nc body\n1 2 3 0\n").unwrap();
        assert_eq!(f.num_clauses(), 1);
    }

    #[test]
    fn rejects_clause_count_mismatch() {
        assert!(parse_dimacs("p cnf 3 2\n1 2 3 0\n").is_err());
    }
}
