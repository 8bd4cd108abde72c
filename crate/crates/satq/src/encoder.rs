//! 3SAT → weighted maximum independent set → QUBO.
//!
//! One vertex per literal occurrence (vertex `i` carries literal `l_i` of
//! clause `i / 3`). Edges form a triangle inside every clause and join
//! complementary literals across clauses. Selecting an independent set of
//! maximum weight then corresponds to picking a consistent witness per
//! clause: with unit weights and penalty 2, the QUBO minimum is `-m`
//! exactly when the formula is satisfiable.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::sat::{CnfFormula, Literal};
use crate::{Error, Result};

/// Clause-literal conflict graph in WMIS form.
#[derive(Debug, Clone, PartialEq)]
pub struct ConflictGraph {
    vertex_literal: Vec<Literal>,
    edges: Vec<(usize, usize)>,
    vertex_weight: Vec<f64>,
}

impl ConflictGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_literal.len()
    }

    pub fn literal(&self, vertex: usize) -> Literal {
        self.vertex_literal[vertex]
    }

    /// Clause owning vertex `i`.
    pub fn clause_of(&self, vertex: usize) -> usize {
        vertex / 3
    }

    /// Edges as ordered pairs `(i, j)` with `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex_weight(&self, vertex: usize) -> f64 {
        self.vertex_weight[vertex]
    }
}

/// Builds the conflict graph for a formula: 3m vertices, intra-clause
/// triangles plus one edge per complementary literal pair across clauses.
pub fn build_conflict_graph(formula: &CnfFormula) -> Result<ConflictGraph> {
    let m = formula.num_clauses();
    if m == 0 {
        return Err(Error::Input("cannot encode a formula with no clauses".into()));
    }
    let dim = 3 * m;
    let vertex_literal: Vec<Literal> = (0..dim).map(|i| formula.literal(i)).collect();

    let mut edges = Vec::new();
    for k in 0..m {
        let b = 3 * k;
        edges.push((b, b + 1));
        edges.push((b, b + 2));
        edges.push((b + 1, b + 2));
    }
    for i in 0..dim {
        for j in (i + 1)..dim {
            if i / 3 != j / 3 && vertex_literal[i] == vertex_literal[j].complement() {
                edges.push((i, j));
            }
        }
    }
    edges.sort_unstable();

    Ok(ConflictGraph {
        vertex_literal,
        edges,
        vertex_weight: vec![1.0; dim],
    })
}

/// Upper-triangular QUBO matrix: diagonal `Q_i` plus sparse off-diagonal
/// `Q_ij` with `i < j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuboMatrix {
    dimension: usize,
    diagonal: Vec<f64>,
    off_diagonal: BTreeMap<(usize, usize), f64>,
}

impl QuboMatrix {
    pub fn new(dimension: usize) -> Self {
        QuboMatrix {
            dimension,
            diagonal: vec![0.0; dimension],
            off_diagonal: BTreeMap::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn set_diagonal(&mut self, i: usize, value: f64) -> Result<()> {
        if i >= self.dimension {
            return Err(Error::Input(format!("index {i} out of range")));
        }
        self.diagonal[i] = value;
        Ok(())
    }

    pub fn set_off_diagonal(&mut self, i: usize, j: usize, value: f64) -> Result<()> {
        if i >= j {
            return Err(Error::Input(format!("off-diagonal entry ({i}, {j}) must have i < j")));
        }
        if j >= self.dimension {
            return Err(Error::Input(format!("index {j} out of range")));
        }
        self.off_diagonal.insert((i, j), value);
        Ok(())
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    /// Off-diagonal entries in ascending `(i, j)` order.
    pub fn off_diagonal(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.off_diagonal.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.diagonal[i]
        } else {
            let key = if i < j { (i, j) } else { (j, i) };
            self.off_diagonal.get(&key).copied().unwrap_or(0.0)
        }
    }
}

/// A candidate QUBO solution: a 0/1 vector of the matrix dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Bitstring(Vec<u8>);

impl Bitstring {
    pub fn zeros(len: usize) -> Self {
        Bitstring(vec![0; len])
    }

    pub fn from_bits(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Input("bitstring values must be 0 or 1".into()));
        }
        Ok(Bitstring(bits))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i] == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.0[i] = u8::from(value);
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i] ^= 1;
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().map(|&b| b as usize).sum()
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| (b == 1).then_some(i))
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for Bitstring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Input(format!("invalid bitstring character '{c}'"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(Bitstring)
    }
}

impl From<Bitstring> for String {
    fn from(b: Bitstring) -> String {
        b.to_string()
    }
}

impl TryFrom<String> for Bitstring {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Default vertex weight for the WMIS encoding.
pub const DEFAULT_WEIGHT: f64 = 1.0;
/// Default edge penalty; must exceed the weight so that adding a
/// conflicting vertex never lowers the energy.
pub const DEFAULT_PENALTY: f64 = 2.0;

/// Turns a conflict graph into a QUBO: `Q_ii = -weight`, `Q_ij = penalty`
/// per edge.
pub fn graph_to_qubo(graph: &ConflictGraph, weight: f64, penalty: f64) -> Result<QuboMatrix> {
    if penalty <= weight {
        return Err(Error::Config(format!(
            "penalty {penalty} must exceed vertex weight {weight}"
        )));
    }
    let mut q = QuboMatrix::new(graph.vertex_count());
    for i in 0..graph.vertex_count() {
        q.set_diagonal(i, -(weight * graph.vertex_weight(i)))?;
    }
    for &(i, j) in graph.edges() {
        q.set_off_diagonal(i, j, penalty)?;
    }
    Ok(q)
}

/// Full 3SAT → QUBO encoding with the default weight/penalty pair. The
/// resulting matrix has dimension `3m`.
pub fn encode(formula: &CnfFormula) -> Result<QuboMatrix> {
    graph_to_qubo(&build_conflict_graph(formula)?, DEFAULT_WEIGHT, DEFAULT_PENALTY)
}

/// Evaluates `Σ_i Σ_{j<i} Q_ij x_i x_j + Σ_i Q_i x_i`.
pub fn qubo_energy(q: &QuboMatrix, x: &Bitstring) -> Result<f64> {
    if x.len() != q.dimension() {
        return Err(Error::Input(format!(
            "bitstring length {} does not match QUBO dimension {}",
            x.len(),
            q.dimension()
        )));
    }
    let mut energy = 0.0;
    for (i, &d) in q.diagonal.iter().enumerate() {
        if x.get(i) {
            energy += d;
        }
    }
    for (&(i, j), &v) in &q.off_diagonal {
        if x.get(i) && x.get(j) {
            energy += v;
        }
    }
    Ok(energy)
}

/// Serializes a QUBO in sparse coordinate form: `dim <d>` then one
/// `<i> <j> <value>` line per nonzero with `i <= j`.
pub fn write_qubo(q: &QuboMatrix) -> String {
    let mut out = format!("dim {}\n", q.dimension());
    for (i, &d) in q.diagonal.iter().enumerate() {
        if d != 0.0 {
            out.push_str(&format!("{i} {i} {d}\n"));
        }
    }
    for (i, j, v) in q.off_diagonal() {
        if v != 0.0 {
            out.push_str(&format!("{i} {j} {v}\n"));
        }
    }
    out
}

/// Parses the sparse coordinate format produced by [`write_qubo`].
pub fn parse_qubo(text: &str) -> Result<QuboMatrix> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Format("missing QUBO header".into()))?;
    let dim: usize = header
        .strip_prefix("dim ")
        .and_then(|t| t.trim().parse().ok())
        .ok_or_else(|| Error::Format(format!("expected 'dim <n>' header, got '{header}'")))?;

    let mut q = QuboMatrix::new(dim);
    let mut seen = std::collections::BTreeSet::new();
    for line in lines {
        let mut parts = line.split_whitespace();
        let (i, j, v) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some(i), Some(j), Some(v), None) => (i, j, v),
            _ => return Err(Error::Format(format!("malformed QUBO line '{line}'"))),
        };
        let i: usize = i
            .parse()
            .map_err(|_| Error::Format(format!("bad index in '{line}'")))?;
        let j: usize = j
            .parse()
            .map_err(|_| Error::Format(format!("bad index in '{line}'")))?;
        let v: f64 = v
            .parse()
            .map_err(|_| Error::Format(format!("bad value in '{line}'")))?;
        if i > j {
            return Err(Error::Format(format!(
                "entry ({i}, {j}) lies in the lower triangle"
            )));
        }
        if j >= dim {
            return Err(Error::Format(format!("index {j} exceeds dimension {dim}")));
        }
        if !seen.insert((i, j)) {
            return Err(Error::Format(format!("duplicate entry ({i}, {j})")));
        }
        if i == j {
            q.set_diagonal(i, v)?;
        } else {
            q.set_off_diagonal(i, j, v)?;
        }
    }
    Ok(q)
}
