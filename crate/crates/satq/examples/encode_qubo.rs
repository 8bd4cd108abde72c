//! Walk through the 3SAT -> weighted-MIS -> QUBO encoding on a tiny formula
//! and print the resulting conflict graph and sparse matrix.

use satq::encoder::{build_conflict_graph, graph_to_qubo, write_qubo, DEFAULT_PENALTY, DEFAULT_WEIGHT};
use satq::sat::{write_dimacs, Clause, CnfFormula, Literal};

fn main() -> satq::Result<()> {
    // (x1 v x2 v x3) & (!x1 v x2 v x3)
    let formula = CnfFormula::new(
        3,
        vec![
            Clause::new([
                Literal::positive(0),
                Literal::positive(1),
                Literal::positive(2),
            ]),
            Clause::new([
                Literal::negative(0),
                Literal::positive(1),
                Literal::positive(2),
            ]),
        ],
    )?;
    println!("formula (DIMACS):\n{}", write_dimacs(&formula));

    // One vertex per clause-literal occurrence; edges inside each clause
    // triangle and between complementary occurrences across clauses.
    let graph = build_conflict_graph(&formula)?;
    println!("conflict graph: {} vertices", graph.vertex_count());
    for &(a, b) in graph.edges() {
        println!(
            "  edge {a}-{b} (clauses {} and {})",
            graph.clause_of(a),
            graph.clause_of(b)
        );
    }

    let q = graph_to_qubo(&graph, DEFAULT_WEIGHT, DEFAULT_PENALTY)?;
    println!("\nQUBO (sparse upper-triangular):\n{}", write_qubo(&q));
    println!("ground energy -m = -{} iff the formula is satisfiable", formula.num_clauses());
    Ok(())
}
