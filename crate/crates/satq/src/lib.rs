//! 3SAT on an annealing-style QUBO pipeline, end to end and fully classical.
//!
//! The crate covers:
//!
//! - random 3SAT instance generation across the satisfiability phase
//!   transition, plus DIMACS I/O and an exact DPLL oracle ([`sat`]);
//! - translation of a 3SAT formula into the clause-literal conflict graph
//!   and from there into a QUBO matrix ([`encoder`]);
//! - classical QUBO minimizers standing in for an annealer: exhaustive
//!   enumeration, simulated annealing and tabu search ([`samplers`]);
//! - witness decoding of answer bitstrings back into partial variable
//!   assignments, answer classification and both postprocessing
//!   procedures ([`postprocess`]);
//! - experiment harnesses for solution-quality distributions, α-sweeps
//!   and solution-bias frequencies, with CSV/JSON persistence
//!   ([`experiments`]).
//!
//! Every stochastic component is deterministic for a fixed seed; see
//! [`samplers::mix_seed`] for the per-stream seeding contract.
//!
//! The `examples/` directory contains one runnable example per major
//! capability; the `satq` binary exposes the same pipeline as CLI
//! subcommands.

pub mod encoder;
pub mod error;
pub mod experiments;
pub mod postprocess;
pub mod samplers;
pub mod sat;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
