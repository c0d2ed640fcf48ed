//! Clearing toolkit for barter-exchange markets.
//!
//! Finds vertex-disjoint, length-restricted cycles maximizing total weight
//! or size in a directed graph: two practical heuristics, exact
//! matching-based lower/upper bounds, a brute-force oracle for small
//! instances, hardness-gadget builders with structural verifiers, and a
//! seeded compatibility-graph simulator with a benchmark harness.

pub mod bench;
pub mod bounds;
pub mod config;
pub mod cycles;
pub mod gadgets;
pub mod greedy;
pub mod instance;
pub mod matching;
pub mod matching_based;
pub mod oracle;
pub mod simgen;
pub mod weight;

pub use config::{LengthBound, Objective, SolverConfig};
pub use cycles::{ClearingSolution, Cycle, ObjectiveValue};
pub use instance::ExchangeInstance;
pub use weight::Weight;
