//! Exact minimum directed feedback vertex set.
//!
//! [`solve_dfvs`] runs the full pipeline: data reductions to a fixpoint,
//! short-cycle collection, cycle-aware reductions when every uncovered cycle
//! is known, and a MaxSAT search whose SAT core rejects cyclic candidates
//! through an incremental topological order.

pub mod acyclic_prop;
pub mod batch;
pub mod cycles;
pub mod digraph;
pub mod driver;
pub mod error;
pub mod fixtures;
pub mod maxsat;
pub mod oracle;
pub mod random;
pub mod reductions;
pub mod satcore;

pub use batch::{solve_many, solve_many_sequential};
pub use digraph::{DiGraph, Node};
pub use driver::{cegar_solve, solve_dfvs, validate, Mode, SolveConfig, SolveReport, Validation};
pub use error::{Error, Result};
pub use reductions::{reconstruct, reduce, Rule, RuleSet};
