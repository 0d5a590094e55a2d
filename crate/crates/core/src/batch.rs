//! Solving many independent instances.

use crate::digraph::DiGraph;
use crate::driver::{solve_dfvs, SolveConfig, SolveReport};
use crate::error::Result;

/// One report per graph, in input order. Runs on the rayon pool when the
/// `parallel` feature is on.
pub fn solve_many(graphs: &[DiGraph], config: &SolveConfig) -> Vec<Result<SolveReport>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        graphs.par_iter().map(|g| solve_dfvs(g, config)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        solve_many_sequential(graphs, config)
    }
}

pub fn solve_many_sequential(graphs: &[DiGraph], config: &SolveConfig) -> Vec<Result<SolveReport>> {
    graphs.iter().map(|g| solve_dfvs(g, config)).collect()
}
