use crate::digraph::Node;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(Node),
    #[error("vertex {0} has a self-loop; exclusion requires a loop-free vertex")]
    SelfLoop(Node),
    #[error("arc ({0}, {1}) does not exist")]
    MissingArc(Node, Node),
    #[error("unknown reduction rule `{0}`")]
    UnknownRule(String),
    #[error("operation requires a complete cycle set")]
    IncompleteCycleSet,
    #[error("oracle limit exceeded: {vertices} vertices (max {max})")]
    OracleLimit { vertices: usize, max: usize },
    #[error("reconstruction invariant violated: {0}")]
    Reconstruction(String),
    #[error("solution is not a feasible DFVS: {0}")]
    Infeasible(String),
    #[error("internal solver error: {0}")]
    Internal(String),
    #[error("{}{msg}", at_line(*line))]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn at_line(line: usize) -> String {
    if line == 0 {
        String::new()
    } else {
        format!("line {line}: ")
    }
}
