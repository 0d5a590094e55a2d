//! End-to-end solving: reduce, collect short cycles, optionally reduce with
//! the complete cycle set, minimize, lift back.

use crate::acyclic_prop::CyclePropagator;
use crate::cycles::{self, CycleSet, DEFAULT_MAX_CYCLES, DEFAULT_MAX_CYCLE_LEN, DEFAULT_NODE_BUDGET};
use crate::digraph::{DiGraph, Node};
use crate::error::{Error, Result};
use crate::maxsat::{minimize_observed, MaxSatInstance, MaxSatResult};
use crate::reductions::{self, ReductionStats, ReductionTrace, Rule, RuleSet};
use crate::satcore::{Lit, Model, SolverStats, Var};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Cycle propagation inside the SAT core.
    #[default]
    Propagate,
    /// Re-solve from scratch with disjoint cycles of each infeasible model.
    Cegar,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "propagate" => Ok(Mode::Propagate),
            "cegar" => Ok(Mode::Cegar),
            _ => Err(Error::Internal(format!("unknown mode {s:?}"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Propagate => "propagate",
            Mode::Cegar => "cegar",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SolveConfig {
    pub max_cycle_len: usize,
    pub max_cycles: usize,
    pub mode: Mode,
    pub rules: RuleSet,
    /// Search steps allowed for cycle enumeration.
    pub node_budget: u64,
    pub seed: u64,
    /// Start the MaxSAT search with the short cycles as hard clauses. When
    /// off, propagate mode relies on the propagator alone.
    pub seed_clauses: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            max_cycle_len: DEFAULT_MAX_CYCLE_LEN,
            max_cycles: DEFAULT_MAX_CYCLES,
            mode: Mode::Propagate,
            rules: RuleSet::default(),
            node_budget: DEFAULT_NODE_BUDGET,
            seed: 0,
            seed_clauses: true,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub reduce: f64,
    pub cycles: f64,
    pub all_cycles: f64,
    pub maxsat: f64,
    pub reconstruct: f64,
    pub total: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CycleStats {
    pub short_cycles: usize,
    pub complete: bool,
    /// Hard clauses added by CEGAR refinements.
    pub cegar_cycles: usize,
    pub cegar_iterations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub solution: Vec<Node>,
    pub optimum: usize,
    pub mode: Mode,
    pub input_vertices: usize,
    pub input_arcs: usize,
    pub kernel_vertices: usize,
    pub kernel_arcs: usize,
    pub forced: usize,
    pub fold_offset: usize,
    /// Seconds per phase.
    pub timings: Timings,
    pub reductions: ReductionStats,
    pub cycles: CycleStats,
    pub sat: SolverStats,
    /// True counts of the successive MaxSAT models (last solve only in CEGAR).
    pub descent: Vec<usize>,
    /// Models seen during the descent(s).
    pub models: usize,
    /// Models whose excluded vertices still contain a cycle.
    pub infeasible_models: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    Valid,
    UnknownVertex(Node),
    /// A cycle of `G − D`.
    Cycle(Vec<Node>),
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        *self == Validation::Valid
    }
}

/// Checks that `g − candidate` is acyclic.
pub fn validate(g: &DiGraph, candidate: &[Node]) -> Validation {
    let mut removed = vec![false; g.capacity()];
    for &v in candidate {
        if !g.is_alive(v) {
            return Validation::UnknownVertex(v);
        }
        removed[v as usize] = true;
    }
    match g.find_cycle(Some(&|v| !removed[v as usize])) {
        None => Validation::Valid,
        Some(c) => Validation::Cycle(c),
    }
}

fn seconds(since: Instant) -> f64 {
    since.elapsed().as_secs_f64()
}

fn false_set_is_acyclic(g: &DiGraph, model: &Model) -> bool {
    g.find_cycle(Some(&|v: Node| !model.value(Var(v)))).is_none()
}

/// Minimum DFVS of `g`.
pub fn solve_dfvs(g: &DiGraph, config: &SolveConfig) -> Result<SolveReport> {
    let start = Instant::now();
    let mut timings = Timings::default();

    let t = Instant::now();
    let mut kernel = g.clone();
    let mut trace = ReductionTrace::default();
    reductions::reduce_in_place(&mut kernel, &mut trace, config.rules);
    timings.reduce = seconds(t);

    let t = Instant::now();
    let mut cycles = short_cycles(&kernel, config);
    timings.cycles = seconds(t);

    if cycles.complete && config.rules.contains(Rule::AllCycles) {
        let t = Instant::now();
        cycles = reduce_with_complete_cycles(&mut kernel, cycles, &mut trace, config)?;
        timings.all_cycles = seconds(t);
    }
    log::debug!(
        "kernel {} vertices / {} arcs, {} cycles (complete: {})",
        kernel.num_vertices(),
        kernel.arc_count(),
        cycles.len(),
        cycles.complete
    );

    let t = Instant::now();
    let (compact, old_of) = kernel.compact();
    let mut new_of = vec![Node::MAX; kernel.capacity()];
    for (i, &v) in old_of.iter().enumerate() {
        new_of[v as usize] = i as Node;
    }
    let hard: Vec<Vec<Lit>> = if config.seed_clauses {
        cycles
            .cycles
            .iter()
            .map(|c| c.vertices().iter().map(|&v| Var(new_of[v as usize]).pos()).collect())
            .collect()
    } else {
        Vec::new()
    };
    let inst = MaxSatInstance {
        num_vars: compact.num_vertices(),
        soft: (0..compact.num_vertices() as u32).map(Var).collect(),
        hard,
    };
    let mut cycle_stats = CycleStats {
        short_cycles: cycles.len(),
        complete: cycles.complete,
        ..Default::default()
    };
    let mut models = 0;
    let mut infeasible_models = 0;
    let result = match config.mode {
        Mode::Propagate => {
            let mut observe = |m: &Model| {
                models += 1;
                if !false_set_is_acyclic(&compact, m) {
                    infeasible_models += 1;
                }
            };
            let prop = Box::new(CyclePropagator::new(&compact));
            minimize_observed(&inst, Some(prop), config.seed, &mut observe)?
        }
        Mode::Cegar => cegar_loop(&compact, inst, config.seed, &mut cycle_stats, &mut models)?,
    };
    timings.maxsat = seconds(t);
    if infeasible_models > 0 {
        return Err(Error::Internal(format!(
            "{infeasible_models} models with a cyclic excluded set"
        )));
    }

    let t = Instant::now();
    let kernel_solution: Vec<Node> = result.model.true_vars().map(|v| old_of[v.index()]).collect();
    let solution = reductions::reconstruct(&trace, &kernel_solution)?;
    timings.reconstruct = seconds(t);
    match validate(g, &solution) {
        Validation::Valid => {}
        other => {
            return Err(Error::Internal(format!(
                "solution of size {} fails validation: {other:?}",
                solution.len()
            )))
        }
    }
    if solution.len() != result.optimum + trace.size_offset() {
        return Err(Error::Internal(format!(
            "lifted size {} differs from kernel optimum {} plus offset {}",
            solution.len(),
            result.optimum,
            trace.size_offset()
        )));
    }
    timings.total = seconds(start);

    Ok(SolveReport {
        optimum: solution.len(),
        solution,
        mode: config.mode,
        input_vertices: g.num_vertices(),
        input_arcs: g.arc_count(),
        kernel_vertices: kernel.num_vertices(),
        kernel_arcs: kernel.arc_count(),
        forced: trace.forced.len(),
        fold_offset: trace.offset,
        timings,
        reductions: trace.stats,
        cycles: cycle_stats,
        sat: result.stats,
        descent: result.descent,
        models,
        infeasible_models,
    })
}

fn short_cycles(g: &DiGraph, config: &SolveConfig) -> CycleSet {
    let mut budget = config.node_budget;
    cycles::find_short_cycles_budgeted(g, config.max_cycle_len, config.max_cycles, &mut budget)
}

/// Alternates the cycle-aware rules with plain reduction until neither
/// changes the graph or the cycle set stops being complete. Returns the
/// cycle set of the final kernel.
fn reduce_with_complete_cycles(
    kernel: &mut DiGraph,
    mut cycles: CycleSet,
    trace: &mut ReductionTrace,
    config: &SolveConfig,
) -> Result<CycleSet> {
    loop {
        if !reductions::reduce_with_all_cycles(kernel, &mut cycles, trace, config.rules)? {
            return Ok(cycles);
        }
        if reductions::reduce_in_place(kernel, trace, config.rules) || !cycles.complete {
            cycles = short_cycles(kernel, config);
            if !cycles.complete {
                return Ok(cycles);
            }
        }
    }
}

fn cegar_loop(
    g: &DiGraph,
    mut inst: MaxSatInstance,
    seed: u64,
    stats: &mut CycleStats,
    models: &mut usize,
) -> Result<MaxSatResult> {
    loop {
        stats.cegar_iterations += 1;
        let result = minimize_observed(&inst, None, seed, &mut |_| *models += 1)?;
        let mut blocked: Vec<bool> = (0..g.capacity() as u32).map(|v| result.model.value(Var(v))).collect();
        let mut added = 0;
        while let Some(cycle) = g.find_cycle(Some(&|v| !blocked[v as usize])) {
            for &v in &cycle {
                blocked[v as usize] = true;
            }
            inst.hard.push(cycle.iter().map(|&v| Var(v).pos()).collect());
            added += 1;
        }
        if added == 0 {
            return Ok(result);
        }
        log::debug!("cegar iteration {}: {added} disjoint cycles", stats.cegar_iterations);
        stats.cegar_cycles += added;
    }
}

/// [`cegar_loop`] on a graph with the given starting cycles, no reductions.
pub fn cegar_solve(g: &DiGraph, initial: &[Vec<Node>], config: &SolveConfig) -> Result<SolveReport> {
    let start = Instant::now();
    let (compact, old_of) = g.compact();
    let mut new_of = vec![Node::MAX; g.capacity()];
    for (i, &v) in old_of.iter().enumerate() {
        new_of[v as usize] = i as Node;
    }
    let mut hard = Vec::with_capacity(initial.len());
    for c in initial {
        let mut clause = Vec::with_capacity(c.len());
        for &v in c {
            if !g.is_alive(v) {
                return Err(Error::UnknownVertex(v));
            }
            clause.push(Var(new_of[v as usize]).pos());
        }
        hard.push(clause);
    }
    let inst = MaxSatInstance {
        num_vars: compact.num_vertices(),
        soft: (0..compact.num_vertices() as u32).map(Var).collect(),
        hard,
    };
    let mut cycle_stats = CycleStats {
        short_cycles: initial.len(),
        ..Default::default()
    };
    let mut models = 0;
    let result = cegar_loop(&compact, inst, config.seed, &mut cycle_stats, &mut models)?;
    let solution: Vec<Node> = result.model.true_vars().map(|v| old_of[v.index()]).collect();
    if !validate(g, &solution).is_valid() {
        return Err(Error::Internal("cegar returned an infeasible set".into()));
    }
    let maxsat = seconds(start);
    Ok(SolveReport {
        optimum: solution.len(),
        solution,
        mode: Mode::Cegar,
        input_vertices: g.num_vertices(),
        input_arcs: g.arc_count(),
        kernel_vertices: g.num_vertices(),
        kernel_arcs: g.arc_count(),
        forced: 0,
        fold_offset: 0,
        timings: Timings {
            maxsat,
            total: maxsat,
            ..Default::default()
        },
        reductions: ReductionStats::default(),
        cycles: cycle_stats,
        sat: result.stats,
        descent: result.descent,
        models,
        infeasible_models: 0,
    })
}
