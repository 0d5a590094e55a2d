//! Unweighted MaxSAT by linear SAT-UNSAT descent.
//!
//! Every soft clause is a unit `¬x`, so the objective is the number of true
//! soft variables. After the first model with `t` true soft variables a
//! totalizer over them is added, and each further call assumes the output
//! "at least `k + 1` true" is false for the next bound `k`.

use crate::error::{Error, Result};
use crate::satcore::{Lit, Model, Propagator, SolveResult, Solver, SolverStats, Var};

#[derive(Clone, Debug, Default)]
pub struct MaxSatInstance {
    pub num_vars: usize,
    pub hard: Vec<Vec<Lit>>,
    /// Variables with a soft clause `¬x` of weight 1.
    pub soft: Vec<Var>,
}

#[derive(Clone, Debug)]
pub struct MaxSatResult {
    /// Values of the instance variables only.
    pub model: Model,
    pub optimum: usize,
    /// True soft counts of the successive models.
    pub descent: Vec<usize>,
    pub stats: SolverStats,
}

/// Totalizer outputs: `outputs[j]` is forced true whenever at least `j + 1`
/// inputs are true. Counts above `cap` are all reported on the last output.
#[derive(Clone, Debug)]
pub struct CardinalityLayer {
    outputs: Vec<Lit>,
    cap: usize,
}

impl CardinalityLayer {
    pub fn build(solver: &mut Solver, inputs: &[Lit], cap: usize) -> Self {
        let cap = cap.min(inputs.len());
        if let Some(max) = inputs.iter().map(|l| l.var().index()).max() {
            solver.ensure_vars(max + 1);
        }
        let outputs = if cap == 0 || inputs.is_empty() {
            Vec::new()
        } else {
            Self::tree(solver, inputs, cap)
        };
        CardinalityLayer { outputs, cap }
    }

    fn tree(solver: &mut Solver, inputs: &[Lit], cap: usize) -> Vec<Lit> {
        if inputs.len() == 1 {
            return vec![inputs[0]];
        }
        let (l, r) = inputs.split_at(inputs.len() / 2);
        let a = Self::tree(solver, l, cap);
        let b = Self::tree(solver, r, cap);
        let width = (a.len() + b.len()).min(cap);
        let out: Vec<Lit> = (0..width).map(|_| solver.new_var().pos()).collect();
        for i in 0..=a.len() {
            for j in 0..=b.len() {
                if i + j == 0 {
                    continue;
                }
                let mut clause = Vec::with_capacity(3);
                if i > 0 {
                    clause.push(!a[i - 1]);
                }
                if j > 0 {
                    clause.push(!b[j - 1]);
                }
                clause.push(out[(i + j).min(width) - 1]);
                solver.add_clause(&clause);
            }
        }
        out
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Assumption enforcing "at most `k` inputs true", or `None` when the
    /// layer cannot express anything tighter than no bound.
    pub fn at_most(&self, k: usize) -> Option<Lit> {
        self.outputs.get(k).map(|&o| !o)
    }
}

/// Minimum number of true soft variables over models of the hard clauses
/// (and of whatever `propagator` injects).
pub fn minimize(
    inst: &MaxSatInstance,
    propagator: Option<Box<dyn Propagator + Send>>,
    seed: u64,
) -> Result<MaxSatResult> {
    minimize_observed(inst, propagator, seed, &mut |_| {})
}

/// [`minimize`], calling `on_model` on every model of the descent.
pub fn minimize_observed(
    inst: &MaxSatInstance,
    propagator: Option<Box<dyn Propagator + Send>>,
    seed: u64,
    on_model: &mut dyn FnMut(&Model),
) -> Result<MaxSatResult> {
    let mut solver = Solver::with_seed(seed);
    solver.ensure_vars(inst.num_vars);
    for &v in &inst.soft {
        solver.set_phase_preference(v, Some(false));
    }
    for c in &inst.hard {
        solver.add_clause(c);
    }
    if let Some(p) = propagator {
        solver.set_propagator(p);
    }

    let soft_lits: Vec<Lit> = inst.soft.iter().map(|v| v.pos()).collect();
    let mut layer: Option<CardinalityLayer> = None;
    let mut best: Option<Model> = None;
    let mut descent = Vec::new();
    let mut assumption: Vec<Lit> = Vec::new();
    loop {
        match solver.solve_with(&assumption) {
            SolveResult::Sat(model) => {
                on_model(&model);
                let t = inst.soft.iter().filter(|&&v| model.value(v)).count();
                if let Some(&prev) = descent.last() {
                    if t >= prev {
                        return Err(Error::Internal(format!(
                            "descent stalled: {t} after {prev}"
                        )));
                    }
                }
                descent.push(t);
                best = Some(model);
                if t == 0 {
                    break;
                }
                let layer = layer
                    .get_or_insert_with(|| CardinalityLayer::build(&mut solver, &soft_lits, t));
                match layer.at_most(t - 1) {
                    Some(a) => assumption = vec![a],
                    None => return Err(Error::Internal("bound outside the totalizer".into())),
                }
            }
            SolveResult::Unsat(_) => break,
        }
    }
    let mut model =
        best.ok_or_else(|| Error::Infeasible("hard clauses are unsatisfiable".into()))?;
    // totalizer variables are not part of the answer
    model.truncate(inst.num_vars);
    Ok(MaxSatResult {
        optimum: *descent.last().unwrap(),
        model,
        descent,
        stats: solver.stats().clone(),
    })
}
