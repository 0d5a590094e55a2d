//! CDCL SAT solver with a propagator hook.
//!
//! Two watched literals, first-UIP learning, VSIDS with geometric restarts and
//! phase saving. A [`Propagator`] is consulted each time Boolean constraint
//! propagation reaches a fixpoint and before any decision is made; it may hand
//! back one clause, which is added and acted upon immediately.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;
use std::ops::Not;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }
    pub fn pos(self) -> Lit {
        Lit::new(self, true)
    }
    pub fn neg(self) -> Lit {
        Lit::new(self, false)
    }
}

/// `2 * var + (negated as u32)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: Var, positive: bool) -> Lit {
        Lit(var.0 << 1 | u32::from(!positive))
    }

    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    fn code(self) -> usize {
        self.0 as usize
    }

    /// From a non-zero DIMACS integer (variable `|x| - 1`).
    pub fn from_dimacs(x: i64) -> Lit {
        assert!(x != 0, "0 is a clause terminator, not a literal");
        Lit::new(Var((x.unsigned_abs() - 1) as u32), x > 0)
    }

    pub fn to_dimacs(self) -> i64 {
        let v = i64::from(self.var().0) + 1;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }
}

impl Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// Hook consulted at every propagation fixpoint.
pub trait Propagator {
    /// Literals assigned since the previous notification, in trail order.
    fn notify_assigned(&mut self, lits: &[Lit]);
    /// Variables that were notified as assigned and have been unassigned.
    fn notify_backtrack(&mut self, vars: &[Var]);
    /// Called after `notify_assigned` at a fixpoint. May return one clause; it
    /// must be falsified or undetermined under the current assignment.
    fn propagate(&mut self) -> Option<Vec<Lit>>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClauseKind {
    Original,
    Learnt,
    /// Handed over by the propagator; never removed.
    Injected,
}

#[derive(Clone, Debug)]
struct Clause {
    lits: Vec<Lit>,
    kind: ClauseKind,
    activity: f64,
    deleted: bool,
}

type CRef = u32;

#[derive(Clone, Copy, Debug)]
struct Watcher {
    cref: CRef,
    blocker: Lit,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SolverStats {
    pub solves: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
    pub restarts: u64,
    pub learnt_clauses: u64,
    pub injected_clauses: u64,
    pub deleted_clauses: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    values: Vec<bool>,
}

impl Model {
    pub fn value(&self, v: Var) -> bool {
        self.values[v.index()]
    }

    pub fn lit_value(&self, l: Lit) -> bool {
        self.value(l.var()) == l.is_positive()
    }

    pub fn satisfies(&self, clause: &[Lit]) -> bool {
        clause.iter().any(|&l| self.lit_value(l))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub(crate) fn truncate(&mut self, n: usize) {
        self.values.truncate(n);
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn true_vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| Var(i as u32))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    Sat(Model),
    /// Subset of the assumptions that cannot hold together (empty when the
    /// clauses alone are unsatisfiable).
    Unsat(Vec<Lit>),
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveResult::Sat(_))
    }
}

/// Binary max-heap of variables ordered by activity, ties by lower index.
#[derive(Clone, Debug, Default)]
struct VarHeap {
    heap: Vec<u32>,
    pos: Vec<Option<usize>>,
}

impl VarHeap {
    fn before(act: &[f64], a: u32, b: u32) -> bool {
        let (x, y) = (act[a as usize], act[b as usize]);
        x > y || (x == y && a < b)
    }

    fn grow(&mut self, n: usize) {
        self.pos.resize(n, None);
    }

    fn contains(&self, v: u32) -> bool {
        self.pos[v as usize].is_some()
    }

    fn insert(&mut self, v: u32, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.heap.push(v);
        self.pos[v as usize] = Some(self.heap.len() - 1);
        self.up(self.heap.len() - 1, act);
    }

    fn bumped(&mut self, v: u32, act: &[f64]) {
        if let Some(i) = self.pos[v as usize] {
            self.up(i, act);
        }
    }

    fn pop(&mut self, act: &[f64]) -> Option<u32> {
        if self.heap.is_empty() {
            return None;
        }
        let top = self.heap.swap_remove(0);
        self.pos[top as usize] = None;
        if !self.heap.is_empty() {
            self.pos[self.heap[0] as usize] = Some(0);
            self.down(0, act);
        }
        Some(top)
    }

    fn up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            if !Self::before(act, v, self.heap[parent]) {
                break;
            }
            self.heap[i] = self.heap[parent];
            self.pos[self.heap[i] as usize] = Some(i);
            i = parent;
        }
        self.heap[i] = v;
        self.pos[v as usize] = Some(i);
    }

    fn down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        loop {
            let l = 2 * i + 1;
            if l >= self.heap.len() {
                break;
            }
            let r = l + 1;
            let child = if r < self.heap.len() && Self::before(act, self.heap[r], self.heap[l]) {
                r
            } else {
                l
            };
            if !Self::before(act, self.heap[child], v) {
                break;
            }
            self.heap[i] = self.heap[child];
            self.pos[self.heap[i] as usize] = Some(i);
            i = child;
        }
        self.heap[i] = v;
        self.pos[v as usize] = Some(i);
    }
}

enum Injection {
    Added,
    Conflict(CRef),
    Unsat,
}

const VAR_DECAY: f64 = 0.95;
const CLAUSE_DECAY: f64 = 0.999;
const RESTART_FIRST: f64 = 100.0;
const RESTART_FACTOR: f64 = 1.5;

pub struct Solver {
    clauses: Vec<Clause>,
    watches: Vec<Vec<Watcher>>,
    assigns: Vec<Option<bool>>,
    level: Vec<u32>,
    reason: Vec<Option<CRef>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    heap: VarHeap,
    saved_phase: Vec<bool>,
    preferred: Vec<Option<bool>>,
    seen: Vec<bool>,
    ok: bool,
    propagator: Option<Box<dyn Propagator + Send>>,
    prop_head: usize,
    num_learnts: usize,
    max_learnts: f64,
    stats: SolverStats,
    transcript: Option<Vec<(u32, Lit)>>,
    rng: ChaCha8Rng,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::with_seed(0)
    }
}

impl Solver {
    pub fn new() -> Self {
        Self::default()
    }

    /// The seed perturbs initial variable activities, nothing else.
    pub fn with_seed(seed: u64) -> Self {
        Solver {
            clauses: Vec::new(),
            watches: Vec::new(),
            assigns: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: Vec::new(),
            var_inc: 1.0,
            cla_inc: 1.0,
            heap: VarHeap::default(),
            saved_phase: Vec::new(),
            preferred: Vec::new(),
            seen: Vec::new(),
            ok: true,
            propagator: None,
            prop_head: 0,
            num_learnts: 0,
            max_learnts: 0.0,
            stats: SolverStats::default(),
            transcript: None,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.assigns.len()
    }

    pub fn new_var(&mut self) -> Var {
        let v = Var(self.assigns.len() as u32);
        self.assigns.push(None);
        self.level.push(0);
        self.reason.push(None);
        self.activity.push(self.rng.gen::<f64>() * 1e-5);
        self.saved_phase.push(false);
        self.preferred.push(None);
        self.seen.push(false);
        self.watches.push(Vec::new());
        self.watches.push(Vec::new());
        self.heap.grow(self.assigns.len());
        self.heap.insert(v.0, &self.activity);
        v
    }

    /// Makes sure variables `0..n` exist.
    pub fn ensure_vars(&mut self, n: usize) {
        while self.num_vars() < n {
            self.new_var();
        }
    }

    pub fn stats(&self) -> &SolverStats {
        &self.stats
    }

    /// False once the clause set is known to be unsatisfiable.
    pub fn is_ok(&self) -> bool {
        self.ok
    }

    pub fn set_propagator(&mut self, p: Box<dyn Propagator + Send>) {
        self.propagator = Some(p);
        self.prop_head = 0;
    }

    pub fn take_propagator(&mut self) -> Option<Box<dyn Propagator + Send>> {
        self.propagator.take()
    }

    /// Decision polarity for `v`; overrides the saved phase. `None` restores
    /// phase saving.
    pub fn set_phase_preference(&mut self, v: Var, preferred: Option<bool>) {
        self.ensure_vars(v.index() + 1);
        self.preferred[v.index()] = preferred;
    }

    /// Records `(level, literal)` for every assignment from now on.
    pub fn enable_transcript(&mut self) {
        self.transcript = Some(Vec::new());
    }

    pub fn transcript(&self) -> &[(u32, Lit)] {
        self.transcript.as_deref().unwrap_or(&[])
    }

    pub fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    pub fn value(&self, l: Lit) -> Option<bool> {
        self.assigns[l.var().index()].map(|b| b == l.is_positive())
    }

    pub fn var_level(&self, v: Var) -> u32 {
        self.level[v.index()]
    }

    pub fn trail(&self) -> &[Lit] {
        &self.trail
    }

    /// Every stored clause with its kind. Unit facts are not included.
    pub fn clause_db(&self) -> impl Iterator<Item = (&[Lit], ClauseKind)> {
        self.clauses
            .iter()
            .filter(|c| !c.deleted)
            .map(|c| (c.lits.as_slice(), c.kind))
    }

    /// Assignments made at decision level 0.
    pub fn level_zero_facts(&self) -> Vec<Lit> {
        let end = self.trail_lim.first().copied().unwrap_or(self.trail.len());
        self.trail[..end].to_vec()
    }

    fn lit_value(assigns: &[Option<bool>], l: Lit) -> Option<bool> {
        assigns[l.var().index()].map(|b| b == l.is_positive())
    }

    /// Sorts, drops duplicates; `None` for tautologies.
    fn normalize(lits: &[Lit]) -> Option<Vec<Lit>> {
        let mut c = lits.to_vec();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0].var() == w[1].var()) {
            return None;
        }
        Some(c)
    }

    /// Adds a problem clause. Returns `false` if the solver became UNSAT.
    pub fn add_clause(&mut self, lits: &[Lit]) -> bool {
        if !self.ok {
            return false;
        }
        if let Some(max) = lits.iter().map(|l| l.var().index()).max() {
            self.ensure_vars(max + 1);
        }
        self.cancel_until(0);
        let Some(mut c) = Self::normalize(lits) else {
            return true;
        };
        if c.iter().any(|&l| self.value(l) == Some(true)) {
            return true;
        }
        c.retain(|&l| self.value(l).is_none());
        match c.len() {
            0 => {
                self.ok = false;
                false
            }
            1 => {
                self.enqueue(c[0], None);
                if self.propagate_bcp().is_some() {
                    self.ok = false;
                }
                self.ok
            }
            _ => {
                self.attach(c, ClauseKind::Original);
                true
            }
        }
    }

    fn attach(&mut self, lits: Vec<Lit>, kind: ClauseKind) -> CRef {
        debug_assert!(lits.len() >= 2);
        let cref = self.clauses.len() as CRef;
        self.watches[lits[0].code()].push(Watcher {
            cref,
            blocker: lits[1],
        });
        self.watches[lits[1].code()].push(Watcher {
            cref,
            blocker: lits[0],
        });
        if kind == ClauseKind::Learnt {
            self.num_learnts += 1;
        }
        self.clauses.push(Clause {
            lits,
            kind,
            activity: 0.0,
            deleted: false,
        });
        cref
    }

    fn enqueue(&mut self, l: Lit, reason: Option<CRef>) {
        let v = l.var().index();
        debug_assert!(self.assigns[v].is_none());
        self.assigns[v] = Some(l.is_positive());
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
        if let Some(t) = self.transcript.as_mut() {
            t.push((self.trail_lim.len() as u32, l));
        }
    }

    /// Opens a new decision level and assigns `l` (low-level stepping API).
    pub fn decide(&mut self, l: Lit) {
        self.ensure_vars(l.var().index() + 1);
        self.trail_lim.push(self.trail.len());
        self.stats.decisions += 1;
        self.enqueue(l, None);
    }

    /// Runs unit propagation to a fixpoint. Returns the falsified clause on
    /// conflict.
    pub fn propagate(&mut self) -> Option<Vec<Lit>> {
        self.propagate_bcp()
            .map(|c| self.clauses[c as usize].lits.clone())
    }

    /// Undoes every assignment above `level`.
    pub fn backtrack_to(&mut self, level: u32) {
        self.cancel_until(level);
    }

    fn propagate_bcp(&mut self) -> Option<CRef> {
        let mut conflict = None;
        while self.qhead < self.trail.len() && conflict.is_none() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[false_lit.code()]);
            let (mut i, mut j) = (0, 0);
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                let clause = &mut self.clauses[w.cref as usize];
                if clause.deleted {
                    continue;
                }
                if Self::lit_value(&self.assigns, w.blocker) == Some(true) {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let lits = &mut clause.lits;
                if lits[0] == false_lit {
                    lits.swap(0, 1);
                }
                let first = lits[0];
                let kept = Watcher {
                    cref: w.cref,
                    blocker: first,
                };
                if first != w.blocker && Self::lit_value(&self.assigns, first) == Some(true) {
                    ws[j] = kept;
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..lits.len() {
                    if Self::lit_value(&self.assigns, lits[k]) != Some(false) {
                        lits.swap(1, k);
                        let new_watch = lits[1];
                        self.watches[new_watch.code()].push(kept);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = kept;
                j += 1;
                if Self::lit_value(&self.assigns, first) == Some(false) {
                    conflict = Some(w.cref);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first, Some(w.cref));
                }
            }
            ws.truncate(j);
            self.watches[false_lit.code()] = ws;
        }
        if conflict.is_some() {
            self.qhead = self.trail.len();
        }
        conflict
    }

    fn cancel_until(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let lim = self.trail_lim[level as usize];
        if let Some(p) = self.propagator.as_mut() {
            let end = self.prop_head.min(self.trail.len());
            if lim < end {
                let vars: Vec<Var> = self.trail[lim..end].iter().map(|l| l.var()).collect();
                p.notify_backtrack(&vars);
            }
        }
        for i in (lim..self.trail.len()).rev() {
            let l = self.trail[i];
            let v = l.var().index();
            self.saved_phase[v] = l.is_positive();
            self.assigns[v] = None;
            self.reason[v] = None;
            self.heap.insert(v as u32, &self.activity);
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(level as usize);
        self.qhead = lim;
        self.prop_head = self.prop_head.min(lim);
    }

    fn bump_var(&mut self, v: Var) {
        let a = &mut self.activity[v.index()];
        *a += self.var_inc;
        if *a > 1e100 {
            for x in self.activity.iter_mut() {
                *x *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.bumped(v.0, &self.activity);
    }

    fn bump_clause(&mut self, c: CRef) {
        let clause = &mut self.clauses[c as usize];
        if clause.kind != ClauseKind::Learnt {
            return;
        }
        clause.activity += self.cla_inc;
        if clause.activity > 1e20 {
            for cl in self.clauses.iter_mut() {
                cl.activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    /// First-UIP learning. Returns the learnt clause (asserting literal first)
    /// and the backjump level.
    fn analyze(&mut self, confl: CRef) -> (Vec<Lit>, u32) {
        let dl = self.decision_level();
        let mut learnt = vec![Lit(0)];
        let mut open = 0usize;
        let mut p: Option<Lit> = None;
        let mut idx = self.trail.len();
        let mut cref = confl;
        let mut to_clear = Vec::new();
        loop {
            self.bump_clause(cref);
            let skip = usize::from(p.is_some());
            let n = self.clauses[cref as usize].lits.len();
            for k in skip..n {
                let q = self.clauses[cref as usize].lits[k];
                let v = q.var().index();
                if !self.seen[v] && self.level[v] > 0 {
                    self.bump_var(q.var());
                    self.seen[v] = true;
                    to_clear.push(v);
                    if self.level[v] == dl {
                        open += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[self.trail[idx].var().index()] {
                    break;
                }
            }
            let pl = self.trail[idx];
            p = Some(pl);
            self.seen[pl.var().index()] = false;
            open -= 1;
            if open == 0 {
                break;
            }
            cref = self.reason[pl.var().index()].expect("implied literal has a reason");
        }
        learnt[0] = !p.unwrap();

        // drop literals implied by the rest of the clause
        for &l in &learnt[1..] {
            self.seen[l.var().index()] = true;
        }
        let mut kept = vec![learnt[0]];
        for &l in &learnt[1..] {
            let redundant = match self.reason[l.var().index()] {
                None => false,
                Some(r) => self.clauses[r as usize].lits[1..].iter().all(|q| {
                    self.seen[q.var().index()] || self.level[q.var().index()] == 0
                }),
            };
            if !redundant {
                kept.push(l);
            }
        }
        for &l in &learnt {
            self.seen[l.var().index()] = false;
        }
        for v in to_clear {
            self.seen[v] = false;
        }

        let mut bt = 0;
        if kept.len() > 1 {
            let mut best = 1;
            for k in 2..kept.len() {
                if self.level[kept[k].var().index()] > self.level[kept[best].var().index()] {
                    best = k;
                }
            }
            kept.swap(1, best);
            bt = self.level[kept[1].var().index()];
        }
        (kept, bt)
    }

    /// Assumptions responsible for `p` being false. `p` is the failed
    /// assumption.
    fn analyze_final(&mut self, p: Lit) -> Vec<Lit> {
        let mut core = vec![p];
        if self.decision_level() == 0 {
            return core;
        }
        self.seen[p.var().index()] = true;
        let start = self.trail_lim[0];
        for i in (start..self.trail.len()).rev() {
            let l = self.trail[i];
            let v = l.var().index();
            if !self.seen[v] {
                continue;
            }
            match self.reason[v] {
                None => {
                    if l != !p {
                        core.push(l);
                    }
                }
                Some(r) => {
                    for k in 1..self.clauses[r as usize].lits.len() {
                        let q = self.clauses[r as usize].lits[k];
                        if self.level[q.var().index()] > 0 {
                            self.seen[q.var().index()] = true;
                        }
                    }
                }
            }
            self.seen[v] = false;
        }
        self.seen[p.var().index()] = false;
        core
    }

    /// Learns from a conflict and backjumps. `false` means UNSAT.
    fn handle_conflict(&mut self, confl: CRef) -> bool {
        self.stats.conflicts += 1;
        if self.decision_level() == 0 {
            self.ok = false;
            return false;
        }
        let (learnt, bt) = self.analyze(confl);
        self.cancel_until(bt);
        if learnt.len() == 1 {
            self.enqueue(learnt[0], None);
        } else {
            let asserting = learnt[0];
            let cref = self.attach(learnt, ClauseKind::Learnt);
            self.bump_clause(cref);
            self.stats.learnt_clauses += 1;
            self.enqueue(asserting, Some(cref));
        }
        self.var_inc /= VAR_DECAY;
        self.cla_inc /= CLAUSE_DECAY;
        true
    }

    /// Adds a clause coming from the propagator in the middle of search.
    fn inject(&mut self, lits: Vec<Lit>) -> Injection {
        self.stats.injected_clauses += 1;
        if let Some(max) = lits.iter().map(|l| l.var().index()).max() {
            self.ensure_vars(max + 1);
        }
        let Some(mut c) = Self::normalize(&lits) else {
            return Injection::Added;
        };
        if c.is_empty() {
            self.ok = false;
            return Injection::Unsat;
        }
        if c.len() == 1 {
            let l = c[0];
            if self.value(l) == Some(true) && self.level[l.var().index()] == 0 {
                return Injection::Added;
            }
            self.cancel_until(0);
            return match self.value(l) {
                Some(false) => {
                    self.ok = false;
                    Injection::Unsat
                }
                Some(true) => Injection::Added,
                None => {
                    self.enqueue(l, None);
                    Injection::Added
                }
            };
        }

        // true literals first, then unassigned, then false by decreasing level
        let key = |s: &Self, l: Lit| -> (u8, i64) {
            match s.value(l) {
                Some(true) => (0, i64::from(s.level[l.var().index()])),
                None => (1, 0),
                Some(false) => (2, -i64::from(s.level[l.var().index()])),
            }
        };
        c.sort_by_key(|&l| key(self, l));
        let non_false = c.iter().filter(|&&l| self.value(l) != Some(false)).count();
        if non_false >= 2 || self.value(c[0]) == Some(true) {
            self.attach(c, ClauseKind::Injected);
            return Injection::Added;
        }
        if non_false == 1 {
            let unit = c[0];
            let cref = self.attach(c, ClauseKind::Injected);
            self.enqueue(unit, Some(cref));
            return Injection::Added;
        }
        let l1 = self.level[c[0].var().index()];
        let l2 = self.level[c[1].var().index()];
        if l1 == 0 {
            self.ok = false;
            return Injection::Unsat;
        }
        if l2 < l1 {
            self.cancel_until(l2);
            let unit = c[0];
            let cref = self.attach(c, ClauseKind::Injected);
            self.enqueue(unit, Some(cref));
            Injection::Added
        } else {
            self.cancel_until(l1);
            Injection::Conflict(self.attach(c, ClauseKind::Injected))
        }
    }

    fn reduce_db(&mut self) {
        let mut learnts: Vec<CRef> = (0..self.clauses.len() as CRef)
            .filter(|&c| {
                let cl = &self.clauses[c as usize];
                cl.kind == ClauseKind::Learnt && !cl.deleted && cl.lits.len() > 2
            })
            .collect();
        learnts.sort_by(|&a, &b| {
            self.clauses[a as usize]
                .activity
                .total_cmp(&self.clauses[b as usize].activity)
        });
        let target = learnts.len() / 2;
        let mut removed = 0;
        for c in learnts {
            if removed >= target {
                break;
            }
            let first = self.clauses[c as usize].lits[0];
            let locked = self.reason[first.var().index()] == Some(c)
                && self.value(first) == Some(true);
            if !locked {
                self.clauses[c as usize].deleted = true;
                self.num_learnts -= 1;
                removed += 1;
            }
        }
        self.stats.deleted_clauses += removed as u64;
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop(&self.activity) {
            let vi = v as usize;
            if self.assigns[vi].is_none() {
                let positive = self.preferred[vi].unwrap_or(self.saved_phase[vi]);
                return Some(Lit::new(Var(v), positive));
            }
        }
        None
    }

    /// Hands newly assigned literals to the propagator and asks it for a clause.
    fn run_propagator(&mut self) -> Option<Vec<Lit>> {
        let p = self.propagator.as_mut()?;
        if self.prop_head < self.trail.len() {
            p.notify_assigned(&self.trail[self.prop_head..]);
            self.prop_head = self.trail.len();
        }
        p.propagate()
    }

    pub fn solve(&mut self) -> SolveResult {
        self.solve_with(&[])
    }

    /// Solves under `assumptions`, which are decided first, in order.
    pub fn solve_with(&mut self, assumptions: &[Lit]) -> SolveResult {
        self.stats.solves += 1;
        if let Some(max) = assumptions.iter().map(|l| l.var().index()).max() {
            self.ensure_vars(max + 1);
        }
        if !self.ok {
            return SolveResult::Unsat(Vec::new());
        }
        if self.max_learnts == 0.0 {
            self.max_learnts = (self.clauses.len() as f64 / 3.0).max(2000.0);
        }
        let mut restart_limit = RESTART_FIRST;
        let mut conflicts_since_restart = 0u64;
        let result = loop {
            if let Some(confl) = self.propagate_bcp() {
                conflicts_since_restart += 1;
                if !self.handle_conflict(confl) {
                    break SolveResult::Unsat(Vec::new());
                }
                continue;
            }
            if let Some(clause) = self.run_propagator() {
                match self.inject(clause) {
                    Injection::Added => {}
                    Injection::Unsat => break SolveResult::Unsat(Vec::new()),
                    Injection::Conflict(c) => {
                        conflicts_since_restart += 1;
                        if !self.handle_conflict(c) {
                            break SolveResult::Unsat(Vec::new());
                        }
                    }
                }
                continue;
            }
            if conflicts_since_restart as f64 >= restart_limit {
                self.stats.restarts += 1;
                conflicts_since_restart = 0;
                restart_limit *= RESTART_FACTOR;
                self.cancel_until(0);
                continue;
            }
            if self.num_learnts as f64 >= self.max_learnts + self.trail.len() as f64 {
                self.reduce_db();
                self.max_learnts *= 1.1;
            }

            let mut next = None;
            while (self.decision_level() as usize) < assumptions.len() {
                let a = assumptions[self.decision_level() as usize];
                match self.value(a) {
                    Some(true) => self.trail_lim.push(self.trail.len()),
                    Some(false) => {
                        let core = self.analyze_final(a);
                        self.cancel_until(0);
                        return SolveResult::Unsat(core);
                    }
                    None => {
                        next = Some(a);
                        break;
                    }
                }
            }
            let next = match next {
                Some(a) => a,
                None => match self.pick_branch() {
                    Some(l) => l,
                    None => {
                        let values = self.assigns.iter().map(|a| a.unwrap()).collect();
                        break SolveResult::Sat(Model { values });
                    }
                },
            };
            self.decide(next);
        };
        self.cancel_until(0);
        result
    }
}

/// Parses DIMACS CNF. Returns the declared variable count and the clauses.
pub fn parse_dimacs(text: &str) -> Result<(usize, Vec<Vec<Lit>>), String> {
    let mut num_vars = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[1] != "cnf" {
                return Err(format!("line {}: bad header", lineno + 1));
            }
            num_vars = Some(
                parts[2]
                    .parse::<usize>()
                    .map_err(|e| format!("line {}: {e}", lineno + 1))?,
            );
            continue;
        }
        for tok in line.split_whitespace() {
            let x: i64 = tok
                .parse()
                .map_err(|e| format!("line {}: {e}", lineno + 1))?;
            if x == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(Lit::from_dimacs(x));
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    let n = num_vars.ok_or("missing p cnf header")?;
    Ok((n, clauses))
}

pub fn write_dimacs(num_vars: usize, clauses: &[Vec<Lit>]) -> String {
    let mut out = format!("p cnf {} {}\n", num_vars, clauses.len());
    for c in clauses {
        for l in c {
            out.push_str(&l.to_dimacs().to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}
