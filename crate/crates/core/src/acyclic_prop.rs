//! Incremental DAG over the vertices kept in the graph, used as a SAT
//! propagator.
//!
//! Variable `i` stands for vertex `i`; `x_i = false` means the vertex stays in
//! the graph and is therefore *present* here. Each present vertex carries an
//! order: 0 without present predecessors, otherwise one more than the largest
//! predecessor order. Inserting a vertex pushes order increases forward;
//! arriving back at the inserted vertex means a cycle just closed.

use crate::digraph::{DiGraph, Node};
use crate::satcore::{Lit, Propagator, Var};
use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

#[derive(Clone, Debug, Default)]
pub struct DagStats {
    pub inserts: u64,
    pub removals: u64,
    pub order_changes: u64,
    pub arcs_scanned: u64,
    pub cycles: u64,
}

#[derive(Clone, Debug)]
pub struct IncrementalDag {
    succ: Vec<Vec<Node>>,
    pred: Vec<Vec<Node>>,
    present: Vec<bool>,
    order: Vec<u32>,
    queued: Vec<bool>,
    leaving: Vec<bool>,
    inserts: VecDeque<Node>,
    removals: Vec<Node>,
    stats: DagStats,
}

impl IncrementalDag {
    /// Structure over vertices `0..g.capacity()`, all absent.
    pub fn new(g: &DiGraph) -> Self {
        let n = g.capacity();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for v in g.vertices() {
            succ[v as usize] = g.succ(v).to_vec();
            pred[v as usize] = g.pred(v).to_vec();
        }
        IncrementalDag {
            succ,
            pred,
            present: vec![false; n],
            order: vec![0; n],
            queued: vec![false; n],
            leaving: vec![false; n],
            inserts: VecDeque::new(),
            removals: Vec::new(),
            stats: DagStats::default(),
        }
    }

    pub fn len(&self) -> usize {
        self.present.len()
    }

    pub fn is_empty(&self) -> bool {
        self.present.is_empty()
    }

    pub fn is_present(&self, v: Node) -> bool {
        self.present[v as usize]
    }

    pub fn order(&self, v: Node) -> u32 {
        self.order[v as usize]
    }

    pub fn present_vertices(&self) -> impl Iterator<Item = Node> + '_ {
        (0..self.len() as Node).filter(|&v| self.present[v as usize])
    }

    pub fn has_pending(&self) -> bool {
        self.leaving.iter().any(|&l| l) || self.queued.iter().any(|&q| q)
    }

    pub fn stats(&self) -> &DagStats {
        &self.stats
    }

    /// Queues `v` to become present.
    pub fn queue_insert(&mut self, v: Node) {
        let i = v as usize;
        if self.present[i] {
            self.leaving[i] = false;
            return;
        }
        if self.queued[i] {
            return;
        }
        self.queued[i] = true;
        self.inserts.push_back(v);
    }

    /// Queues `v` to leave; cancels a pending insertion.
    pub fn queue_remove(&mut self, v: Node) {
        let i = v as usize;
        self.queued[i] = false;
        if self.present[i] && !self.leaving[i] {
            self.leaving[i] = true;
            self.removals.push(v);
        }
    }

    /// Translates a trail delta: `¬v` inserts, `v` removes.
    pub fn on_assign(&mut self, lits: &[Lit]) {
        for l in lits {
            let v = l.var().0;
            if (v as usize) >= self.len() {
                continue;
            }
            if l.is_positive() {
                self.queue_remove(v);
            } else {
                self.queue_insert(v);
            }
        }
    }

    pub fn on_backtrack(&mut self, vars: &[Var]) {
        for x in vars {
            if x.index() < self.len() {
                self.queue_remove(x.0);
            }
        }
    }

    /// Applies pending removals, then pending insertions one at a time. The
    /// first insertion that would close a cycle is undone, stays queued, and
    /// its cycle is returned.
    pub fn flush_and_check(&mut self) -> Option<Vec<Node>> {
        self.apply_removals();
        while let Some(v) = self.inserts.pop_front() {
            if !self.queued[v as usize] {
                continue;
            }
            self.queued[v as usize] = false;
            if let Some(cycle) = self.insert(v) {
                self.queued[v as usize] = true;
                self.inserts.push_front(v);
                self.stats.cycles += 1;
                return Some(cycle);
            }
        }
        None
    }

    fn apply_removals(&mut self) {
        let mut heap = BinaryHeap::new();
        for v in std::mem::take(&mut self.removals) {
            let i = v as usize;
            if !self.leaving[i] {
                continue;
            }
            self.leaving[i] = false;
            self.present[i] = false;
            self.stats.removals += 1;
            for &w in &self.succ[i] {
                if self.present[w as usize] {
                    heap.push(Reverse((self.order[w as usize], w)));
                }
            }
        }
        // ascending old order: predecessors settle before their successors
        while let Some(Reverse((old, w))) = heap.pop() {
            let i = w as usize;
            if !self.present[i] || self.order[i] != old {
                continue;
            }
            let fresh = self.computed_order(w);
            if fresh == old {
                continue;
            }
            self.order[i] = fresh;
            self.stats.order_changes += 1;
            for &x in &self.succ[i] {
                if self.present[x as usize] {
                    heap.push(Reverse((self.order[x as usize], x)));
                }
            }
        }
    }

    fn computed_order(&mut self, v: Node) -> u32 {
        let mut best = None;
        for &p in &self.pred[v as usize] {
            self.stats.arcs_scanned += 1;
            if p != v && self.present[p as usize] {
                best = best.max(Some(self.order[p as usize]));
            }
        }
        best.map_or(0, |o| o + 1)
    }

    fn insert(&mut self, v: Node) -> Option<Vec<Node>> {
        self.stats.inserts += 1;
        let vi = v as usize;
        let mut log: Vec<(Node, u32)> = vec![(v, self.order[vi])];
        self.order[vi] = self.computed_order(v);
        self.present[vi] = true;

        // depth-first, so the stack is always a path starting at v
        let mut stack: Vec<(Node, usize)> = vec![(v, 0)];
        while let Some(top) = stack.last_mut() {
            let (u, k) = *top;
            let succ = &self.succ[u as usize];
            if k == succ.len() {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let w = succ[k];
            self.stats.arcs_scanned += 1;
            let wi = w as usize;
            if !self.present[wi] {
                continue;
            }
            let want = self.order[u as usize] + 1;
            if want <= self.order[wi] {
                continue;
            }
            if w == v {
                let cycle = stack.iter().map(|&(x, _)| x).collect();
                for &(x, old) in log.iter().rev() {
                    self.order[x as usize] = old;
                }
                self.present[vi] = false;
                return Some(cycle);
            }
            log.push((w, self.order[wi]));
            self.order[wi] = want;
            self.stats.order_changes += 1;
            stack.push((w, 0));
        }
        None
    }

    /// Orders recomputed from scratch on the present subgraph, or `None` if
    /// it has a cycle.
    pub fn recomputed_orders(&self) -> Option<Vec<u32>> {
        let n = self.len();
        let mut indeg = vec![0usize; n];
        for v in self.present_vertices() {
            indeg[v as usize] = self.pred[v as usize]
                .iter()
                .filter(|&&p| self.present[p as usize])
                .count();
        }
        let mut order = vec![0u32; n];
        let mut stack: Vec<Node> = self
            .present_vertices()
            .filter(|&v| indeg[v as usize] == 0)
            .collect();
        let mut done = 0;
        while let Some(u) = stack.pop() {
            done += 1;
            for &w in &self.succ[u as usize] {
                let wi = w as usize;
                if self.present[wi] {
                    order[wi] = order[wi].max(order[u as usize] + 1);
                    indeg[wi] -= 1;
                    if indeg[wi] == 0 {
                        stack.push(w);
                    }
                }
            }
        }
        (done == self.present_vertices().count()).then_some(order)
    }

    /// Whether the stored orders satisfy the order invariant exactly.
    pub fn orders_consistent(&self) -> bool {
        match self.recomputed_orders() {
            None => false,
            Some(o) => self.present_vertices().all(|v| o[v as usize] == self.order(v)),
        }
    }
}

/// [`IncrementalDag`] plugged into the SAT solver. Injected clauses are the
/// positive literals of a cycle's vertices.
#[derive(Clone, Debug)]
pub struct CyclePropagator {
    dag: IncrementalDag,
}

impl CyclePropagator {
    pub fn new(g: &DiGraph) -> Self {
        CyclePropagator {
            dag: IncrementalDag::new(g),
        }
    }

    pub fn dag(&self) -> &IncrementalDag {
        &self.dag
    }
}

impl Propagator for CyclePropagator {
    fn notify_assigned(&mut self, lits: &[Lit]) {
        self.dag.on_assign(lits);
    }

    fn notify_backtrack(&mut self, vars: &[Var]) {
        self.dag.on_backtrack(vars);
    }

    fn propagate(&mut self) -> Option<Vec<Lit>> {
        self.dag
            .flush_and_check()
            .map(|c| c.into_iter().map(|v| Var(v).pos()).collect())
    }
}
