//! Short-cycle search and uncovered-cycle enumeration.
//!
//! A cycle is uncovered exactly when its vertex set induces no arc besides the
//! cycle's own arcs (a chord always closes a cycle on a strictly smaller vertex
//! set, and a smaller cycle inside the set needs an arc that is not on the big
//! one). The search therefore only grows chordless paths, rooted at the
//! smallest vertex of the cycle, which yields every uncovered cycle exactly once.

use crate::digraph::{DiGraph, Node};
use std::collections::{HashMap, HashSet, VecDeque};

pub const DEFAULT_MAX_CYCLE_LEN: usize = 4;
pub const DEFAULT_MAX_CYCLES: usize = 25_000;
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// A directed cycle, rotated so that its smallest vertex comes first. The arc
/// from the last vertex back to the first is implied.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    vertices: Vec<Node>,
}

impl Cycle {
    pub fn new(mut vertices: Vec<Node>) -> Self {
        assert!(!vertices.is_empty(), "a cycle needs at least one vertex");
        let min_pos = (0..vertices.len()).min_by_key(|&i| vertices[i]).unwrap();
        vertices.rotate_left(min_pos);
        Cycle { vertices }
    }

    pub fn vertices(&self) -> &[Node] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn sorted_set(&self) -> Vec<Node> {
        let mut s = self.vertices.clone();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Consecutive arcs, closing arc included.
    pub fn arcs(&self) -> impl Iterator<Item = (Node, Node)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn contains(&self, v: Node) -> bool {
        self.vertices.contains(&v)
    }

    pub fn is_valid_in(&self, g: &DiGraph) -> bool {
        self.arcs().all(|(u, v)| g.has_arc(u, v))
    }
}

#[derive(Clone, Debug, Default)]
pub struct CycleSet {
    pub cycles: Vec<Cycle>,
    /// No uncovered cycle of the graph is missing from `cycles`.
    pub complete: bool,
}

impl CycleSet {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Sorted vertex sets, the list itself sorted.
    pub fn vertex_sets(&self) -> Vec<Vec<Node>> {
        let mut sets: Vec<_> = self.cycles.iter().map(Cycle::sorted_set).collect();
        sets.sort();
        sets
    }
}

#[derive(Default)]
struct SearchOutcome {
    cycles: Vec<Cycle>,
    cutoff: bool,
    capped: bool,
    exhausted: bool,
}

struct Search<'a> {
    g: &'a DiGraph,
    max_len: usize,
    max_count: usize,
    budget: &'a mut u64,
    on_path: Vec<bool>,
    path: Vec<Node>,
    out: SearchOutcome,
}

impl Search<'_> {
    fn stopped(&self) -> bool {
        self.out.capped || self.out.exhausted
    }

    fn record(&mut self, cycle: Vec<Node>) {
        if self.out.cycles.len() == self.max_count {
            self.out.capped = true;
            return;
        }
        self.out.cycles.push(Cycle::new(cycle));
    }

    /// `w` may follow the current path without creating a chord.
    fn extendable(&self, w: Node) -> bool {
        let g = self.g;
        let s = self.path[0];
        let k = self.path.len();
        if w <= s || self.on_path[w as usize] || g.has_loop(w) {
            return false;
        }
        if k >= 2 {
            if g.has_arc(s, w) || g.has_arc(w, self.path[k - 1]) {
                return false;
            }
            for &p in &self.path[1..k - 1] {
                if g.has_arc(p, w) || g.has_arc(w, p) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self) {
        for s in self.g.vertices() {
            if self.stopped() {
                break;
            }
            if self.g.has_loop(s) {
                self.record(vec![s]);
                continue;
            }
            self.path.push(s);
            self.on_path[s as usize] = true;
            self.extend();
            self.on_path[s as usize] = false;
            self.path.pop();
        }
    }

    fn extend(&mut self) {
        let g = self.g;
        let s = self.path[0];
        let last = *self.path.last().unwrap();
        for &w in g.succ(last) {
            if self.stopped() {
                return;
            }
            if *self.budget == 0 {
                self.out.exhausted = true;
                return;
            }
            *self.budget -= 1;
            if !self.extendable(w) {
                continue;
            }
            if g.has_arc(w, s) {
                let mut cyc = self.path.clone();
                cyc.push(w);
                self.record(cyc);
            } else if self.path.len() + 1 < self.max_len {
                self.path.push(w);
                self.on_path[w as usize] = true;
                self.extend();
                self.on_path[w as usize] = false;
                self.path.pop();
            } else if !self.out.cutoff && self.closable_after(w) {
                self.out.cutoff = true;
            }
        }
    }

    /// Relaxed test whether the chordless path `path + w` could still be closed
    /// into an uncovered cycle. Chords among the continuation are ignored, so a
    /// `false` answer proves no uncovered cycle extends this path.
    fn closable_after(&self, w: Node) -> bool {
        let g = self.g;
        let s = self.path[0];
        let interior = &self.path[1..];
        let allowed = |x: Node| {
            x > s
                && x != w
                && !self.on_path[x as usize]
                && !g.has_loop(x)
                && !g.has_arc(s, x)
                && interior.iter().all(|&p| !g.has_arc(p, x) && !g.has_arc(x, p))
        };
        let mut seen: HashSet<Node> = HashSet::new();
        let mut queue = VecDeque::new();
        for &q in g.succ(w) {
            if allowed(q) && !g.has_arc(q, w) {
                seen.insert(q);
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            if g.has_arc(q, s) {
                return true;
            }
            for &x in g.succ(q) {
                if !seen.contains(&x) && allowed(x) && !g.has_arc(w, x) && !g.has_arc(x, w) {
                    seen.insert(x);
                    queue.push_back(x);
                }
            }
        }
        false
    }
}

fn search(g: &DiGraph, max_len: usize, max_count: usize, budget: &mut u64) -> SearchOutcome {
    let mut s = Search {
        g,
        max_len: max_len.max(1),
        max_count,
        budget,
        on_path: vec![false; g.capacity()],
        path: Vec::new(),
        out: SearchOutcome::default(),
    };
    s.run();
    s.out
}

/// Up to `max_count` uncovered cycles with at most `max_len` vertices.
///
/// `complete` is true iff the search hit neither the count cap nor a length
/// cutoff on a path that could still have closed into an uncovered cycle, i.e.
/// the result is exactly the set of all uncovered cycles of `g`.
pub fn find_short_cycles(g: &DiGraph, max_len: usize, max_count: usize) -> CycleSet {
    let mut budget = u64::MAX;
    find_short_cycles_budgeted(g, max_len, max_count, &mut budget)
}

pub fn find_short_cycles_budgeted(
    g: &DiGraph,
    max_len: usize,
    max_count: usize,
    budget: &mut u64,
) -> CycleSet {
    let out = search(g, max_len, max_count, budget);
    let complete = !(out.cutoff || out.capped || out.exhausted);
    CycleSet {
        cycles: filter_covered(out.cycles),
        complete,
    }
}

/// All uncovered cycles, raising the length bound one step at a time from
/// [`DEFAULT_MAX_CYCLE_LEN`].
pub fn enumerate_all_uncovered(g: &DiGraph, node_budget: u64) -> CycleSet {
    enumerate_all_uncovered_from(g, DEFAULT_MAX_CYCLE_LEN, node_budget)
}

/// Gives up (returning `complete = false`) once a round finds more new cycles
/// than the round before it, or after `node_budget` search steps in total.
pub fn enumerate_all_uncovered_from(g: &DiGraph, start_len: usize, node_budget: u64) -> CycleSet {
    let mut budget = node_budget;
    let mut len = start_len.max(2);
    let mut prev_total = 0usize;
    let mut prev_new: Option<usize> = None;
    loop {
        let out = search(g, len, usize::MAX, &mut budget);
        let total = out.cycles.len();
        if out.exhausted {
            return CycleSet {
                cycles: filter_covered(out.cycles),
                complete: false,
            };
        }
        if !out.cutoff {
            return CycleSet {
                cycles: filter_covered(out.cycles),
                complete: true,
            };
        }
        let new = total - prev_total;
        if prev_new.is_some_and(|p| new > p) {
            log::debug!("cycle enumeration stopped at length {len}: {new} new cycles");
            return CycleSet {
                cycles: filter_covered(out.cycles),
                complete: false,
            };
        }
        prev_new = Some(new);
        prev_total = total;
        len += 1;
    }
}

/// Drops duplicate vertex sets and every cycle whose vertex set strictly
/// contains another's. Keeps the first representative in input order.
pub fn filter_covered(cycles: Vec<Cycle>) -> Vec<Cycle> {
    let mut sets: Vec<Vec<Node>> = cycles.iter().map(Cycle::sorted_set).collect();
    let mut keep = vec![true; cycles.len()];
    let mut first_of: HashMap<&[Node], usize> = HashMap::new();
    for (i, s) in sets.iter().enumerate() {
        if first_of.contains_key(s.as_slice()) {
            keep[i] = false;
        } else {
            first_of.insert(s, i);
        }
    }
    drop(first_of);

    let mut by_vertex: HashMap<Node, Vec<usize>> = HashMap::new();
    for (i, s) in sets.iter().enumerate() {
        if keep[i] {
            for &v in s {
                by_vertex.entry(v).or_default().push(i);
            }
        }
    }
    let mut hits: HashMap<usize, usize> = HashMap::new();
    let mut covered = vec![false; cycles.len()];
    for (i, s) in sets.iter().enumerate() {
        if !keep[i] {
            continue;
        }
        hits.clear();
        for v in s {
            for &j in &by_vertex[v] {
                if j != i && sets[j].len() < s.len() {
                    *hits.entry(j).or_default() += 1;
                }
            }
        }
        if hits.iter().any(|(&j, &c)| c == sets[j].len()) {
            covered[i] = true;
        }
    }
    sets.clear();
    cycles
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| keep[i] && !covered[i])
        .map(|(_, c)| c)
        .collect()
}
