//! Mutable directed graph with sorted adjacency lists.
//!
//! Vertex ids are dense `u32` indices fixed at construction. Removing a vertex
//! marks it dead; ids are never reused within one graph.

use crate::error::{Error, Result};

pub type Node = u32;

#[derive(Clone, Debug, Default)]
pub struct DiGraph {
    alive: Vec<bool>,
    succ: Vec<Vec<Node>>,
    pred: Vec<Vec<Node>>,
    num_alive: usize,
    arc_count: usize,
    // bumped whenever an arc is added (components may merge)
    add_epoch: u64,
    // bumped on every structural change
    mut_epoch: u64,
}

impl PartialEq for DiGraph {
    fn eq(&self, other: &Self) -> bool {
        self.alive == other.alive && self.succ == other.succ
    }
}

impl Eq for DiGraph {}

fn sorted_insert(list: &mut Vec<Node>, x: Node) -> bool {
    match list.binary_search(&x) {
        Ok(_) => false,
        Err(pos) => {
            list.insert(pos, x);
            true
        }
    }
}

fn sorted_remove(list: &mut Vec<Node>, x: Node) -> bool {
    match list.binary_search(&x) {
        Ok(pos) => {
            list.remove(pos);
            true
        }
        Err(_) => false,
    }
}

/// Intersection of two sorted slices.
pub fn intersect_sorted(a: &[Node], b: &[Node]) -> Vec<Node> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Union of two sorted slices.
pub fn union_sorted(a: &[Node], b: &[Node]) -> Vec<Node> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            out.push(b[j]);
            j += 1;
        } else {
            out.push(a[i]);
            i += 1;
            j += 1;
        }
    }
    out
}

/// `a ⊆ b ∪ extra` for sorted `a`, `b`.
pub fn subset_sorted(a: &[Node], b: &[Node], extra: Option<Node>) -> bool {
    let mut j = 0;
    for &x in a {
        if Some(x) == extra {
            continue;
        }
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
    }
    true
}

impl DiGraph {
    /// Graph with vertices `0..n` and no arcs.
    pub fn new(n: usize) -> Self {
        DiGraph {
            alive: vec![true; n],
            succ: vec![Vec::new(); n],
            pred: vec![Vec::new(); n],
            num_alive: n,
            ..Default::default()
        }
    }

    pub fn from_arcs(n: usize, arcs: &[(Node, Node)]) -> Result<Self> {
        let mut g = DiGraph::new(n);
        for &(u, v) in arcs {
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    /// Upper bound on vertex ids (dead ids included).
    pub fn capacity(&self) -> usize {
        self.alive.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.num_alive
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn is_empty(&self) -> bool {
        self.num_alive == 0
    }

    pub fn is_alive(&self, v: Node) -> bool {
        self.alive.get(v as usize).copied().unwrap_or(false)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Node> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| i as Node)
    }

    pub fn arcs(&self) -> impl Iterator<Item = (Node, Node)> + '_ {
        self.vertices()
            .flat_map(move |u| self.succ[u as usize].iter().map(move |&v| (u, v)))
    }

    pub fn succ(&self, v: Node) -> &[Node] {
        &self.succ[v as usize]
    }

    pub fn pred(&self, v: Node) -> &[Node] {
        &self.pred[v as usize]
    }

    pub fn out_degree(&self, v: Node) -> usize {
        self.succ[v as usize].len()
    }

    pub fn in_degree(&self, v: Node) -> usize {
        self.pred[v as usize].len()
    }

    pub fn has_arc(&self, u: Node, v: Node) -> bool {
        self.is_alive(u) && self.succ[u as usize].binary_search(&v).is_ok()
    }

    pub fn has_loop(&self, v: Node) -> bool {
        self.has_arc(v, v)
    }

    pub fn is_bi_edge(&self, u: Node, v: Node) -> bool {
        self.has_arc(u, v) && self.has_arc(v, u)
    }

    /// `N_bi(v)`: vertices joined to `v` in both directions.
    pub fn bi_neighbors(&self, v: Node) -> Vec<Node> {
        intersect_sorted(self.succ(v), self.pred(v))
    }

    /// `N(v) = N_pre(v) ∪ N_succ(v)`, excluding `v` itself.
    pub fn neighbors(&self, v: Node) -> Vec<Node> {
        let mut n = union_sorted(self.succ(v), self.pred(v));
        if let Ok(pos) = n.binary_search(&v) {
            n.remove(pos);
        }
        n
    }

    /// True when every arc touching `v` is one half of a bi-edge.
    pub fn all_bi(&self, v: Node) -> bool {
        self.succ(v) == self.pred(v)
    }

    pub(crate) fn add_epoch(&self) -> u64 {
        self.add_epoch
    }

    pub(crate) fn mut_epoch(&self) -> u64 {
        self.mut_epoch
    }

    /// Adds `(u, v)`. Returns `Ok(false)` if the arc already existed.
    pub fn add_arc(&mut self, u: Node, v: Node) -> Result<bool> {
        if !self.is_alive(u) {
            return Err(Error::UnknownVertex(u));
        }
        if !self.is_alive(v) {
            return Err(Error::UnknownVertex(v));
        }
        if !sorted_insert(&mut self.succ[u as usize], v) {
            return Ok(false);
        }
        sorted_insert(&mut self.pred[v as usize], u);
        self.arc_count += 1;
        self.add_epoch += 1;
        self.mut_epoch += 1;
        Ok(true)
    }

    /// Removes `(u, v)`; returns whether it was present.
    pub fn remove_arc(&mut self, u: Node, v: Node) -> bool {
        if !self.is_alive(u) || !sorted_remove(&mut self.succ[u as usize], v) {
            return false;
        }
        sorted_remove(&mut self.pred[v as usize], u);
        self.arc_count -= 1;
        self.mut_epoch += 1;
        if self.has_arc(v, u) {
            // the reverse arc stops being half of a bi-edge
            self.add_epoch += 1;
        }
        true
    }

    /// Removes `v` and every incident arc; returns whether `v` was alive.
    pub fn remove_vertex(&mut self, v: Node) -> bool {
        if !self.is_alive(v) {
            return false;
        }
        let vi = v as usize;
        let succ = std::mem::take(&mut self.succ[vi]);
        let pred = std::mem::take(&mut self.pred[vi]);
        for &s in &succ {
            if s != v {
                sorted_remove(&mut self.pred[s as usize], v);
            }
        }
        for &p in &pred {
            if p != v {
                sorted_remove(&mut self.succ[p as usize], v);
            }
        }
        // a loop shows up in both lists but is a single arc
        let has_loop = succ.binary_search(&v).is_ok();
        self.arc_count -= succ.len() + pred.len() - usize::from(has_loop);
        self.alive[vi] = false;
        self.num_alive -= 1;
        self.mut_epoch += 1;
        true
    }

    /// `E(Π(G))` as unordered pairs `(u, v)` with `u < v`.
    pub fn bi_projection(&self) -> Vec<(Node, Node)> {
        self.arcs()
            .filter(|&(u, v)| u < v && self.has_arc(v, u))
            .collect()
    }

    /// Subgraph induced by the vertices for which `keep` holds; ids unchanged.
    pub fn induced(&self, keep: impl Fn(Node) -> bool) -> DiGraph {
        let mut g = self.clone();
        let drop: Vec<Node> = self.vertices().filter(|&v| !keep(v)).collect();
        for v in drop {
            g.remove_vertex(v);
        }
        g
    }

    /// Renumbers alive vertices to `0..k`. Returns the new graph and the map
    /// from new ids to old ids.
    pub fn compact(&self) -> (DiGraph, Vec<Node>) {
        let old: Vec<Node> = self.vertices().collect();
        let mut new_id = vec![Node::MAX; self.capacity()];
        for (i, &v) in old.iter().enumerate() {
            new_id[v as usize] = i as Node;
        }
        let mut g = DiGraph::new(old.len());
        for (u, v) in self.arcs() {
            g.add_arc(new_id[u as usize], new_id[v as usize])
                .expect("compacted ids are alive");
        }
        (g, old)
    }

    /// Returns a directed cycle in the subgraph induced by alive vertices that
    /// satisfy `restrict` (all alive vertices when `None`), or `None` when that
    /// subgraph is acyclic. The cycle is listed without repeating its first
    /// vertex.
    pub fn find_cycle(&self, restrict: Option<&dyn Fn(Node) -> bool>) -> Option<Vec<Node>> {
        const WHITE: u8 = 0;
        const GRAY: u8 = 1;
        const BLACK: u8 = 2;
        let inside = |v: Node| self.is_alive(v) && restrict.map_or(true, |f| f(v));
        let mut color = vec![WHITE; self.capacity()];
        let mut stack: Vec<(Node, usize)> = Vec::new();
        for root in self.vertices() {
            if color[root as usize] != WHITE || !inside(root) {
                continue;
            }
            color[root as usize] = GRAY;
            stack.push((root, 0));
            while let Some(&mut (u, ref mut idx)) = stack.last_mut() {
                let succ = &self.succ[u as usize];
                if *idx < succ.len() {
                    let w = succ[*idx];
                    *idx += 1;
                    if !inside(w) {
                        continue;
                    }
                    match color[w as usize] {
                        WHITE => {
                            color[w as usize] = GRAY;
                            stack.push((w, 0));
                        }
                        GRAY => {
                            let start = stack.iter().position(|&(x, _)| x == w).unwrap();
                            return Some(stack[start..].iter().map(|&(x, _)| x).collect());
                        }
                        _ => {}
                    }
                } else {
                    color[u as usize] = BLACK;
                    stack.pop();
                }
            }
        }
        None
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle(None).is_none()
    }

    /// Strongly connected components of `G − E(Π(G))`.
    pub fn scc_par(&self) -> SccLabeling {
        let skip_bi = |u: Node, v: Node| self.has_arc(v, u);
        let label = tarjan(self, &skip_bi);
        SccLabeling {
            label,
            add_epoch: self.add_epoch,
            mut_epoch: self.mut_epoch,
        }
    }

    /// Strongly connected components of the graph itself.
    pub fn scc(&self) -> Vec<u32> {
        tarjan(self, &|_, _| false)
    }

    #[cfg(debug_assertions)]
    pub(crate) fn debug_check(&self) {
        let mut count = 0;
        for u in self.vertices() {
            for &v in self.succ(u) {
                debug_assert!(self.is_alive(v));
                debug_assert!(self.pred(v).binary_search(&u).is_ok());
                count += 1;
            }
            for &p in self.pred(u) {
                debug_assert!(self.succ(p).binary_search(&u).is_ok());
            }
        }
        debug_assert_eq!(count, self.arc_count);
    }

    #[cfg(not(debug_assertions))]
    pub(crate) fn debug_check(&self) {}
}

/// Iterative Tarjan. Dead vertices get label `u32::MAX`.
fn tarjan(g: &DiGraph, skip_arc: &dyn Fn(Node, Node) -> bool) -> Vec<u32> {
    const UNSET: u32 = u32::MAX;
    let n = g.capacity();
    let mut index = vec![UNSET; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut label = vec![UNSET; n];
    let mut stack: Vec<Node> = Vec::new();
    let mut call: Vec<(Node, usize)> = Vec::new();
    let mut next_index = 0u32;
    let mut next_label = 0u32;

    for root in g.vertices() {
        if index[root as usize] != UNSET {
            continue;
        }
        call.push((root, 0));
        index[root as usize] = next_index;
        low[root as usize] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root as usize] = true;

        while let Some(&mut (u, ref mut i)) = call.last_mut() {
            let succ = g.succ(u);
            if *i < succ.len() {
                let w = succ[*i];
                *i += 1;
                if skip_arc(u, w) {
                    continue;
                }
                let wi = w as usize;
                if index[wi] == UNSET {
                    index[wi] = next_index;
                    low[wi] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[wi] = true;
                    call.push((w, 0));
                } else if on_stack[wi] {
                    low[u as usize] = low[u as usize].min(index[wi]);
                }
            } else {
                call.pop();
                let ui = u as usize;
                if let Some(&(parent, _)) = call.last() {
                    low[parent as usize] = low[parent as usize].min(low[ui]);
                }
                if low[ui] == index[ui] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w as usize] = false;
                        label[w as usize] = next_label;
                        if w == u {
                            break;
                        }
                    }
                    next_label += 1;
                }
            }
        }
    }
    label
}

/// Cached `SCC_||` labels.
///
/// Adding arcs can merge components, so the labels become dirty. Removing
/// arcs or vertices only splits components: a "different label" answer stays
/// correct, a "same label" answer may be stale.
#[derive(Clone, Debug)]
pub struct SccLabeling {
    label: Vec<u32>,
    add_epoch: u64,
    mut_epoch: u64,
}

impl SccLabeling {
    pub fn label(&self, v: Node) -> u32 {
        self.label[v as usize]
    }

    /// Components are certainly different.
    pub fn differ(&self, u: Node, v: Node) -> bool {
        self.label[u as usize] != self.label[v as usize]
    }

    /// Arcs were added since the labels were computed.
    pub fn is_dirty(&self, g: &DiGraph) -> bool {
        self.add_epoch != g.add_epoch() || self.label.len() != g.capacity()
    }

    /// Anything changed since the labels were computed.
    pub fn is_stale(&self, g: &DiGraph) -> bool {
        self.mut_epoch != g.mut_epoch() || self.label.len() != g.capacity()
    }

    /// Recomputes the labels if arcs were added since the last computation.
    pub fn refresh(&mut self, g: &DiGraph) {
        if self.is_dirty(g) {
            *self = g.scc_par();
        }
    }

    /// Recomputes the labels unless the graph is unchanged.
    pub fn refresh_exact(&mut self, g: &DiGraph) {
        if self.is_stale(g) {
            *self = g.scc_par();
        }
    }
}
