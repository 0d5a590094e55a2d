//! Brute-force reference answers for tiny graphs.
//!
//! Nothing here reuses the solver's own cycle search or acyclicity test: the
//! oracle copies the arcs into bitmasks and works on those.

use crate::digraph::{DiGraph, Node};
use crate::error::{Error, Result};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug)]
pub struct OracleLimit {
    pub max_n: usize,
    pub max_subsets: u64,
}

impl Default for OracleLimit {
    fn default() -> Self {
        OracleLimit {
            max_n: 12,
            max_subsets: 1 << 20,
        }
    }
}

/// Bitmask copy of a graph on at most 32 vertices.
struct MaskGraph {
    ids: Vec<Node>,
    out: Vec<u32>,
}

impl MaskGraph {
    fn new(g: &DiGraph, limit: &OracleLimit) -> Result<Self> {
        let ids: Vec<Node> = g.vertices().collect();
        let n = ids.len();
        if n > limit.max_n || n > 31 || (1u64 << n) > limit.max_subsets.max(1) {
            return Err(Error::OracleLimit {
                vertices: n,
                max: limit.max_n.min(31),
            });
        }
        let mut pos = vec![usize::MAX; g.capacity()];
        for (i, &v) in ids.iter().enumerate() {
            pos[v as usize] = i;
        }
        let mut out = vec![0u32; n];
        for (i, &u) in ids.iter().enumerate() {
            for &v in g.succ(u) {
                out[i] |= 1 << pos[v as usize];
            }
        }
        Ok(MaskGraph { ids, out })
    }

    fn n(&self) -> usize {
        self.ids.len()
    }

    /// Peels off vertices without in-arcs until nothing changes.
    fn acyclic_within(&self, mut remaining: u32) -> bool {
        loop {
            let mut has_pred = 0u32;
            let mut rest = remaining;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                has_pred |= self.out[i] & remaining;
            }
            let sources = remaining & !has_pred;
            if sources == 0 {
                return remaining == 0;
            }
            remaining &= !sources;
        }
    }

    fn full(&self) -> u32 {
        if self.n() == 32 {
            u32::MAX
        } else {
            (1u32 << self.n()) - 1
        }
    }

    fn to_nodes(&self, mask: u32) -> Vec<Node> {
        (0..self.n())
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| self.ids[i])
            .collect()
    }
}

/// Masks with exactly `k` of the low `n` bits set, in increasing order.
fn masks_with_popcount(n: usize, k: usize) -> Vec<u32> {
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut m: u64 = (1 << k) - 1;
    while m < (1 << n) {
        out.push(m as u32);
        // Gosper's hack
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}

/// Minimum DFVS size and one witness, by trying subsets in order of size.
pub fn brute_force_dfvs(g: &DiGraph, limit: &OracleLimit) -> Result<(usize, Vec<Node>)> {
    let mg = MaskGraph::new(g, limit)?;
    let full = mg.full();
    for k in 0..=mg.n() {
        let masks = masks_with_popcount(mg.n(), k);
        let check = |&m: &u32| mg.acyclic_within(full & !m);
        #[cfg(feature = "parallel")]
        let hit = {
            use rayon::prelude::*;
            masks.par_iter().copied().find_first(|m| check(m))
        };
        #[cfg(not(feature = "parallel"))]
        let hit = masks.iter().copied().find(|m| check(m));
        if let Some(m) = hit {
            return Ok((k, mg.to_nodes(m)));
        }
    }
    unreachable!("removing every vertex leaves an acyclic graph")
}

/// Minimum DFVS size only.
pub fn optimum(g: &DiGraph) -> usize {
    brute_force_dfvs(g, &OracleLimit::default())
        .expect("graph within oracle limits")
        .0
}

/// Whether `G − set` is acyclic, by mask peeling. Unknown vertices make the
/// answer `false`.
pub fn is_dfvs(g: &DiGraph, set: &[Node]) -> bool {
    if set.iter().any(|&v| !g.is_alive(v)) {
        return false;
    }
    let limit = OracleLimit {
        max_n: 31,
        max_subsets: u64::MAX,
    };
    match MaskGraph::new(g, &limit) {
        Ok(mg) => {
            let mut remaining = mg.full();
            for (i, v) in mg.ids.iter().enumerate() {
                if set.contains(v) {
                    remaining &= !(1 << i);
                }
            }
            mg.acyclic_within(remaining)
        }
        Err(_) => {
            // too big for masks: plain Kahn on a copy
            let keep = |v: Node| !set.contains(&v);
            kahn_acyclic(g, &keep)
        }
    }
}

fn kahn_acyclic(g: &DiGraph, keep: &dyn Fn(Node) -> bool) -> bool {
    let mut indeg = vec![0usize; g.capacity()];
    let mut total = 0;
    for v in g.vertices().filter(|&v| keep(v)) {
        total += 1;
        indeg[v as usize] = g.pred(v).iter().filter(|&&p| keep(p)).count();
    }
    let mut queue: Vec<Node> = g
        .vertices()
        .filter(|&v| keep(v) && indeg[v as usize] == 0)
        .collect();
    let mut seen = 0;
    while let Some(u) = queue.pop() {
        seen += 1;
        for &w in g.succ(u) {
            if keep(w) {
                indeg[w as usize] -= 1;
                if indeg[w as usize] == 0 {
                    queue.push(w);
                }
            }
        }
    }
    seen == total
}

/// All uncovered cycle vertex sets, each sorted, the list sorted.
///
/// Exhaustive DFS enumerates every elementary cycle (rooted at its smallest
/// vertex), then sets strictly containing another set are dropped.
pub fn brute_force_cycles(g: &DiGraph, limit: &OracleLimit) -> Result<Vec<Vec<Node>>> {
    let mg = MaskGraph::new(g, limit)?;
    let n = mg.n();
    let mut found: BTreeSet<u32> = BTreeSet::new();

    fn dfs(mg: &MaskGraph, start: usize, u: usize, path: u32, found: &mut BTreeSet<u32>) {
        let mut next = mg.out[u];
        while next != 0 {
            let w = next.trailing_zeros() as usize;
            next &= next - 1;
            if w == start {
                found.insert(path);
            } else if w > start && path & (1 << w) == 0 {
                dfs(mg, start, w, path | (1 << w), found);
            }
        }
    }
    for s in 0..n {
        dfs(&mg, s, s, 1 << s, &mut found);
    }

    let all: Vec<u32> = found.into_iter().collect();
    let mut out: Vec<Vec<Node>> = all
        .iter()
        .filter(|&&m| !all.iter().any(|&o| o != m && o & m == o))
        .map(|&m| mg.to_nodes(m))
        .collect();
    out.sort();
    Ok(out)
}
