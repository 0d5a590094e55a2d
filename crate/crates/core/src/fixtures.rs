//! Small hand-built instances used throughout the tests and the CLI examples.

use crate::digraph::{DiGraph, Node};

pub const A: Node = 0;
pub const B: Node = 1;
pub const C: Node = 2;
pub const D: Node = 3;
pub const E: Node = 4;
pub const F: Node = 5;
pub const G: Node = 6;
pub const H: Node = 7;

/// The eight-vertex running example `a..h` (ids 0..8). Minimum DFVS `{b, g}`.
pub fn running_example() -> DiGraph {
    DiGraph::from_arcs(
        8,
        &[
            (A, B),
            (B, A),
            (A, C),
            (C, B),
            (B, C),
            (A, D),
            (C, E),
            (C, F),
            (D, E),
            (D, F),
            (D, B),
            (E, H),
            (F, H),
            (F, G),
            (H, G),
            (G, C),
        ],
    )
    .unwrap()
}

/// Uncovered cycle vertex sets of [`running_example`], each sorted.
pub fn running_example_cycles() -> Vec<Vec<Node>> {
    vec![vec![A, B], vec![B, C], vec![C, F, G], vec![C, E, G, H]]
}

#[derive(Clone, Copy, Debug)]
pub struct TwoTrianglesIds {
    pub v: Node,
    pub a1: Node,
    pub a2: Node,
    pub a3: Node,
    pub b1: Node,
    pub b2: Node,
    pub b3: Node,
}

/// A vertex `v` joined by bi-edges to two disjoint directed triangles.
pub fn two_triangles() -> (DiGraph, TwoTrianglesIds) {
    let ids = TwoTrianglesIds {
        v: 0,
        a1: 1,
        a2: 2,
        a3: 3,
        b1: 4,
        b2: 5,
        b3: 6,
    };
    let TwoTrianglesIds {
        v,
        a1,
        a2,
        a3,
        b1,
        b2,
        b3,
    } = ids;
    let g = DiGraph::from_arcs(
        7,
        &[
            (v, a1),
            (a1, v),
            (v, b1),
            (b1, v),
            (a1, a2),
            (a2, a3),
            (a3, a1),
            (b1, b2),
            (b2, b3),
            (b3, b1),
        ],
    )
    .unwrap();
    (g, ids)
}

/// `v ↔ a`, `v ↔ b` and the triangle `a → b → c → a`. Ids: v=0, a=1, b=2, c=3.
pub fn triangle_pair() -> DiGraph {
    DiGraph::from_arcs(
        4,
        &[(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 3), (3, 1)],
    )
    .unwrap()
}

pub fn bidirected_clique(n: usize) -> DiGraph {
    let mut g = DiGraph::new(n);
    for u in 0..n as Node {
        for v in 0..n as Node {
            if u != v {
                g.add_arc(u, v).unwrap();
            }
        }
    }
    g
}

/// Directed cycle `0 → 1 → … → n-1 → 0`.
pub fn directed_cycle(n: usize) -> DiGraph {
    let mut g = DiGraph::new(n);
    for i in 0..n as Node {
        g.add_arc(i, (i + 1) % n as Node).unwrap();
    }
    g
}
