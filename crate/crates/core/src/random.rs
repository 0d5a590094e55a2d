//! Seeded random instance generators.

use crate::digraph::{DiGraph, Node};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Erdős–Rényi style digraph: every ordered pair `(u, v)`, `u ≠ v`, is an arc
/// with probability `p`.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> DiGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = DiGraph::new(n);
    for u in 0..n as Node {
        for v in 0..n as Node {
            if u != v && rng.gen_bool(p) {
                g.add_arc(u, v).unwrap();
            }
        }
    }
    g
}

/// Like [`random_digraph`] but each arc is mirrored with probability `p_bi`.
pub fn random_digraph_with_bi_edges(n: usize, p: f64, p_bi: f64, seed: u64) -> DiGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = DiGraph::new(n);
    for u in 0..n as Node {
        for v in 0..n as Node {
            if u != v && rng.gen_bool(p) {
                g.add_arc(u, v).unwrap();
                if rng.gen_bool(p_bi) {
                    g.add_arc(v, u).unwrap();
                }
            }
        }
    }
    g
}

/// Random tournament on `n` vertices.
pub fn random_tournament(n: usize, seed: u64) -> DiGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = DiGraph::new(n);
    for u in 0..n as Node {
        for v in u + 1..n as Node {
            if rng.gen_bool(0.5) {
                g.add_arc(u, v).unwrap();
            } else {
                g.add_arc(v, u).unwrap();
            }
        }
    }
    g
}
