//! Instance generators and checks shared by the integration tests.
#![allow(dead_code)]

use dfvs_core::oracle::{brute_force_dfvs, is_dfvs, optimum, OracleLimit};
use dfvs_core::random::random_digraph_with_bi_edges;
use dfvs_core::reductions::{reconstruct, ReductionTrace};
use dfvs_core::{DiGraph, Node};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// `DFVS(G) = DFVS(kernel) + offset`, and the lifted kernel optimum is a
/// minimum DFVS of `g`.
pub fn check_lift(g: &DiGraph, kernel: &DiGraph, trace: &ReductionTrace) -> Result<(), String> {
    let opt = optimum(g);
    let (k_opt, k_sol) = brute_force_dfvs(kernel, &OracleLimit::default()).map_err(|e| e.to_string())?;
    if k_opt + trace.size_offset() != opt {
        return Err(format!("kernel {k_opt} + offset {} != {opt}", trace.size_offset()));
    }
    let s = reconstruct(trace, &k_sol).map_err(|e| e.to_string())?;
    if !is_dfvs(g, &s) {
        return Err(format!("lifted set {s:?} is not a DFVS"));
    }
    if s.len() != opt {
        return Err(format!("lifted set {s:?} is not minimum"));
    }
    Ok(())
}

pub fn random_graph(rng: &mut ChaCha8Rng) -> DiGraph {
    let n = rng.gen_range(2..=9);
    random_digraph_with_bi_edges(n, rng.gen_range(0.1..0.6), rng.gen_range(0.0..1.0), rng.gen())
}

pub fn add_bi(g: &mut DiGraph, x: Node, y: Node) {
    g.add_arc(x, y).unwrap();
    g.add_arc(y, x).unwrap();
}

/// Random arcs among `from..n` and between those vertices and `hub`.
pub fn sprinkle(g: &mut DiGraph, rng: &mut ChaCha8Rng, hub: &[Node], from: Node, p: f64) {
    let n = g.capacity() as Node;
    for x in from..n {
        for y in from..n {
            if x != y && rng.gen_bool(p) {
                g.add_arc(x, y).unwrap();
            }
        }
        for &h in hub {
            if rng.gen_bool(p) {
                g.add_arc(x, h).unwrap();
            }
            if rng.gen_bool(p) {
                g.add_arc(h, x).unwrap();
            }
        }
    }
}

pub fn planted_manyfold(rng: &mut ChaCha8Rng) -> DiGraph {
    let k = rng.gen_range(2..=4u32);
    let n = 1 + k + rng.gen_range(0..=4);
    let mut g = DiGraph::new(n as usize);
    let nv: Vec<Node> = (1..=k).collect();
    for &x in &nv {
        add_bi(&mut g, 0, x);
    }
    // one star of missing pairs centred at nv[0], the rest bi-cliqued
    let leaves = rng.gen_range(1..k);
    for i in 0..k as usize {
        for j in i + 1..k as usize {
            if i == 0 && j <= leaves as usize {
                match rng.gen_range(0..3) {
                    0 => {}
                    1 => {
                        g.add_arc(nv[i], nv[j]).unwrap();
                    }
                    _ => {
                        g.add_arc(nv[j], nv[i]).unwrap();
                    }
                }
            } else {
                add_bi(&mut g, nv[i], nv[j]);
            }
        }
    }
    let p = rng.gen_range(0.1..0.5);
    sprinkle(&mut g, rng, &nv, k + 1, p);
    g
}

pub fn planted_fourpath(rng: &mut ChaCha8Rng) -> DiGraph {
    let n = 5 + rng.gen_range(0..=4);
    let mut g = DiGraph::new(n);
    for x in 1..=4 {
        add_bi(&mut g, 0, x);
    }
    for x in 1..4 {
        add_bi(&mut g, x, x + 1);
    }
    let p = rng.gen_range(0.1..0.5);
    sprinkle(&mut g, rng, &[1, 2, 3, 4], 5, p);
    g
}

pub fn planted_threeempty(rng: &mut ChaCha8Rng) -> DiGraph {
    let n = 4 + rng.gen_range(0..=5);
    let mut g = DiGraph::new(n);
    for x in 1..=3 {
        add_bi(&mut g, 0, x);
    }
    for x in 4..n as Node {
        for y in 1..=3 {
            if rng.gen_bool(0.4) {
                add_bi(&mut g, x, y);
            }
        }
        for y in 4..n as Node {
            if x != y && rng.gen_bool(0.3) {
                g.add_arc(x, y).unwrap();
            }
        }
    }
    g
}
