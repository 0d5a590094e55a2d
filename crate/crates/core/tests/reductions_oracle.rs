mod common;

use common::*;
use dfvs_core::cycles::enumerate_all_uncovered;
use dfvs_core::oracle::{is_dfvs, optimum};
use dfvs_core::random::random_digraph_with_bi_edges;
use dfvs_core::reductions::{
    apply_rule, exclude, reduce, reduce_with_all_cycles, ReductionTrace, Rule, RuleSet,
};
use dfvs_core::{DiGraph, Node};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIRINGS: usize = 100;
const ATTEMPTS: u64 = 20_000;

fn assert_lifts(g: &DiGraph, kernel: &DiGraph, trace: &ReductionTrace, what: &str) {
    if let Err(e) = check_lift(g, kernel, trace) {
        panic!("{what}: {e}");
    }
}

fn soundness(rule: Rule, seed: u64, mut gen: impl FnMut(&mut ChaCha8Rng) -> DiGraph) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fired = 0;
    for attempt in 0..ATTEMPTS {
        let g = gen(&mut rng);
        let mut k = g.clone();
        let mut t = ReductionTrace::default();
        apply_rule(&mut k, &mut t, rule);
        if t.stats.fires(rule) > 0 {
            assert_lifts(&g, &k, &t, &format!("{rule} attempt {attempt}"));
            fired += 1;
            if fired >= FIRINGS {
                return;
            }
        }
    }
    panic!("{rule} fired only {fired} times");
}

#[test]
fn loop_rule_is_sound() {
    soundness(Rule::Loop, 1, |rng| {
        let mut g = random_graph(rng);
        let v = rng.gen_range(0..g.capacity() as Node);
        g.add_arc(v, v).unwrap();
        g
    });
}

#[test]
fn degree_rules_are_sound() {
    soundness(Rule::In0Out0, 2, random_graph);
    soundness(Rule::In1Out1, 3, random_graph);
}

#[test]
fn subset_is_sound() {
    soundness(Rule::Subset, 4, random_graph);
}

#[test]
fn pie_is_sound() {
    soundness(Rule::Pie, 5, random_graph);
}

#[test]
fn dome_is_sound() {
    soundness(Rule::Dome, 6, random_graph);
}

#[test]
fn diclique_rules_are_sound() {
    soundness(Rule::InOutDiclique, 7, random_graph);
    soundness(Rule::Core, 8, random_graph);
    soundness(Rule::Diclique23, 9, random_graph);
}

#[test]
fn unconfined_is_sound() {
    soundness(Rule::Unconfined, 10, random_graph);
}

#[test]
fn manyfold_is_sound() {
    soundness(Rule::Manyfold, 11, planted_manyfold);
}

#[test]
fn fourpath_is_sound() {
    soundness(Rule::FourPath, 12, planted_fourpath);
}

#[test]
fn threeempty_is_sound() {
    soundness(Rule::ThreeEmpty, 13, planted_threeempty);
}

#[test]
fn allcycles_is_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut fired = 0;
    for attempt in 0..ATTEMPTS {
        let g = random_graph(&mut rng);
        let mut cs = enumerate_all_uncovered(&g, 1_000_000);
        assert!(cs.complete);
        let mut k = g.clone();
        let mut t = ReductionTrace::default();
        reduce_with_all_cycles(&mut k, &mut cs, &mut t, RuleSet::empty().with(Rule::AllCycles)).unwrap();
        if t.stats.fires(Rule::AllCycles) > 0 {
            assert_lifts(&g, &k, &t, &format!("allcycles attempt {attempt}"));
            fired += 1;
            if fired >= FIRINGS {
                return;
            }
        }
    }
    panic!("allcycles fired only {fired} times");
}

#[test]
fn full_reduction_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for i in 0..500 {
        let n = rng.gen_range(1..=12);
        let g = random_digraph_with_bi_edges(n, rng.gen_range(0.05..0.5), rng.gen_range(0.0..1.0), i);
        for rules in [RuleSet::default(), RuleSet::all()] {
            let (k, t) = reduce(&g, rules);
            assert!(k.num_vertices() <= g.num_vertices());
            assert_lifts(&g, &k, &t, &format!("graph {i} rules {rules:?}"));
        }
    }
}

#[test]
fn folds_fire_inside_full_reduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut fires = [0u64; 2];
    for _ in 0..400 {
        for (slot, g) in [planted_manyfold(&mut rng), planted_fourpath(&mut rng)].into_iter().enumerate() {
            let (k, t) = reduce(&g, RuleSet::default());
            assert_lifts(&g, &k, &t, "planted");
            fires[slot] += t.stats.fires(Rule::Manyfold) + t.stats.fires(Rule::FourPath);
        }
    }
    assert!(fires.iter().all(|&f| f > 0), "{fires:?}");
}

fn small_graph() -> impl Strategy<Value = DiGraph> {
    (1usize..=8).prop_flat_map(|n| {
        proptest::collection::vec((0..n as Node, 0..n as Node), 0..=3 * n)
            .prop_map(move |arcs| DiGraph::from_arcs(n, &arcs).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Every DFVS either contains `v` or is a DFVS of the bypass graph.
    #[test]
    fn splitting_lemma(g in small_graph(), pick in any::<prop::sample::Index>()) {
        let v = pick.index(g.capacity()) as Node;
        let mut without = g.clone();
        without.remove_vertex(v);
        let take = optimum(&without) + 1;
        let best = if g.has_loop(v) {
            take
        } else {
            let mut bypass = g.clone();
            exclude(&mut bypass, v).unwrap();
            take.min(optimum(&bypass))
        };
        prop_assert_eq!(optimum(&g), best);
    }

    #[test]
    fn reduction_preserves_optimum(g in small_graph()) {
        let (k, t) = reduce(&g, RuleSet::default());
        prop_assert_eq!(optimum(&k) + t.size_offset(), optimum(&g));
    }
}

#[test]
fn straightness_matches_direct_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0;
    while checked < 500 {
        let g = random_graph(&mut rng);
        let arcs: Vec<(Node, Node)> = g.arcs().filter(|&(x, y)| x != y).collect();
        let Some(&(d, c)) = arcs.get(rng.gen_range(0..arcs.len().max(1))) else {
            continue;
        };
        let mut outs_bi = true;
        let mut ins_bi = true;
        for (x, y) in g.arcs() {
            let bi = g.has_arc(y, x);
            if x == d && y != c && !bi {
                outs_bi = false;
            }
            if y == c && x != d && !bi {
                ins_bi = false;
            }
        }
        let expect = !g.has_arc(c, d) && (outs_bi || ins_bi);
        assert_eq!(dfvs_core::reductions::is_straight(&g, d, c).unwrap(), expect, "({d}, {c})");
        checked += 1;
    }
}

#[test]
fn fourpath_with_pendant_tails() {
    // gadget 0..=4 plus DAG tails 1 -> 5 -> 6 and 7 -> 4
    let mut g = DiGraph::new(8);
    for x in 1..=4 {
        add_bi(&mut g, 0, x);
    }
    for x in 1..4 {
        add_bi(&mut g, x, x + 1);
    }
    for (x, y) in [(1, 5), (5, 6), (7, 4)] {
        g.add_arc(x, y).unwrap();
    }
    let mut k = g.clone();
    let mut t = ReductionTrace::default();
    // the tails are PIE arcs and go first
    while t.stats.fires(Rule::FourPath) == 0 {
        assert!(apply_rule(&mut k, &mut t, Rule::FourPath));
    }
    assert_eq!(t.stats.fires(Rule::Pie), 3);
    assert_lifts(&g, &k, &t, "pendant tails");
}

fn without_bi_edges(g: &DiGraph) -> DiGraph {
    let mut h = g.clone();
    for (x, y) in g.bi_projection() {
        h.remove_arc(x, y);
        h.remove_arc(y, x);
    }
    h
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// A set is a DFVS iff it covers every bi-edge and breaks every cycle
    /// left after deleting the bi-edges.
    #[test]
    fn dfvs_splits_into_cover_and_remainder(
        g in (1usize..=9).prop_flat_map(|n| {
            proptest::collection::vec((0..n as Node, 0..n as Node), 0..=3 * n)
                .prop_map(move |arcs| DiGraph::from_arcs(n, &arcs).unwrap())
        }),
        mask in any::<u16>(),
    ) {
        let s: Vec<Node> = g.vertices().filter(|&v| mask >> v & 1 == 1).collect();
        let covers = g.bi_projection().iter().all(|(x, y)| s.contains(x) || s.contains(y));
        prop_assert_eq!(is_dfvs(&g, &s), covers && is_dfvs(&without_bi_edges(&g), &s));
    }
}
