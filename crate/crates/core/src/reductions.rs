//! Data reductions applied to a fixpoint.
//!
//! Every change is logged in a [`ReductionTrace`]; [`reconstruct`] replays the
//! log backwards to turn a minimum DFVS of the kernel into a minimum DFVS of
//! the input graph.
//!
//! A diclique here is a vertex set whose members are pairwise joined by
//! bi-edges.

use crate::cycles::CycleSet;
use crate::digraph::{subset_sorted, DiGraph, Node, SccLabeling};
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

/// Neighbourhoods larger than this are skipped by the clique-partition rules
/// and MANYFOLD.
const NEIGHBORHOOD_CAP: usize = 64;
/// Largest set grown by the unconfined check before giving up.
const UNCONFINED_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rule {
    Loop,
    In0Out0,
    In1Out1,
    Subset,
    Pie,
    Dome,
    InOutDiclique,
    Core,
    Diclique23,
    Unconfined,
    Manyfold,
    FourPath,
    ThreeEmpty,
    AllCycles,
}

impl Rule {
    pub const ALL: [Rule; 14] = [
        Rule::Loop,
        Rule::In0Out0,
        Rule::In1Out1,
        Rule::Subset,
        Rule::Pie,
        Rule::Dome,
        Rule::InOutDiclique,
        Rule::Core,
        Rule::Diclique23,
        Rule::Unconfined,
        Rule::Manyfold,
        Rule::FourPath,
        Rule::ThreeEmpty,
        Rule::AllCycles,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Loop => "loop",
            Rule::In0Out0 => "in0out0",
            Rule::In1Out1 => "in1out1",
            Rule::Subset => "subset",
            Rule::Pie => "pie",
            Rule::Dome => "dome",
            Rule::InOutDiclique => "diclique",
            Rule::Core => "core",
            Rule::Diclique23 => "diclique23",
            Rule::Unconfined => "unconfined",
            Rule::Manyfold => "manyfold",
            Rule::FourPath => "4path",
            Rule::ThreeEmpty => "3empty",
            Rule::AllCycles => "allcycles",
        }
    }

    pub fn from_name(name: &str) -> Option<Rule> {
        let name = name.trim().to_ascii_lowercase();
        Rule::ALL.into_iter().find(|r| r.name() == name)
    }

    fn bit(self) -> u32 {
        1 << self as u32
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Set of enabled rules.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleSet(u32);

impl RuleSet {
    pub const fn empty() -> Self {
        RuleSet(0)
    }

    pub fn all() -> Self {
        Rule::ALL.into_iter().fold(Self::empty(), RuleSet::with)
    }

    pub fn contains(self, r: Rule) -> bool {
        self.0 & r.bit() != 0
    }

    pub fn with(self, r: Rule) -> Self {
        RuleSet(self.0 | r.bit())
    }

    pub fn without(self, r: Rule) -> Self {
        RuleSet(self.0 & !r.bit())
    }

    pub fn iter(self) -> impl Iterator<Item = Rule> {
        Rule::ALL.into_iter().filter(move |&r| self.contains(r))
    }

    /// Comma-separated rule names, or one of `all`, `none`, `default`.
    pub fn parse(list: &str) -> Result<Self> {
        let mut set = RuleSet::empty();
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            set = match item {
                "all" => RuleSet(set.0 | RuleSet::all().0),
                "none" => set,
                "default" => RuleSet(set.0 | RuleSet::default().0),
                _ => set.with(Rule::from_name(item).ok_or_else(|| Error::UnknownRule(item.into()))?),
            };
        }
        Ok(set)
    }
}

impl Default for RuleSet {
    /// Everything except 3EMPTY.
    fn default() -> Self {
        RuleSet::all().without(Rule::ThreeEmpty)
    }
}

impl fmt::Debug for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(Rule::name)).finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ReductionEvent {
    Loop {
        vertex: Node,
    },
    Exclude {
        vertex: Node,
        rule: Rule,
    },
    ArcDelete {
        tail: Node,
        head: Node,
        rule: Rule,
    },
    CommitVertex {
        vertex: Node,
        rule: Rule,
    },
    /// `partner[i]` is the unique vertex of `c2` not bi-adjacent to `c1[i]`.
    ManyFold {
        center: Node,
        c1: Vec<Node>,
        c2: Vec<Node>,
        partner: Vec<Node>,
    },
    FourPath {
        center: Node,
        a: Node,
        b: Node,
        c: Node,
        d: Node,
    },
    ThreeEmpty {
        center: Node,
        a: Node,
        b: Node,
        c: Node,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RuleStats {
    pub fires: u64,
    pub vertices_removed: u64,
    /// Net; folds may add more arcs than they remove.
    pub arcs_removed: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReductionStats {
    pub rules: BTreeMap<&'static str, RuleStats>,
}

impl ReductionStats {
    pub fn fires(&self, r: Rule) -> u64 {
        self.rules.get(r.name()).map_or(0, |s| s.fires)
    }

    pub fn total_fires(&self) -> u64 {
        self.rules.values().map(|s| s.fires).sum()
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ReductionTrace {
    pub events: Vec<ReductionEvent>,
    /// Vertices committed to the solution (LOOP, SUBSET, UNCONFINED).
    pub forced: Vec<Node>,
    /// Solution vertices owed by folds beyond what the kernel solution holds.
    pub offset: usize,
    pub stats: ReductionStats,
}

impl ReductionTrace {
    /// `|forced| + offset`: how much larger the lifted solution is.
    pub fn size_offset(&self) -> usize {
        self.forced.len() + self.offset
    }
}

/// `G ∘ v`: removes `v` and joins every predecessor to every successor.
pub fn exclude(g: &mut DiGraph, v: Node) -> Result<()> {
    if !g.is_alive(v) {
        return Err(Error::UnknownVertex(v));
    }
    if g.has_loop(v) {
        return Err(Error::SelfLoop(v));
    }
    let pre = g.pred(v).to_vec();
    let suc = g.succ(v).to_vec();
    g.remove_vertex(v);
    for &p in &pre {
        for &s in &suc {
            g.add_arc(p, s)?;
        }
    }
    Ok(())
}

/// `(d, c)` is straight if `(c, d)` is absent and either every other out-arc
/// of `d` or every other in-arc of `c` is half of a bi-edge.
pub fn is_straight(g: &DiGraph, d: Node, c: Node) -> Result<bool> {
    if !g.has_arc(d, c) {
        return Err(Error::MissingArc(d, c));
    }
    if g.has_arc(c, d) {
        return Ok(false);
    }
    let outs = g
        .succ(d)
        .iter()
        .all(|&x| x == c || g.has_arc(x, d));
    let ins = g.pred(c).iter().all(|&x| x == d || g.has_arc(c, x));
    Ok(outs || ins)
}

pub fn is_diclique(g: &DiGraph, set: &[Node]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &x)| set[i + 1..].iter().all(|&y| g.is_bi_edge(x, y)))
}

/// Alg. "CheckUnconfined": grows a set `A` that no minimum DFVS may touch,
/// and reports `true` once a directed child of `A` leads to a contradiction.
pub fn check_unconfined(g: &DiGraph, v: Node) -> bool {
    if !g.is_alive(v) || g.has_loop(v) {
        return false;
    }
    let mut a: BTreeSet<Node> = BTreeSet::from([v]);
    while a.len() <= UNCONFINED_CAP {
        let closing = cyclic_extensions(g, &a);
        let mut best: Option<(usize, Node, Option<Node>)> = None;
        for &u in &closing {
            let touching = g.succ(u).iter().filter(|x| a.contains(x)).count()
                + g.pred(u).iter().filter(|x| a.contains(x)).count();
            if touching != 2 {
                continue;
            }
            let outside: Vec<Node> = g
                .neighbors(u)
                .into_iter()
                .filter(|x| !closing.contains(x) && !a.contains(x))
                .collect();
            let key = (outside.len(), u, outside.first().copied());
            if best.is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                best = Some(key);
            }
        }
        match best {
            Some((0, _, _)) => return true,
            Some((1, _, Some(w))) => {
                a.insert(w);
            }
            _ => return false,
        }
    }
    false
}

/// `{u ∉ A : G[A ∪ {u}] has a cycle}` for an acyclic `G[A]`.
fn cyclic_extensions(g: &DiGraph, a: &BTreeSet<Node>) -> BTreeSet<Node> {
    let mut candidates = BTreeSet::new();
    for &x in a {
        candidates.extend(g.succ(x).iter().chain(g.pred(x)).filter(|y| !a.contains(y)));
    }
    candidates
        .into_iter()
        .filter(|&u| {
            if g.has_loop(u) {
                return true;
            }
            // u -> s ~> p -> u inside A
            let targets: HashSet<Node> = g.pred(u).iter().copied().filter(|p| a.contains(p)).collect();
            if targets.is_empty() {
                return false;
            }
            let mut seen: HashSet<Node> = HashSet::new();
            let mut stack: Vec<Node> = g.succ(u).iter().copied().filter(|s| a.contains(s)).collect();
            while let Some(x) = stack.pop() {
                if !seen.insert(x) {
                    continue;
                }
                if targets.contains(&x) {
                    return true;
                }
                stack.extend(g.succ(x).iter().filter(|y| a.contains(y) && !seen.contains(y)));
            }
            false
        })
        .collect()
}

/// Partition of `N(v)` accepted by MANYFOLD.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Fold {
    c1: Vec<Node>,
    c2: Vec<Node>,
    partner: Vec<Node>,
}

struct Ctx<'a> {
    g: &'a mut DiGraph,
    trace: &'a mut ReductionTrace,
    scc: SccLabeling,
    cycles: Option<&'a mut CycleSet>,
}

impl<'a> Ctx<'a> {
    fn new(g: &'a mut DiGraph, trace: &'a mut ReductionTrace, cycles: Option<&'a mut CycleSet>) -> Self {
        let scc = g.scc_par();
        Ctx {
            g,
            trace,
            scc,
            cycles,
        }
    }

    fn record(&mut self, rule: Rule, vertices: usize, arcs_before: usize) {
        self.g.debug_check();
        let s = self.trace.stats.rules.entry(rule.name()).or_default();
        s.fires += 1;
        s.vertices_removed += vertices as u64;
        s.arcs_removed += arcs_before as i64 - self.g.arc_count() as i64;
    }

    fn commit(&mut self, v: Node, rule: Rule) {
        let arcs = self.g.arc_count();
        self.g.remove_vertex(v);
        self.trace.forced.push(v);
        self.trace.events.push(if rule == Rule::Loop {
            ReductionEvent::Loop { vertex: v }
        } else {
            ReductionEvent::CommitVertex { vertex: v, rule }
        });
        self.record(rule, 1, arcs);
        if let Some(cs) = self.cycles.as_deref_mut() {
            cs.cycles.retain(|c| !c.contains(v));
        }
    }

    fn exclude(&mut self, v: Node, rule: Rule) {
        let arcs = self.g.arc_count();
        let adds_arcs = self.g.in_degree(v) > 0 && self.g.out_degree(v) > 0;
        exclude(self.g, v).expect("exclusion candidates are alive and loop-free");
        self.trace.events.push(ReductionEvent::Exclude { vertex: v, rule });
        self.record(rule, 1, arcs);
        if let Some(cs) = self.cycles.as_deref_mut() {
            cs.cycles.retain(|c| !c.contains(v));
            if adds_arcs {
                cs.complete = false;
            }
        }
    }

    fn delete_arc(&mut self, u: Node, v: Node, rule: Rule) {
        let arcs = self.g.arc_count();
        self.g.remove_arc(u, v);
        self.trace.events.push(ReductionEvent::ArcDelete {
            tail: u,
            head: v,
            rule,
        });
        self.record(rule, 0, arcs);
        if let Some(cs) = self.cycles.as_deref_mut() {
            let before = cs.cycles.len();
            cs.cycles.retain(|c| !c.arcs().any(|a| a == (u, v)));
            // a deleted arc could have been a chord of some longer cycle
            if cs.cycles.len() != before {
                cs.complete = false;
            }
        }
    }

    fn apply(&mut self, rule: Rule) -> bool {
        match rule {
            Rule::Loop => self.try_loop(),
            Rule::In0Out0 => self.try_in0out0(),
            Rule::In1Out1 => self.try_in1out1(),
            Rule::Subset => self.try_subset(),
            Rule::Pie => self.try_pie(),
            Rule::Dome => self.try_dome(),
            Rule::InOutDiclique => self.try_inout_diclique(),
            Rule::Core => self.try_core(),
            Rule::Diclique23 => self.try_diclique23(),
            Rule::Unconfined => self.try_unconfined(),
            Rule::Manyfold => self.try_manyfold(),
            Rule::FourPath => self.try_4path(),
            Rule::ThreeEmpty => self.try_3empty(),
            Rule::AllCycles => self.try_allcycles(),
        }
    }

    fn vertices(&self) -> Vec<Node> {
        self.g.vertices().collect()
    }

    fn try_loop(&mut self) -> bool {
        let loops: Vec<Node> = self.g.vertices().filter(|&v| self.g.has_loop(v)).collect();
        for &v in &loops {
            self.commit(v, Rule::Loop);
        }
        !loops.is_empty()
    }

    fn try_in0out0(&mut self) -> bool {
        let mut fired = false;
        for v in self.vertices() {
            if self.g.is_alive(v) && (self.g.in_degree(v) == 0 || self.g.out_degree(v) == 0) {
                self.exclude(v, Rule::In0Out0);
                fired = true;
            }
        }
        fired
    }

    fn try_in1out1(&mut self) -> bool {
        let mut fired = false;
        for v in self.vertices() {
            let g = &*self.g;
            if g.is_alive(v) && !g.has_loop(v) && (g.in_degree(v) <= 1 || g.out_degree(v) <= 1) {
                self.exclude(v, Rule::In1Out1);
                fired = true;
            }
        }
        fired
    }

    fn try_subset(&mut self) -> bool {
        let mut fired = false;
        for v in self.vertices() {
            if !self.g.is_alive(v) || self.g.has_loop(v) {
                continue;
            }
            for u in self.g.bi_neighbors(v) {
                let g = &*self.g;
                if u == v || !g.is_alive(v) || !g.is_alive(u) || g.has_loop(u) || !g.is_bi_edge(u, v) {
                    continue;
                }
                if subset_sorted(g.pred(v), g.pred(u), Some(u))
                    && subset_sorted(g.succ(v), g.succ(u), Some(u))
                {
                    self.commit(u, Rule::Subset);
                    fired = true;
                }
            }
        }
        fired
    }

    fn pie_arcs(&self) -> Vec<(Node, Node)> {
        self.g
            .arcs()
            .filter(|&(u, v)| u != v && !self.g.has_arc(v, u) && self.scc.differ(u, v))
            .collect()
    }

    fn try_pie(&mut self) -> bool {
        self.scc.refresh(self.g);
        let arcs = self.pie_arcs();
        for &(u, v) in &arcs {
            self.delete_arc(u, v, Rule::Pie);
        }
        !arcs.is_empty()
    }

    fn dominated(g: &DiGraph, v: Node, u: Node) -> bool {
        if v == u || !g.has_arc(v, u) || g.has_arc(u, v) || g.has_loop(v) || g.has_loop(u) {
            return false;
        }
        let first = g
            .pred(v)
            .iter()
            .filter(|&&p| !g.has_arc(v, p))
            .all(|&p| g.has_arc(p, u));
        first
            || g.succ(u)
                .iter()
                .filter(|&&p| !g.has_arc(p, u))
                .all(|&p| g.has_arc(v, p))
    }

    fn try_dome(&mut self) -> bool {
        let mut fired = false;
        let arcs: Vec<(Node, Node)> = self.g.arcs().collect();
        for (v, u) in arcs {
            if Self::dominated(self.g, v, u) {
                self.delete_arc(v, u, Rule::Dome);
                fired = true;
            }
        }
        fired
    }

    fn try_inout_diclique(&mut self) -> bool {
        let mut fired = false;
        for v in self.vertices() {
            let g = &*self.g;
            if !g.is_alive(v) || g.has_loop(v) {
                continue;
            }
            if is_diclique(g, g.pred(v)) || is_diclique(g, g.succ(v)) {
                self.exclude(v, Rule::InOutDiclique);
                fired = true;
            }
        }
        fired
    }

    fn try_core(&mut self) -> bool {
        let mut fired = false;
        for v in self.vertices() {
            let g = &*self.g;
            if !g.is_alive(v) || g.has_loop(v) || !g.all_bi(v) {
                continue;
            }
            if is_diclique(g, &g.neighbors(v)) {
                self.exclude(v, Rule::Core);
                fired = true;
            }
        }
        fired
    }

    fn try_diclique23(&mut self) -> bool {
        let mut fired = false;
        for v in self.vertices() {
            let g = &*self.g;
            if !g.is_alive(v) || g.has_loop(v) {
                continue;
            }
            let nv = g.neighbors(v);
            if nv.len() > NEIGHBORHOOD_CAP {
                continue;
            }
            let bi = g.bi_neighbors(v);
            let ok = if bi.is_empty() {
                three_dicliques(g, &nv) || two_dicliques_around(g, &nv, &bi)
            } else {
                two_dicliques_around(g, &nv, &bi)
            };
            if ok {
                self.exclude(v, Rule::Diclique23);
                fired = true;
            }
        }
        fired
    }

    fn try_unconfined(&mut self) -> bool {
        let mut fired = false;
        for v in self.vertices() {
            if self.g.is_alive(v) && check_unconfined(self.g, v) {
                self.commit(v, Rule::Unconfined);
                fired = true;
            }
        }
        fired
    }

    /// Folds need a loop-free graph, exact `SCC_||` labels and no applicable
    /// PIE arc. Returns `None` when they hold, otherwise whether PIE fired.
    fn fold_guard(&mut self) -> Option<bool> {
        if self.g.vertices().any(|v| self.g.has_loop(v)) {
            return Some(false);
        }
        self.scc.refresh_exact(self.g);
        let pie = self.pie_arcs();
        if pie.is_empty() {
            return None;
        }
        for &(u, v) in &pie {
            self.delete_arc(u, v, Rule::Pie);
        }
        Some(true)
    }

    fn manyfold_at(&self, v: Node) -> Option<Fold> {
        let g = &*self.g;
        if !g.all_bi(v) || g.has_loop(v) {
            return None;
        }
        let nv = g.neighbors(v);
        let k = nv.len();
        if !(2..=NEIGHBORHOOD_CAP).contains(&k) {
            return None;
        }
        let mut missing: Vec<Vec<usize>> = vec![Vec::new(); k];
        for i in 0..k {
            for j in i + 1..k {
                if !g.is_bi_edge(nv[i], nv[j]) {
                    missing[i].push(j);
                    missing[j].push(i);
                }
            }
        }
        // the missing pairs must form stars: leaves go to C1, centres and
        // untouched vertices to C2
        const C1: u8 = 1;
        const C2: u8 = 2;
        let mut side = vec![0u8; k];
        for i in 0..k {
            if side[i] != 0 {
                continue;
            }
            let centre = match missing[i].len() {
                0 => {
                    side[i] = C2;
                    continue;
                }
                1 if missing[missing[i][0]].len() == 1 => {
                    // a lone pair: lower id goes to C1
                    side[i] = C1;
                    side[missing[i][0]] = C2;
                    continue;
                }
                1 => missing[i][0],
                _ => i,
            };
            if !missing[centre].iter().all(|&l| missing[l].len() == 1) {
                return None;
            }
            side[centre] = C2;
            for &l in &missing[centre] {
                side[l] = C1;
            }
        }
        let mut fold = Fold {
            c1: Vec::new(),
            c2: Vec::new(),
            partner: Vec::new(),
        };
        for i in 0..k {
            if side[i] == C1 {
                fold.c1.push(nv[i]);
                fold.partner.push(nv[missing[i][0]]);
            } else {
                fold.c2.push(nv[i]);
            }
        }
        if fold.c1.len() < fold.c2.len() {
            return None;
        }
        for (&x, &y) in fold.c1.iter().zip(&fold.partner) {
            let ok = match (g.has_arc(x, y), g.has_arc(y, x)) {
                (false, false) => self.scc.differ(x, y),
                (true, false) => is_straight(g, x, y).unwrap(),
                (false, true) => is_straight(g, y, x).unwrap(),
                (true, true) => unreachable!("bi-edges are not missing pairs"),
            };
            if !ok {
                return None;
            }
        }
        Some(fold)
    }

    fn try_manyfold(&mut self) -> bool {
        if let Some(fired) = self.fold_guard() {
            return fired;
        }
        let Some((v, fold)) = self
            .g
            .vertices()
            .find_map(|v| self.manyfold_at(v).map(|f| (v, f)))
        else {
            return false;
        };
        let g = &*self.g;
        let c2: HashSet<Node> = fold.c2.iter().copied().collect();
        let keep = |x: Node, c1: Node| x != v && x != c1 && !c2.contains(&x);
        let mut add = Vec::new();
        for (&x, &p) in fold.c1.iter().zip(&fold.partner) {
            add.extend(g.succ(p).iter().filter(|&&s| keep(s, x)).map(|&s| (x, s)));
            add.extend(g.pred(p).iter().filter(|&&q| keep(q, x)).map(|&q| (q, x)));
        }
        let arcs = self.g.arc_count();
        self.g.remove_vertex(v);
        for &c in &fold.c2 {
            self.g.remove_vertex(c);
        }
        for (x, y) in add {
            self.g.add_arc(x, y).expect("endpoints survive the fold");
        }
        self.trace.offset += fold.c2.len();
        let removed = 1 + fold.c2.len();
        self.trace.events.push(ReductionEvent::ManyFold {
            center: v,
            c1: fold.c1,
            c2: fold.c2,
            partner: fold.partner,
        });
        self.record(Rule::Manyfold, removed, arcs);
        true
    }

    /// `[a, b, c, d]` with `a < d` the path endpoints.
    fn fourpath_at(&self, v: Node) -> Option<[Node; 4]> {
        let g = &*self.g;
        if !g.all_bi(v) || g.has_loop(v) {
            return None;
        }
        let nv = g.neighbors(v);
        if nv.len() != 4 || nv.iter().any(|&x| g.has_loop(x)) {
            return None;
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 4];
        for i in 0..4 {
            for j in i + 1..4 {
                match (g.has_arc(nv[i], nv[j]), g.has_arc(nv[j], nv[i])) {
                    (true, true) => {
                        adj[i].push(j);
                        adj[j].push(i);
                    }
                    (false, false) => {}
                    _ => return None,
                }
            }
        }
        let ends: Vec<usize> = (0..4).filter(|&i| adj[i].len() == 1).collect();
        let inner = (0..4).filter(|&i| adj[i].len() == 2).count();
        if ends.len() != 2 || inner != 2 {
            return None;
        }
        let (a, d) = (ends[0], ends[1]);
        let (b, c) = (adj[a][0], adj[d][0]);
        let [a, b, c, d] = [nv[a], nv[b], nv[c], nv[d]];
        let s = &self.scc;
        (s.differ(a, c) && s.differ(a, d) && s.differ(d, b)).then_some([a, b, c, d])
    }

    fn try_4path(&mut self) -> bool {
        if let Some(fired) = self.fold_guard() {
            return fired;
        }
        let Some((v, [a, b, c, d])) = self
            .g
            .vertices()
            .find_map(|v| self.fourpath_at(v).map(|p| (v, p)))
        else {
            return false;
        };
        let g = &*self.g;
        let mut add = vec![(a, c), (c, a), (a, d), (d, a), (b, d), (d, b)];
        for x in [a, b] {
            add.extend(g.succ(d).iter().map(|&s| (x, s)));
            add.extend(g.pred(d).iter().map(|&p| (p, x)));
        }
        for x in [c, d] {
            add.extend(g.succ(a).iter().map(|&s| (x, s)));
            add.extend(g.pred(a).iter().map(|&p| (p, x)));
        }
        let arcs = self.g.arc_count();
        self.g.remove_vertex(v);
        for (x, y) in add {
            if x != y && x != v && y != v {
                self.g.add_arc(x, y).expect("endpoints survive the rewrite");
            }
        }
        self.trace.events.push(ReductionEvent::FourPath {
            center: v,
            a,
            b,
            c,
            d,
        });
        self.record(Rule::FourPath, 1, arcs);
        true
    }

    fn threeempty_at(&self, v: Node) -> Option<[Node; 3]> {
        let g = &*self.g;
        let locally_undirected = |x: Node| g.all_bi(x) && !g.has_loop(x);
        if !locally_undirected(v) {
            return None;
        }
        let nv = g.neighbors(v);
        if nv.len() != 3 {
            return None;
        }
        let [a, b, c] = [nv[0], nv[1], nv[2]];
        if g.has_arc(a, b) || g.has_arc(b, c) || g.has_arc(a, c) {
            return None;
        }
        if !nv.iter().all(|&x| locally_undirected(x)) {
            return None;
        }
        // the boundary may only be joined by bi-edges
        let boundary: BTreeSet<Node> = nv
            .iter()
            .flat_map(|&x| g.neighbors(x))
            .filter(|&x| x != v && !nv.contains(&x))
            .collect();
        let clean = boundary.iter().all(|&x| {
            g.succ(x)
                .iter()
                .all(|&y| !boundary.contains(&y) || g.has_arc(y, x))
        });
        clean.then_some([a, b, c])
    }

    fn try_3empty(&mut self) -> bool {
        let Some((v, [a, b, c])) = self
            .g
            .vertices()
            .find_map(|v| self.threeempty_at(v).map(|t| (v, t)))
        else {
            return false;
        };
        let g = &*self.g;
        let mut edges = vec![(a, b), (b, c)];
        edges.extend(g.neighbors(b).into_iter().map(|x| (a, x)));
        edges.extend(g.neighbors(c).into_iter().map(|x| (b, x)));
        edges.extend(g.neighbors(a).into_iter().map(|x| (c, x)));
        let arcs = self.g.arc_count();
        self.g.remove_vertex(v);
        for (x, y) in edges {
            if x != y && x != v && y != v {
                self.g.add_arc(x, y).expect("alive");
                self.g.add_arc(y, x).expect("alive");
            }
        }
        self.trace
            .events
            .push(ReductionEvent::ThreeEmpty { center: v, a, b, c });
        self.record(Rule::ThreeEmpty, 1, arcs);
        true
    }

    fn try_allcycles(&mut self) -> bool {
        let Some(cs) = self.cycles.as_deref() else {
            return false;
        };
        if !cs.complete {
            return false;
        }
        let used: HashSet<(Node, Node)> = cs.cycles.iter().flat_map(|c| c.arcs()).collect();
        let unused: Vec<(Node, Node)> = self.g.arcs().filter(|a| !used.contains(a)).collect();
        for &(u, v) in &unused {
            self.delete_arc(u, v, Rule::AllCycles);
        }
        !unused.is_empty()
    }
}

/// `N(v)` splits into two dicliques with `N_bi(v)` strictly inside the
/// first. Exact: two-colours the graph of non-bi-adjacent pairs.
fn two_dicliques_around(g: &DiGraph, nv: &[Node], bi: &[Node]) -> bool {
    let k = nv.len();
    let conflict = |i: usize, j: usize| !g.is_bi_edge(nv[i], nv[j]);
    let is_bi: Vec<bool> = nv.iter().map(|x| bi.binary_search(x).is_ok()).collect();
    let mut colour: Vec<Option<bool>> = vec![None; k];
    let mut strict = false;
    let mut free_component = false;
    for root in 0..k {
        if colour[root].is_some() {
            continue;
        }
        colour[root] = Some(true);
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            for j in 0..k {
                if j == i || !conflict(i, j) {
                    continue;
                }
                match colour[j] {
                    None => {
                        colour[j] = Some(!colour[i].unwrap());
                        comp.push(j);
                        stack.push(j);
                    }
                    Some(c) if c == colour[i].unwrap() => return false,
                    Some(_) => {}
                }
            }
        }
        // orient the component so that its bi-neighbours land in the first
        // clique
        let sides: BTreeSet<bool> = comp.iter().filter(|&&i| is_bi[i]).map(|&i| colour[i].unwrap()).collect();
        match sides.len() {
            0 => free_component = true,
            1 => {
                let first = *sides.iter().next().unwrap();
                strict |= comp.iter().any(|&i| !is_bi[i] && colour[i] == Some(first));
            }
            _ => return false,
        }
    }
    strict || free_component
}

/// Greedy colouring of the non-bi-adjacent pairs with three colours.
fn three_dicliques(g: &DiGraph, nv: &[Node]) -> bool {
    let k = nv.len();
    let conflicts: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..k).filter(|&j| j != i && !g.is_bi_edge(nv[i], nv[j])).collect())
        .collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(conflicts[i].len()));
    let mut colour = vec![usize::MAX; k];
    for i in order {
        let used: Vec<usize> = conflicts[i].iter().map(|&j| colour[j]).collect();
        match (0..3).find(|c| !used.contains(c)) {
            Some(c) => colour[i] = c,
            None => return false,
        }
    }
    true
}

/// Plain fixpoint order; ALLCYCLES lives in [`reduce_with_all_cycles`].
const ORDER: [Rule; 13] = [
    Rule::Loop,
    Rule::In0Out0,
    Rule::In1Out1,
    Rule::Subset,
    Rule::Pie,
    Rule::Dome,
    Rule::InOutDiclique,
    Rule::Core,
    Rule::Diclique23,
    Rule::Unconfined,
    Rule::Manyfold,
    Rule::FourPath,
    Rule::ThreeEmpty,
];

/// Rules that keep a complete cycle set exact (or flag it incomplete).
const ALL_CYCLES_ORDER: [Rule; 7] = [
    Rule::Loop,
    Rule::In0Out0,
    Rule::Subset,
    Rule::Pie,
    Rule::Dome,
    Rule::AllCycles,
    Rule::Unconfined,
];

/// One sweep of `rule`. Folding rules fire at most once per call and only
/// when their global preconditions hold.
pub fn apply_rule(g: &mut DiGraph, trace: &mut ReductionTrace, rule: Rule) -> bool {
    Ctx::new(g, trace, None).apply(rule)
}

/// Reduces `g` in place to a fixpoint of `rules`. Returns whether anything
/// changed.
pub fn reduce_in_place(g: &mut DiGraph, trace: &mut ReductionTrace, rules: RuleSet) -> bool {
    let mut ctx = Ctx::new(g, trace, None);
    let mut changed = false;
    loop {
        if ORDER.iter().any(|&r| rules.contains(r) && ctx.apply(r)) {
            changed = true;
            continue;
        }
        // stale labels may hide PIE arcs
        if rules.contains(Rule::Pie) && ctx.scc.is_stale(ctx.g) {
            ctx.scc.refresh_exact(ctx.g);
            if ctx.try_pie() {
                changed = true;
                continue;
            }
        }
        return changed;
    }
}

pub fn reduce(g: &DiGraph, rules: RuleSet) -> (DiGraph, ReductionTrace) {
    let mut kernel = g.clone();
    let mut trace = ReductionTrace::default();
    reduce_in_place(&mut kernel, &mut trace, rules);
    (kernel, trace)
}

/// ALLCYCLES interleaved with the rules that keep `cycles` in sync. Stops
/// early if the cycle set stops being complete.
pub fn reduce_with_all_cycles(
    g: &mut DiGraph,
    cycles: &mut CycleSet,
    trace: &mut ReductionTrace,
    rules: RuleSet,
) -> Result<bool> {
    if !cycles.complete {
        return Err(Error::IncompleteCycleSet);
    }
    let mut ctx = Ctx::new(g, trace, Some(cycles));
    let mut changed = false;
    while ALL_CYCLES_ORDER
        .iter()
        .any(|&r| rules.contains(r) && ctx.apply(r))
    {
        changed = true;
        if !ctx.cycles.as_deref().is_some_and(|c| c.complete) {
            break;
        }
    }
    Ok(changed)
}

/// Lifts a minimum DFVS of the kernel to one of the original graph.
pub fn reconstruct(trace: &ReductionTrace, kernel_solution: &[Node]) -> Result<Vec<Node>> {
    let mut s: BTreeSet<Node> = kernel_solution.iter().copied().collect();
    for ev in trace.events.iter().rev() {
        match ev {
            ReductionEvent::Loop { vertex } | ReductionEvent::CommitVertex { vertex, .. } => {
                s.insert(*vertex);
            }
            ReductionEvent::Exclude { .. } | ReductionEvent::ArcDelete { .. } => {}
            ReductionEvent::ManyFold {
                center,
                c1,
                c2,
                partner,
            } => {
                let outside: Vec<usize> = (0..c1.len()).filter(|&i| !s.contains(&c1[i])).collect();
                match outside[..] {
                    [] => s.extend(c2.iter().copied()),
                    [i] => {
                        s.extend(c2.iter().copied().filter(|&x| x != partner[i]));
                        s.insert(*center);
                    }
                    _ => {
                        return Err(Error::Reconstruction(format!(
                            "fold at {center}: {} vertices of C1 are outside the solution",
                            outside.len()
                        )))
                    }
                }
            }
            &ReductionEvent::FourPath {
                center,
                a,
                b,
                c,
                d,
            } => {
                let outside: Vec<Node> = [a, b, c, d].into_iter().filter(|x| !s.contains(x)).collect();
                match outside[..] {
                    [] => {}
                    [m] => {
                        s.remove(if m == c || m == d { &a } else { &d });
                        s.insert(center);
                    }
                    _ => {
                        return Err(Error::Reconstruction(format!(
                            "4-path at {center}: {} path vertices are outside the solution",
                            outside.len()
                        )))
                    }
                }
            }
            &ReductionEvent::ThreeEmpty { center, a, b, c } => {
                // a out forces b in, b out forces c in, c out forces a in
                let swap = if !s.contains(&a) {
                    Some(b)
                } else if !s.contains(&b) {
                    Some(c)
                } else if !s.contains(&c) {
                    Some(a)
                } else {
                    None
                };
                if let Some(x) = swap {
                    if !s.remove(&x) {
                        return Err(Error::Reconstruction(format!(
                            "3-empty at {center}: {x} is not in the solution"
                        )));
                    }
                    s.insert(center);
                }
            }
        }
    }
    Ok(s.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::enumerate_all_uncovered;
    use crate::fixtures::*;
    use crate::oracle::{is_dfvs, optimum};

    fn arcs(g: &DiGraph) -> Vec<(Node, Node)> {
        g.arcs().collect()
    }

    #[test]
    fn exclusion_bypasses_the_vertex() {
        let mut g = DiGraph::from_arcs(3, &[(0, 1), (1, 2)]).unwrap();
        exclude(&mut g, 1).unwrap();
        assert_eq!(arcs(&g), vec![(0, 2)]);

        let mut g = DiGraph::from_arcs(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        exclude(&mut g, 1).unwrap();
        assert_eq!(arcs(&g), vec![(0, 2), (0, 3)]);

        let mut g = DiGraph::from_arcs(1, &[(0, 0)]).unwrap();
        assert!(matches!(exclude(&mut g, 0), Err(Error::SelfLoop(0))));
    }

    #[test]
    fn rule_names_round_trip() {
        for r in Rule::ALL {
            assert_eq!(Rule::from_name(r.name()), Some(r));
        }
        let set = RuleSet::parse("loop, pie,4path").unwrap();
        assert_eq!(set.iter().collect::<Vec<_>>(), vec![Rule::Loop, Rule::Pie, Rule::FourPath]);
        assert!(!RuleSet::default().contains(Rule::ThreeEmpty));
        assert_eq!(RuleSet::parse("default").unwrap(), RuleSet::default());
        assert!(RuleSet::parse("bogus").is_err());
        assert_eq!(RuleSet::parse("none").unwrap(), RuleSet::empty());
    }

    #[test]
    fn loops_are_forced() {
        let mut g = DiGraph::from_arcs(3, &[(0, 0), (1, 1), (2, 2), (0, 1)]).unwrap();
        assert_eq!(optimum(&g), 3);
        let mut t = ReductionTrace::default();
        assert!(apply_rule(&mut g, &mut t, Rule::Loop));
        assert_eq!(t.forced, vec![0, 1, 2]);
        assert!(g.is_empty());
        let mut h = DiGraph::from_arcs(2, &[(0, 1)]).unwrap();
        assert!(!apply_rule(&mut h, &mut t, Rule::Loop));
    }

    #[test]
    fn in1_turns_triangle_into_two_cycle() {
        let mut g = DiGraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0), (0, 2)]).unwrap();
        let mut t = ReductionTrace::default();
        let mut ctx = Ctx::new(&mut g, &mut t, None);
        ctx.exclude(1, Rule::In1Out1);
        assert!(g.is_bi_edge(0, 2));
    }

    #[test]
    fn pie_on_two_triangles_with_stray_arc() {
        let (mut g, ids) = two_triangles();
        let mut t = ReductionTrace::default();
        assert!(!apply_rule(&mut g.clone(), &mut t, Rule::Pie));
        g.add_arc(ids.a2, ids.b2).unwrap();
        let before = optimum(&g);
        assert!(apply_rule(&mut g, &mut t, Rule::Pie));
        assert!(!g.has_arc(ids.a2, ids.b2));
        assert_eq!(optimum(&g), before);
    }

    #[test]
    fn pie_cuts_bridge_between_two_cycles() {
        let mut g = DiGraph::from_arcs(4, &[(0, 1), (1, 0), (2, 3), (3, 2), (1, 2)]).unwrap();
        let mut t = ReductionTrace::default();
        assert!(apply_rule(&mut g, &mut t, Rule::Pie));
        assert!(!g.has_arc(1, 2));
        assert_eq!(g.arc_count(), 4);
    }

    #[test]
    fn dome_examples() {
        // p -> v -> u and p -> u: (v, u) is dominated
        let mut g = DiGraph::from_arcs(3, &[(0, 1), (1, 2), (0, 2), (2, 0)]).unwrap();
        assert!(Ctx::dominated(&g, 1, 2));
        let mut t = ReductionTrace::default();
        assert!(apply_rule(&mut g, &mut t, Rule::Dome));
        assert!(!g.has_arc(1, 2));
        // tail with only bi-edge in-arcs: vacuous first condition
        let g = DiGraph::from_arcs(3, &[(0, 1), (1, 0), (1, 2), (2, 0)]).unwrap();
        assert!(Ctx::dominated(&g, 1, 2));
    }

    #[test]
    fn allcycles_on_running_example() {
        let mut g = running_example();
        let mut cs = enumerate_all_uncovered(&g, 1_000_000);
        assert!(cs.complete);
        let mut t = ReductionTrace::default();
        let mut ctx = Ctx::new(&mut g, &mut t, Some(&mut cs));
        assert!(ctx.try_allcycles());
        assert!(!g.has_arc(A, C));
        assert!(!g.has_arc(A, D));
        assert!(g.has_arc(A, B) && g.has_arc(B, A));
        assert_eq!(optimum(&g), 2);

        let mut two = DiGraph::from_arcs(2, &[(0, 1), (1, 0)]).unwrap();
        let mut cs = enumerate_all_uncovered(&two, 1000);
        let mut ctx = Ctx::new(&mut two, &mut t, Some(&mut cs));
        assert!(!ctx.try_allcycles());
    }

    #[test]
    fn incomplete_cycle_set_is_rejected() {
        let mut g = running_example();
        let mut cs = CycleSet::default();
        let mut t = ReductionTrace::default();
        assert!(matches!(
            reduce_with_all_cycles(&mut g, &mut cs, &mut t, RuleSet::default()),
            Err(Error::IncompleteCycleSet)
        ));
    }

    #[test]
    fn subset_examples() {
        let mut g = DiGraph::from_arcs(2, &[(0, 1), (1, 0)]).unwrap();
        let mut t = ReductionTrace::default();
        assert!(apply_rule(&mut g, &mut t, Rule::Subset));
        assert_eq!(t.forced.len(), 1);
        assert!(g.arc_count() == 0);

        let mut k3 = bidirected_clique(3);
        let mut t = ReductionTrace::default();
        while apply_rule(&mut k3, &mut t, Rule::Subset) {}
        assert_eq!(t.forced.len(), 2);
        assert_eq!(optimum(&bidirected_clique(3)), 2);
    }

    #[test]
    fn unconfined_examples() {
        let k3 = bidirected_clique(3);
        assert!(k3.vertices().all(|v| check_unconfined(&k3, v)));
        let dag = DiGraph::from_arcs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(dag.vertices().all(|v| !check_unconfined(&dag, v)));
    }

    #[test]
    fn unconfined_growth_branch() {
        // v <-> u, u <-> w, w <-> x, x <-> y: the path 0-1-2-3-4 as bi-edges
        let mut g = DiGraph::new(5);
        for i in 0..4 {
            g.add_arc(i, i + 1).unwrap();
            g.add_arc(i + 1, i).unwrap();
        }
        // from 1: child 0 has nothing outside, so 1 is unconfined
        assert!(check_unconfined(&g, 1));
        // from 0: child 1 has one outside neighbour (2), A grows to {0, 2};
        // then 3 is a child with outside neighbour 4, A grows to {0, 2, 4}
        // and 3 is now a child with nothing outside
        let grows = check_unconfined(&g, 0);
        let mut h = g.clone();
        h.remove_vertex(0);
        if grows {
            assert_eq!(optimum(&h) + 1, optimum(&g));
        }
    }

    #[test]
    fn straightness() {
        let g = triangle_pair();
        // a = 1, b = 2
        assert!(is_straight(&g, 1, 2).unwrap());
        assert!(matches!(is_straight(&g, 2, 1), Err(Error::MissingArc(2, 1))));
        // d=0 -> c=1 in a triangle; d has another plain out-arc, c another
        // plain in-arc
        let g = DiGraph::from_arcs(4, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 1)]).unwrap();
        assert!(!is_straight(&g, 0, 1).unwrap());
    }

    #[test]
    fn manyfold_on_two_triangles() {
        let (g, ids) = two_triangles();
        let mut k = g.clone();
        let mut t = ReductionTrace::default();
        assert!(apply_rule(&mut k, &mut t, Rule::Manyfold));
        assert_eq!(t.offset, 1);
        assert!(!k.is_alive(ids.v) && !k.is_alive(ids.b1));
        assert!(k.has_arc(ids.a1, ids.b2) && k.has_arc(ids.b3, ids.a1));
        assert_eq!(k.arc_count(), 6);
        assert_eq!(optimum(&k), 1);
        let s = reconstruct(&t, &[ids.a1]).unwrap();
        assert_eq!(s, vec![ids.a1, ids.b1]);
        assert!(is_dfvs(&g, &s));
        assert_eq!(optimum(&g), 2);
    }

    #[test]
    fn manyfold_on_triangle_pair() {
        let g = triangle_pair();
        let mut k = g.clone();
        let mut t = ReductionTrace::default();
        assert!(apply_rule(&mut k, &mut t, Rule::Manyfold));
        assert_eq!(arcs(&k), vec![(1, 3), (3, 1)]);
        assert_eq!(t.offset, 1);
        assert_eq!(reconstruct(&t, &[1]).unwrap(), vec![1, 2]);
        let s = reconstruct(&t, &[3]).unwrap();
        assert_eq!(s, vec![0, 3]);
        assert!(is_dfvs(&g, &s));
        assert_eq!(optimum(&g), 2);
    }

    fn four_path_gadget() -> DiGraph {
        // v = 0, a..d = 1..4
        let mut g = DiGraph::new(5);
        for (x, y) in [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)] {
            g.add_arc(x, y).unwrap();
            g.add_arc(y, x).unwrap();
        }
        g
    }

    #[test]
    fn four_path_isolated_gadget() {
        let g = four_path_gadget();
        let mut k = g.clone();
        let mut t = ReductionTrace::default();
        assert!(apply_rule(&mut k, &mut t, Rule::FourPath));
        assert!(!k.is_alive(0));
        assert_eq!(optimum(&k), optimum(&g));
        assert_eq!(optimum(&g), 3);
        for (sol, expect) in [
            (vec![1, 2, 3], vec![0, 2, 3]),
            (vec![1, 2, 3, 4], vec![1, 2, 3, 4]),
            (vec![2, 3, 4], vec![0, 2, 3]),
        ] {
            let s = reconstruct(&t, &sol).unwrap();
            assert_eq!(s, expect);
            assert!(is_dfvs(&g, &s));
        }
        assert!(reconstruct(&t, &[1, 2]).is_err());
    }

    #[test]
    fn four_path_needs_exact_pattern() {
        let mut g = four_path_gadget();
        g.add_arc(1, 3).unwrap();
        let mut t = ReductionTrace::default();
        // the single arc is a PIE arc, deleted before any fold is considered
        assert!(apply_rule(&mut g, &mut t, Rule::FourPath));
        assert_eq!(t.stats.fires(Rule::Pie), 1);
        assert!(g.is_alive(0));

        let mut g = four_path_gadget();
        g.add_arc(1, 3).unwrap();
        g.add_arc(3, 1).unwrap();
        let mut t = ReductionTrace::default();
        assert!(!apply_rule(&mut g, &mut t, Rule::FourPath));
    }

    #[test]
    fn three_empty_precondition() {
        // star with three leaves that are adjacent: no fire
        let mut g = DiGraph::new(4);
        for (x, y) in [(0, 1), (0, 2), (0, 3), (1, 2)] {
            g.add_arc(x, y).unwrap();
            g.add_arc(y, x).unwrap();
        }
        let mut t = ReductionTrace::default();
        assert!(!apply_rule(&mut g, &mut t, Rule::ThreeEmpty));
    }

    #[test]
    fn three_empty_keeps_the_optimum() {
        let mut g = DiGraph::new(6);
        for (x, y) in [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4), (2, 5)] {
            g.add_arc(x, y).unwrap();
            g.add_arc(y, x).unwrap();
        }
        let mut k = g.clone();
        let mut t = ReductionTrace::default();
        assert!(apply_rule(&mut k, &mut t, Rule::ThreeEmpty));
        assert_eq!(t.size_offset(), 0);
        assert_eq!(optimum(&k), 3);
        assert_eq!(optimum(&g), 3);
        // {1, 2, 4} misses c = 3, so a = 1 is traded for v
        assert_eq!(reconstruct(&t, &[1, 2, 4]).unwrap(), vec![0, 2, 4]);
        assert_eq!(reconstruct(&t, &[1, 2, 3, 4]).unwrap(), vec![1, 2, 3, 4]);
        assert!(is_dfvs(&g, &[0, 2, 4]));
    }

    #[test]
    fn reduce_examples() {
        let (k, t) = reduce(&running_example(), RuleSet::default());
        assert!(k.num_vertices() < 8);
        let kernel_opt = crate::oracle::brute_force_dfvs(&k, &Default::default()).unwrap();
        let s = reconstruct(&t, &kernel_opt.1).unwrap();
        assert_eq!(s.len(), 2);
        assert!(is_dfvs(&running_example(), &s));

        let dag = DiGraph::from_arcs(4, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let (k, t) = reduce(&dag, RuleSet::default());
        assert!(k.is_empty());
        assert!(t.forced.is_empty());

        let (k, t) = reduce(&bidirected_clique(5), RuleSet::default());
        assert!(k.is_empty());
        assert_eq!(t.size_offset(), 4);
    }

    #[test]
    fn reconstruct_identity_and_loop() {
        let t = ReductionTrace::default();
        assert_eq!(reconstruct(&t, &[3, 1]).unwrap(), vec![1, 3]);
        let mut g = DiGraph::from_arcs(2, &[(1, 1)]).unwrap();
        let mut t = ReductionTrace::default();
        apply_rule(&mut g, &mut t, Rule::Loop);
        assert_eq!(reconstruct(&t, &[]).unwrap(), vec![1]);
    }
}
