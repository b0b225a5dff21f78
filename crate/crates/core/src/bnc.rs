//! LP-based branch-and-bound for the maximum IUC with root cuts.
//!
//! One simplex instance serves the whole tree. Every row is globally valid,
//! so rows activated at one node stay; moving to another node only rewrites
//! variable bounds and re-solves from the previous basis.

use std::collections::{BTreeMap, BinaryHeap};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cuts::{generate_root_cuts, separate_stars_heuristic, CutConfig, CutFlags, CutPool};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::inequality::LinearInequality;
use crate::lp::{build_base_relaxation, solve_lazy, solve_lp, LpProblem, LpStatus, Row, Simplex};
use crate::structure::SearchCaps;

const INT_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BranchRule {
    /// Closest to 1/2, lowest id on ties.
    MostFractional,
    /// Lowest fractional id.
    FirstFractional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeOrder {
    BestBound,
    DepthFirst,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub cuts: CutConfig,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    pub branching: BranchRule,
    pub node_order: NodeOrder,
    /// Seeds the randomized restarts of the incumbent heuristic.
    pub seed: u64,
    /// Heuristic star separation at every node.
    pub node_star_separation: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            cuts: CutConfig::default(),
            node_limit: None,
            time_limit: None,
            branching: BranchRule::MostFractional,
            node_order: NodeOrder::BestBound,
            seed: 0,
            node_star_separation: false,
        }
    }
}

impl SolveConfig {
    pub fn with_flags(flags: CutFlags) -> Self {
        let mut c = SolveConfig::default();
        c.cuts.flags = flags;
        c
    }

    pub fn set_hub_caps(&mut self, caps: SearchCaps) {
        self.cuts.hub_caps = caps;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveStatus {
    Optimal,
    NodeLimit,
    TimeLimit,
}

/// Wall-clock seconds per phase.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseTimings {
    pub cut_generation: f64,
    pub root_lp: f64,
    pub tree: f64,
    pub total: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub best_value: i64,
    pub witness: Vec<Vertex>,
    pub best_bound: f64,
    pub node_count: u64,
    pub root_lp_base: f64,
    pub root_lp_with_cuts: f64,
    pub cut_counts: BTreeMap<String, usize>,
    pub residual_ot: usize,
    pub time_truncated: bool,
    pub timings: PhaseTimings,
}

impl SolveResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

/// True iff `s ∪ {c}` is an IUC, given that `s` is one.
fn can_add(g: &Graph, s: &VertexSet, c: Vertex) -> bool {
    let t = g.neighbors(c).intersection(s);
    match t.first() {
        None => true,
        Some(s0) => {
            let mut comp = g.neighbors(s0).intersection(s);
            comp.insert(s0);
            comp == t
        }
    }
}

fn grow(g: &Graph, mut s: VertexSet, order: &[Vertex]) -> VertexSet {
    let n = g.vertex_count();
    let mut into = vec![0usize; n];
    for v in s.iter() {
        for u in g.neighbors(v).iter() {
            into[u] += 1;
        }
    }
    loop {
        let mut best: Option<Vertex> = None;
        for &c in order {
            if s.contains(c) || !can_add(g, &s, c) {
                continue;
            }
            if best.is_none_or(|b| into[c] > into[b]) {
                best = Some(c);
            }
        }
        let Some(c) = best else { break };
        s.insert(c);
        for u in g.neighbors(c).iter() {
            into[u] += 1;
        }
    }
    s
}

/// Repeatedly adds the vertex that keeps the set an IUC and has the most
/// neighbors in it; ties go to the higher degree, then the lower id.
pub fn greedy_iuc(g: &Graph) -> VertexSet {
    let mut order: Vec<Vertex> = (0..g.vertex_count()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    grow(g, VertexSet::new(g.vertex_count()), &order)
}

fn incumbent_heuristic(g: &Graph, seed: u64) -> VertexSet {
    let mut best = greedy_iuc(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<Vertex> = (0..g.vertex_count()).collect();
    for _ in 0..8 {
        order.shuffle(&mut rng);
        let s = grow(g, VertexSet::new(g.vertex_count()), &order);
        if s.len() > best.len() {
            best = s;
        }
    }
    best
}

/// Rounds an LP point: keeps the vertices at 1 that form an IUC and grows
/// the set in order of decreasing value.
fn round_point(g: &Graph, x: &[f64]) -> VertexSet {
    let n = g.vertex_count();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by(|&a, &b| x[b].partial_cmp(&x[a]).expect("finite").then(a.cmp(&b)));
    let mut s = VertexSet::new(n);
    for &v in &order {
        if x[v] < 0.5 {
            break;
        }
        if can_add(g, &s, v) {
            s.insert(v);
        }
    }
    grow(g, s, &order)
}

struct Node {
    bound: i64,
    depth: u32,
    seq: u64,
    fixes: Vec<(Vertex, bool)>,
}

impl Node {
    fn key(&self, order: NodeOrder) -> (i64, u32, u64) {
        match order {
            NodeOrder::BestBound => (self.bound, self.depth, self.seq),
            NodeOrder::DepthFirst => (self.depth as i64, 0, self.seq),
        }
    }
}

struct Queued {
    key: (i64, u32, u64),
    node: Node,
}

impl PartialEq for Queued {
    fn eq(&self, o: &Self) -> bool {
        self.key == o.key
    }
}
impl Eq for Queued {}
impl PartialOrd for Queued {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Queued {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.key.cmp(&o.key)
    }
}

/// Node LP over a fixed row list with lazily activated rows.
struct NodeLp {
    simplex: Simplex<f64>,
    rows: Vec<Row<f64>>,
    active: Vec<bool>,
    fixed: Vec<Option<bool>>,
    batch: usize,
}

impl NodeLp {
    fn new(n: usize, rows: Vec<Row<f64>>) -> Self {
        let active = vec![false; rows.len()];
        NodeLp {
            simplex: Simplex::new(vec![0.0; n], vec![1.0; n], vec![1.0; n]),
            rows,
            active,
            fixed: vec![None; n],
            batch: n.max(8),
        }
    }

    fn apply(&mut self, fixes: &[(Vertex, bool)]) {
        let mut want = vec![None; self.fixed.len()];
        for &(v, b) in fixes {
            want[v] = Some(b);
        }
        for (v, w) in want.into_iter().enumerate() {
            if w != self.fixed[v] {
                let (lo, up) = match w {
                    None => (0.0, 1.0),
                    Some(true) => (1.0, 1.0),
                    Some(false) => (0.0, 0.0),
                };
                self.simplex.set_bounds(v, lo, up);
                self.fixed[v] = w;
            }
        }
    }

    fn solve(&mut self) -> LpStatus {
        let st = solve_lazy(&mut self.simplex, &self.rows, &mut self.active, self.batch);
        if st == LpStatus::IterationLimit {
            // numerical trouble: start over from the active rows
            let n = self.fixed.len();
            let (lo, up): (Vec<f64>, Vec<f64>) = self
                .fixed
                .iter()
                .map(|f| match f {
                    None => (0.0, 1.0),
                    Some(true) => (1.0, 1.0),
                    Some(false) => (0.0, 0.0),
                })
                .unzip();
            self.simplex = Simplex::new(lo, up, vec![1.0; n]);
            for (i, r) in self.rows.iter().enumerate() {
                if self.active[i] {
                    self.simplex.add_row(r);
                }
            }
            return solve_lazy(&mut self.simplex, &self.rows, &mut self.active, self.batch);
        }
        st
    }

    /// Deactivates rows with clear slack once the LP has grown large.
    fn prune(&mut self) {
        if self.simplex.row_count() > 3 * self.fixed.len() {
            for tag in self.simplex.drop_loose_rows(&1e-3) {
                self.active[tag] = false;
            }
        }
    }

    fn add_cuts(&mut self, cuts: &[LinearInequality]) {
        for c in cuts {
            let r = Row::from_inequality(c);
            self.simplex.add_tagged_row(&r, self.rows.len());
            self.rows.push(r);
            self.active.push(true);
        }
    }
}

fn pick_branch(x: &[f64], rule: BranchRule) -> Option<Vertex> {
    let frac = |v: f64| (v - v.round()).abs() > INT_TOL;
    match rule {
        BranchRule::FirstFractional => (0..x.len()).find(|&j| frac(x[j])),
        BranchRule::MostFractional => {
            let mut best: Option<(f64, Vertex)> = None;
            for (j, &v) in x.iter().enumerate() {
                if frac(v) {
                    let d = (v - 0.5).abs();
                    if best.is_none_or(|(bd, _)| d < bd - 1e-12) {
                        best = Some((d, j));
                    }
                }
            }
            best.map(|(_, j)| j)
        }
    }
}

fn problem_of(rows: &[LinearInequality], n: usize) -> LpProblem<f64> {
    let mut p = LpProblem::unit_box(n);
    for r in rows {
        p.push_inequality(r);
    }
    p
}

fn lp_value(rows: &[LinearInequality], n: usize) -> f64 {
    solve_lp(&problem_of(rows, n)).objective
}

/// Root relaxations without cuts (every open-triangle row) and with the
/// configured cuts (residual open triangles plus the pool).
pub fn root_problems(g: &Graph, cfg: &SolveConfig) -> (LpProblem<f64>, LpProblem<f64>, CutPool) {
    let pool = generate_root_cuts(g, &cfg.cuts);
    let with_cuts = problem_of(&pool.formulation_rows(), g.vertex_count());
    (build_base_relaxation(g), with_cuts, pool)
}

/// Root LP values without and with the configured cuts.
pub fn root_gap_report(g: &Graph, cfg: &SolveConfig) -> (f64, f64) {
    let (base, cut, _) = root_problems(g, cfg);
    (solve_lp(&base).objective, solve_lp(&cut).objective)
}

/// Exact maximum IUC by branch-and-cut with the configured root cuts.
pub fn solve_max_iuc(g: &Graph, cfg: &SolveConfig) -> SolveResult {
    let start = Instant::now();
    let n = g.vertex_count();
    let pool: CutPool = generate_root_cuts(g, &cfg.cuts);
    let cut_time = start.elapsed();
    let cut_counts = pool
        .counts
        .iter()
        .map(|(f, c)| (f.name().to_string(), *c))
        .collect();
    let rows: Vec<Row<f64>> = pool
        .formulation_rows()
        .iter()
        .map(Row::from_inequality)
        .collect();

    let mut incumbent = incumbent_heuristic(g, cfg.seed);
    let mut lp = NodeLp::new(n, rows);
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    let root = Node {
        bound: n as i64,
        depth: 0,
        seq,
        fixes: Vec::new(),
    };
    heap.push(Queued {
        key: root.key(cfg.node_order),
        node: root,
    });
    let mut nodes = 0u64;
    let mut root_lp = f64::NAN;
    let mut root_time = Duration::ZERO;
    let mut status = SolveStatus::Optimal;
    let tree_start = Instant::now();

    while let Some(Queued { node, .. }) = heap.pop() {
        if node.bound <= incumbent.len() as i64 {
            continue;
        }
        if cfg.node_limit.is_some_and(|l| nodes >= l) {
            heap.push(Queued {
                key: node.key(cfg.node_order),
                node,
            });
            status = SolveStatus::NodeLimit;
            break;
        }
        if cfg.time_limit.is_some_and(|t| start.elapsed() >= t) {
            heap.push(Queued {
                key: node.key(cfg.node_order),
                node,
            });
            status = SolveStatus::TimeLimit;
            break;
        }
        nodes += 1;
        lp.prune();
        lp.apply(&node.fixes);
        let mut st = lp.solve();
        if cfg.node_star_separation {
            for _ in 0..10 {
                if st != LpStatus::Optimal {
                    break;
                }
                let cuts = separate_stars_heuristic(g, &lp.simplex.values());
                if cuts.is_empty() {
                    break;
                }
                lp.add_cuts(&cuts);
                st = lp.solve();
            }
        }
        let (bound, x) = match st {
            LpStatus::Optimal => {
                let obj = lp.simplex.objective_value();
                if node.depth == 0 {
                    root_lp = obj;
                    root_time = tree_start.elapsed();
                }
                ((obj + INT_TOL).floor() as i64, Some(lp.simplex.values()))
            }
            LpStatus::Infeasible => continue,
            // no usable LP: keep the inherited bound and branch blindly
            LpStatus::IterationLimit => (node.bound, None),
        };
        let bound = bound.min(node.bound);
        if bound <= incumbent.len() as i64 {
            continue;
        }
        let branch = match &x {
            Some(x) => {
                let r = round_point(g, x);
                if r.len() > incumbent.len() {
                    incumbent = r;
                }
                match pick_branch(x, cfg.branching) {
                    Some(j) => Some(j),
                    None => {
                        let s = VertexSet::from_iter_in(n, (0..n).filter(|&j| x[j] > 0.5));
                        assert!(g.is_iuc(&s), "integral LP point is not an IUC");
                        if s.len() > incumbent.len() {
                            incumbent = s;
                        }
                        None
                    }
                }
            }
            None => (0..n).find(|&j| node.fixes.iter().all(|&(v, _)| v != j)),
        };
        let Some(j) = branch else { continue };
        if bound <= incumbent.len() as i64 {
            continue;
        }
        for val in [false, true] {
            seq += 1;
            let mut fixes = node.fixes.clone();
            fixes.push((j, val));
            let child = Node {
                bound,
                depth: node.depth + 1,
                seq,
                fixes,
            };
            heap.push(Queued {
                key: child.key(cfg.node_order),
                node: child,
            });
        }
    }

    let best = incumbent.len() as i64;
    let open_bound = heap
        .iter()
        .filter(|q| q.node.bound > best)
        .map(|q| q.node.bound)
        .max();
    let best_bound = match (status, open_bound) {
        (SolveStatus::Optimal, _) | (_, None) => best as f64,
        (_, Some(b)) => b as f64,
    };
    if status != SolveStatus::Optimal && open_bound.is_none() {
        status = SolveStatus::Optimal;
    }
    let tree_time = tree_start.elapsed();
    let root_lp_with_cuts = if root_lp.is_nan() {
        lp_value(&pool.formulation_rows(), n)
    } else {
        root_lp
    };
    let root_lp_base = if cfg.cuts.flags == CutFlags::NONE {
        root_lp_with_cuts
    } else {
        solve_lp(&build_base_relaxation(g)).objective
    };
    debug_assert!(g.is_iuc(&incumbent));
    SolveResult {
        status,
        best_value: best,
        witness: incumbent.to_vec(),
        best_bound,
        node_count: nodes,
        root_lp_base,
        root_lp_with_cuts,
        cut_counts,
        residual_ot: pool.residual_ot.len(),
        time_truncated: pool.time_truncated,
        timings: PhaseTimings {
            cut_generation: cut_time.as_secs_f64(),
            root_lp: root_time.as_secs_f64(),
            tree: tree_time.as_secs_f64(),
            total: start.elapsed().as_secs_f64(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::iuc_number;

    #[test]
    fn small_graphs() {
        for (g, want) in [
            (Graph::cycle(4), 2),
            (Graph::cycle(7), 4),
            (Graph::complete_bipartite(3, 3), 3),
            (Graph::complete(5), 5),
            (Graph::empty(4), 4),
            (Graph::empty(0), 0),
        ] {
            for (_, flags) in CutFlags::arms() {
                let r = solve_max_iuc(&g, &SolveConfig::with_flags(flags));
                assert_eq!(r.best_value, want);
                assert_eq!(r.status, SolveStatus::Optimal);
                assert!(g.is_iuc(&VertexSet::from_iter_in(
                    g.vertex_count(),
                    r.witness.clone()
                )));
            }
        }
    }

    #[test]
    fn c4_gap() {
        let mut cfg = SolveConfig::with_flags(CutFlags::ALL);
        let (base, cut) = root_gap_report(&Graph::cycle(4), &cfg);
        assert!((base - 8.0 / 3.0).abs() < 1e-9 && (cut - 2.0).abs() < 1e-9);
        cfg.node_star_separation = true;
        assert_eq!(solve_max_iuc(&Graph::cycle(4), &cfg).best_value, 2);
    }

    #[test]
    fn matches_oracle_on_random_graphs() {
        let mut state = 11u64;
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 33) as usize
        };
        for _ in 0..20 {
            let n = 8 + next() % 10;
            let p = 1 + next() % 9;
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if next() % 10 < p {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let want = iuc_number(&g).unwrap().0 as i64;
            for (_, flags) in CutFlags::arms() {
                let mut cfg = SolveConfig::with_flags(flags);
                cfg.branching = BranchRule::FirstFractional;
                assert_eq!(solve_max_iuc(&g, &cfg).best_value, want);
                cfg.node_order = NodeOrder::DepthFirst;
                assert_eq!(solve_max_iuc(&g, &cfg).best_value, want);
            }
        }
    }

    #[test]
    fn limits_report_bounds() {
        let g = Graph::cycle(11).complement();
        let cfg = SolveConfig {
            node_limit: Some(1),
            ..SolveConfig::default()
        };
        let r = solve_max_iuc(&g, &cfg);
        assert!(r.best_value as f64 <= r.best_bound + 1e-6);
        assert!(r.node_count <= 1);
    }
}
