//! Root cut generation and the tractable separation routines.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, OpenTriangle, Vertex};
use crate::inequality::{
    antihole_inequality, double_star_inequalities, fan_inequality, hole_inequality, ot_inequality,
    star_inequality, wheel_inequality, Family, LinearInequality,
};
use crate::lp::Scalar;
use crate::structure::{
    double_stars_from, enumerate_4holes, fans_at, find_anti_holes_filtered, find_holes,
    maximal_star_at, wheels_at, SearchCaps, StructureWitness,
};

/// Which cut families are added at the root.
///
/// `ha`: greedy 4-hole cover, longer holes and odd anti-holes.
/// `sd`: maximal stars with at least three leaves and their double stars.
/// `fw`: fans and wheels found in hub neighborhoods.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CutFlags {
    pub ha: bool,
    pub sd: bool,
    pub fw: bool,
}

impl CutFlags {
    pub const NONE: CutFlags = CutFlags {
        ha: false,
        sd: false,
        fw: false,
    };
    pub const ALL: CutFlags = CutFlags {
        ha: true,
        sd: true,
        fw: true,
    };

    /// The eight ablation arms in reporting order.
    pub fn arms() -> [(&'static str, CutFlags); 8] {
        let f = |ha, sd, fw| CutFlags { ha, sd, fw };
        [
            ("Base", f(false, false, false)),
            ("+HA", f(true, false, false)),
            ("+SD", f(false, true, false)),
            ("+FW", f(false, false, true)),
            ("+HA&SD", f(true, true, false)),
            ("+HA&FW", f(true, false, true)),
            ("+SD&FW", f(false, true, true)),
            ("+All", f(true, true, true)),
        ]
    }

    /// Parses `ha,sd,fw`, `all` or `none` (comma separated, case-insensitive).
    pub fn parse(s: &str) -> Option<CutFlags> {
        let mut f = CutFlags::NONE;
        for part in s.split(',').map(|p| p.trim().to_ascii_lowercase()) {
            match part.as_str() {
                "" | "none" => {}
                "all" => f = CutFlags::ALL,
                "ha" => f.ha = true,
                "sd" => f.sd = true,
                "fw" => f.fw = true,
                _ => return None,
            }
        }
        Some(f)
    }

    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        if self.ha {
            parts.push("ha");
        }
        if self.sd {
            parts.push("sd");
        }
        if self.fw {
            parts.push("fw");
        }
        if parts.is_empty() {
            "none".into()
        } else {
            parts.join(",")
        }
    }
}

/// Parameters of root cut generation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutConfig {
    pub flags: CutFlags,
    pub hole_cover_greedy: bool,
    /// Minimum ring (cycle or path) length of generated fans and wheels.
    pub fan_wheel_min_ring: usize,
    /// Budget per hub, shared by the cycle search and then the path search.
    pub hub_caps: SearchCaps,
    /// Budget for the global searches for long holes and odd anti-holes.
    pub global_caps: SearchCaps,
}

impl Default for CutConfig {
    fn default() -> Self {
        CutConfig {
            flags: CutFlags::NONE,
            hole_cover_greedy: true,
            fan_wheel_min_ring: 7,
            hub_caps: SearchCaps::default(),
            global_caps: SearchCaps::default(),
        }
    }
}

/// Cuts for the root together with the open-triangle rows they leave behind.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CutPool {
    pub inequalities: Vec<LinearInequality>,
    pub counts: BTreeMap<Family, usize>,
    /// Open triangles dominated by a selected 4-hole.
    pub covered: Vec<OpenTriangle>,
    /// Open triangles that stay in the formulation as OT rows.
    pub residual_ot: Vec<OpenTriangle>,
    /// True when some search stopped on its time budget, which makes the pool
    /// depend on machine speed.
    pub time_truncated: bool,
    pub generation_time: Duration,
}

impl CutPool {
    fn push(&mut self, ineq: LinearInequality) {
        *self.counts.entry(ineq.family).or_insert(0) += 1;
        self.inequalities.push(ineq);
    }

    pub fn count(&self, f: Family) -> usize {
        self.counts.get(&f).copied().unwrap_or(0)
    }

    /// Residual OT rows followed by the pool, as the formulation uses them.
    pub fn formulation_rows(&self) -> Vec<LinearInequality> {
        self.residual_ot
            .iter()
            .map(ot_inequality)
            .chain(self.inequalities.iter().cloned())
            .collect()
    }
}

/// The four open triangles dominated by the 4-hole `[a, c, b, d]`.
pub fn triangles_of_4hole(h: &StructureWitness) -> [OpenTriangle; 4] {
    let (a, c, b, d) = (h.ring[0], h.ring[1], h.ring[2], h.ring[3]);
    let t = |center, x: Vertex, y: Vertex| OpenTriangle {
        center,
        leaf_a: x.min(y),
        leaf_b: x.max(y),
    };
    [t(c, a, b), t(d, a, b), t(a, c, d), t(b, c, d)]
}

/// Greedy set cover: repeatedly selects the 4-hole covering the most
/// still-uncovered open triangles, lowest index first on ties, until no hole
/// covers a new one. Returns the selected holes and the uncovered triangles.
pub fn greedy_4hole_cover(
    holes: &[StructureWitness],
    triangles: &[OpenTriangle],
) -> (Vec<StructureWitness>, Vec<OpenTriangle>) {
    let index: HashMap<OpenTriangle, usize> =
        triangles.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let covers: Vec<Vec<usize>> = holes
        .iter()
        .map(|h| {
            let mut ids: Vec<usize> = triangles_of_4hole(h)
                .iter()
                .filter_map(|t| index.get(t).copied())
                .collect();
            ids.sort_unstable();
            ids.dedup();
            ids
        })
        .collect();
    let mut covered = vec![false; triangles.len()];
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> = covers
        .iter()
        .enumerate()
        .map(|(i, c)| (c.len(), Reverse(i)))
        .collect();
    let mut selected = Vec::new();
    while let Some((key, Reverse(i))) = heap.pop() {
        if key == 0 {
            break;
        }
        let fresh = covers[i].iter().filter(|&&t| !covered[t]).count();
        if fresh < key {
            heap.push((fresh, Reverse(i)));
            continue;
        }
        for &t in &covers[i] {
            covered[t] = true;
        }
        selected.push(holes[i].clone());
    }
    let residual = triangles
        .iter()
        .zip(&covered)
        .filter(|(_, c)| !**c)
        .map(|(t, _)| *t)
        .collect();
    (selected, residual)
}

fn fan_is_facet(len: usize) -> bool {
    len % 3 != 2
}

fn wheel_is_facet(len: usize) -> bool {
    !len.is_multiple_of(3) || (len / 3) % 2 == 1
}

/// Per-hub fan and wheel search: cycles first, then paths with what is left
/// of the shared budget. Only rings meeting the facet conditions count.
fn fans_and_wheels(g: &Graph, hub: Vertex, cfg: &CutConfig) -> (Vec<StructureWitness>, bool) {
    let min = cfg.fan_wheel_min_ring.max(4);
    let start = Instant::now();
    let caps = cfg.hub_caps;
    let (mut out, t1) =
        wheels_at(g, hub, min, caps, &|r| wheel_is_facet(r.len())).expect("ring length checked");
    let left = SearchCaps {
        max_count: caps.max_count.saturating_sub(out.len()),
        time_budget: caps.time_budget.map(|d| d.saturating_sub(start.elapsed())),
    };
    let mut t2 = false;
    if left.max_count > 0 && left.time_budget.is_none_or(|d| !d.is_zero()) {
        let (fans, t) =
            fans_at(g, hub, min, left, &|p| fan_is_facet(p.len())).expect("ring length checked");
        out.extend(fans);
        t2 = t;
    } else if left.max_count > 0 {
        t2 = true;
    }
    (out, t1 || t2)
}

/// Cut pool for the root node according to `cfg.flags`.
pub fn generate_root_cuts(g: &Graph, cfg: &CutConfig) -> CutPool {
    let start = Instant::now();
    let mut pool = CutPool::default();
    let triangles = g.open_triangles();
    if cfg.flags.ha {
        let holes = enumerate_4holes(g);
        let (selected, residual) = if cfg.hole_cover_greedy {
            greedy_4hole_cover(&holes, &triangles)
        } else {
            (holes, Vec::new())
        };
        let residual = if cfg.hole_cover_greedy {
            residual
        } else {
            let mut covered = HashSet::new();
            for h in &selected {
                covered.extend(triangles_of_4hole(h));
            }
            triangles
                .iter()
                .filter(|t| !covered.contains(t))
                .copied()
                .collect()
        };
        let residual_set: HashSet<_> = residual.iter().copied().collect();
        pool.covered = triangles
            .iter()
            .filter(|t| !residual_set.contains(t))
            .copied()
            .collect();
        pool.residual_ot = residual;
        for h in &selected {
            pool.push(hole_inequality(h).expect("4-hole"));
        }
        let long = find_holes(g, 5, cfg.global_caps, &|r| r.len() % 3 != 0).expect("min_len 5");
        for h in &long {
            pool.push(hole_inequality(h).expect("hole"));
        }
        let anti = find_anti_holes_filtered(g, 7, cfg.global_caps, &|r| r.len() % 2 == 1)
            .expect("min_len 7");
        for a in &anti {
            pool.push(antihole_inequality(a).expect("anti-hole"));
        }
    } else {
        pool.residual_ot = triangles;
    }
    if cfg.flags.sd {
        let mut seen = HashSet::new();
        for h in g.vertices().iter() {
            let Some(star) = maximal_star_at(g, h, &[]) else {
                continue;
            };
            if star.leaves.len() < 3 {
                continue;
            }
            for d in double_stars_from(g, &star).expect("star witness") {
                for ineq in double_star_inequalities(&d).expect("double star") {
                    let key: Vec<(Vertex, i64)> =
                        ineq.coeffs.iter().map(|(&v, &c)| (v, c)).collect();
                    if seen.insert(key) {
                        pool.push(ineq);
                    }
                }
            }
            pool.push(star_inequality(&star).expect("star"));
        }
    }
    if cfg.flags.fw {
        let hubs: Vec<Vertex> = g.vertices().to_vec();
        let found: Vec<(Vec<StructureWitness>, bool)> = hubs
            .par_iter()
            .map(|&h| fans_and_wheels(g, h, cfg))
            .collect();
        for (ws, truncated) in found {
            pool.time_truncated |= truncated;
            for w in ws {
                let ineq = match w.kind {
                    crate::structure::StructureKind::Wheel => wheel_inequality(&w),
                    _ => fan_inequality(&w),
                };
                pool.push(ineq.expect("fan or wheel"));
            }
        }
    }
    pool.generation_time = start.elapsed();
    pool
}

fn threshold<T: Scalar>() -> T {
    if T::tol().is_zero() {
        T::zero()
    } else {
        T::from_i64(1) / T::from_i64(1_000_000)
    }
}

/// Most violated star inequality with hub `hub` and leaves drawn from the
/// independent set `candidates`, if its violation exceeds 1e-6 (0 in exact
/// arithmetic). Leaf `i` is used iff `x_i + x_hub > 1`.
pub fn separate_star_exact_independent<T: Scalar>(
    hub: Vertex,
    candidates: &[Vertex],
    x: &[T],
) -> Option<LinearInequality> {
    let one = T::one();
    let leaves: Vec<Vertex> = candidates
        .iter()
        .copied()
        .filter(|&i| x[i].clone() + x[hub].clone() > one)
        .collect();
    if leaves.len() < 2 {
        return None;
    }
    let ineq = star_inequality(&StructureWitness::star(hub, leaves)).expect("two leaves");
    (lhs(&ineq, x) - T::from_i64(ineq.rhs) > threshold()).then_some(ineq)
}

/// Most violated double-star inequality with heavy hub `hub`, light hub
/// `second`, and leaves drawn from the independent set `candidates`.
pub fn separate_double_star_exact<T: Scalar>(
    hub: Vertex,
    second: Vertex,
    candidates: &[Vertex],
    x: &[T],
) -> Option<LinearInequality> {
    if candidates.len() < 2 {
        return None;
    }
    let one = T::one();
    let mut terms: Vec<(T, Vertex)> = candidates
        .iter()
        .map(|&i| (x[i].clone() + x[hub].clone() - one.clone(), i))
        .collect();
    terms.sort_by(|a, b| {
        b.0.partial_cmp(&a.0)
            .expect("comparable")
            .then(a.1.cmp(&b.1))
    });
    let positive = terms.iter().filter(|t| t.0 > T::zero()).count();
    let take = positive.max(2);
    let leaves: Vec<Vertex> = terms[..take].iter().map(|t| t.1).collect();
    let [heavy, _] = double_star_inequalities(&StructureWitness::double_star(hub, second, leaves))
        .expect("two leaves");
    (lhs(&heavy, x) - T::from_i64(heavy.rhs) > threshold()).then_some(heavy)
}

fn lhs<T: Scalar>(ineq: &LinearInequality, x: &[T]) -> T {
    ineq.coeffs.iter().fold(T::zero(), |acc, (&v, &c)| {
        acc + T::from_i64(c) * x[v].clone()
    })
}

/// Heuristic star separation on a general graph: for each hub, a maximal
/// independent leaf set is grown greedily in order of decreasing `x`, then
/// separated exactly over that set.
pub fn separate_stars_heuristic(g: &Graph, x: &[f64]) -> Vec<LinearInequality> {
    let mut out = Vec::new();
    for h in g.vertices().iter() {
        if x[h] <= 1e-9 {
            continue;
        }
        let mut order: Vec<Vertex> = g.neighbors(h).to_vec();
        order.sort_by(|&a, &b| x[b].partial_cmp(&x[a]).expect("finite").then(a.cmp(&b)));
        let Some(star) = maximal_star_at(g, h, &order) else {
            continue;
        };
        if let Some(cut) = separate_star_exact_independent(h, &star.leaves, x) {
            out.push(cut);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cover_examples() {
        let c4 = Graph::cycle(4);
        let (sel, res) = greedy_4hole_cover(&enumerate_4holes(&c4), &c4.open_triangles());
        assert_eq!((sel.len(), res.len()), (1, 0));
        let p3 = Graph::path(3);
        let (sel, res) = greedy_4hole_cover(&enumerate_4holes(&p3), &p3.open_triangles());
        assert_eq!((sel.len(), res.len()), (0, 1));
        // K_{2,3} has 9 open triangles; each 4-hole dominates 4 of them
        let k23 = Graph::complete_bipartite(2, 3);
        let ts = k23.open_triangles();
        assert_eq!(ts.len(), 9);
        let (sel, res) = greedy_4hole_cover(&enumerate_4holes(&k23), &ts);
        assert_eq!(sel.len(), 3);
        assert!(res.is_empty());
    }

    #[test]
    fn star_separation() {
        // hub 0 at 1, four leaves at 1/3
        let x = [1.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0];
        let cut = separate_star_exact_independent(0, &[1, 2, 3, 4], &x).unwrap();
        assert!((cut.violation(&x) - 1.0 / 3.0).abs() < 1e-9);
        let x0 = [0.0, 1.0, 1.0, 1.0];
        assert!(separate_star_exact_independent(0, &[1, 2, 3], &x0).is_none());
        let xh = [0.5, 0.4, 0.4, 0.4];
        assert!(separate_star_exact_independent(0, &[1, 2, 3], &xh).is_none());
    }

    #[test]
    fn double_star_separation() {
        // C4 at (1/2, ..., 1/2) + epsilon: 4-hole row violated
        let x = [0.6, 0.6, 0.6, 0.6];
        let cut = separate_double_star_exact(0, 2, &[1, 3], &x).unwrap();
        assert_eq!(cut.rhs, 2);
        assert!(separate_double_star_exact(0, 2, &[1, 3], &[0.5; 4]).is_none());
    }

    #[test]
    fn flags_parse() {
        assert_eq!(CutFlags::parse("all"), Some(CutFlags::ALL));
        assert_eq!(CutFlags::parse("none"), Some(CutFlags::NONE));
        let f = CutFlags::parse("ha,FW").unwrap();
        assert!(f.ha && f.fw && !f.sd);
        assert!(CutFlags::parse("xx").is_none());
        assert_eq!(CutFlags::arms()[7].0, "+All");
    }

    #[test]
    fn root_cuts_on_wheel_and_cycle() {
        let mut edges: Vec<_> = (1..=9).map(|i| (0, i)).collect();
        edges.extend((0..9).map(|i| (1 + i, 1 + (i + 1) % 9)));
        let w9 = Graph::from_edges(10, &edges).unwrap();
        let cfg = CutConfig {
            flags: CutFlags::ALL,
            ..CutConfig::default()
        };
        let pool = generate_root_cuts(&w9, &cfg);
        assert!(pool.count(Family::Wheel) >= 1);
        for q in &pool.inequalities {
            assert!(
                crate::inequality::validate_inequality(&w9, q).unwrap(),
                "{q}"
            );
        }
        let c7 = Graph::cycle(7);
        let pool = generate_root_cuts(&c7, &cfg);
        assert_eq!(pool.count(Family::Fan) + pool.count(Family::Wheel), 0);
        assert_eq!(pool.count(Family::Hole), 1);
        assert_eq!(pool.residual_ot.len(), 7);
    }
}
