//! Detection of the substructures that generate cuts: holes, anti-holes,
//! stars, double-stars, fans and wheels.
//!
//! Chordless paths and cycles are grown depth-first while a blocked set holds
//! the closed neighborhoods of all interior vertices, so every extension is
//! chordless by construction.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StructureKind {
    Hole,
    AntiHole,
    Star,
    DoubleStar,
    Fan,
    Wheel,
}

/// A detected structure with its vertex roles.
///
/// `ring` is the cycle order (holes, anti-holes in the complement, wheels) or
/// path order (fans). `leaves` is the independent leaf set of stars.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StructureWitness {
    pub kind: StructureKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hub: Option<Vertex>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub second_hub: Option<Vertex>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub ring: Vec<Vertex>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub leaves: Vec<Vertex>,
}

impl StructureWitness {
    pub fn hole(ring: Vec<Vertex>) -> Self {
        Self::with_ring(StructureKind::Hole, None, ring)
    }

    pub fn anti_hole(ring: Vec<Vertex>) -> Self {
        Self::with_ring(StructureKind::AntiHole, None, ring)
    }

    pub fn fan(hub: Vertex, path: Vec<Vertex>) -> Self {
        Self::with_ring(StructureKind::Fan, Some(hub), path)
    }

    pub fn wheel(hub: Vertex, ring: Vec<Vertex>) -> Self {
        Self::with_ring(StructureKind::Wheel, Some(hub), ring)
    }

    pub fn star(hub: Vertex, mut leaves: Vec<Vertex>) -> Self {
        leaves.sort_unstable();
        StructureWitness {
            kind: StructureKind::Star,
            hub: Some(hub),
            second_hub: None,
            ring: Vec::new(),
            leaves,
        }
    }

    pub fn double_star(hub: Vertex, second_hub: Vertex, mut leaves: Vec<Vertex>) -> Self {
        leaves.sort_unstable();
        StructureWitness {
            kind: StructureKind::DoubleStar,
            hub: Some(hub),
            second_hub: Some(second_hub),
            ring: Vec::new(),
            leaves,
        }
    }

    fn with_ring(kind: StructureKind, hub: Option<Vertex>, ring: Vec<Vertex>) -> Self {
        StructureWitness {
            kind,
            hub,
            second_hub: None,
            ring,
            leaves: Vec::new(),
        }
    }

    /// All vertices the structure touches.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self
            .hub
            .into_iter()
            .chain(self.second_hub)
            .chain(self.ring.iter().copied())
            .chain(self.leaves.iter().copied())
            .collect();
        v.sort_unstable();
        v
    }

    /// Re-checks the structure's defining invariants against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidWitness(format!("{:?}: {msg}", self.kind)));
        let n = g.vertex_count();
        let all = self.vertices();
        if all.iter().any(|&v| v >= n) {
            return bad("vertex out of range".into());
        }
        if all.windows(2).any(|w| w[0] == w[1]) {
            return bad("repeated vertex".into());
        }
        match self.kind {
            StructureKind::Hole => {
                if self.ring.len() < 4 || !is_chordless_cycle(g, &self.ring) {
                    return bad(format!(
                        "{:?} is not a chordless cycle of length >= 4",
                        self.ring
                    ));
                }
            }
            StructureKind::AntiHole => {
                if self.ring.len() < 6 || !is_chordless_cycle(&g.complement(), &self.ring) {
                    return bad(format!(
                        "{:?} is not an anti-hole of length >= 6",
                        self.ring
                    ));
                }
            }
            StructureKind::Star | StructureKind::DoubleStar => {
                let hubs: Vec<Vertex> = self.hub.into_iter().chain(self.second_hub).collect();
                let expected = if self.kind == StructureKind::Star {
                    1
                } else {
                    2
                };
                if hubs.len() != expected {
                    return bad("wrong number of hubs".into());
                }
                if self.leaves.len() < 2 {
                    return bad("fewer than two leaves".into());
                }
                if !is_independent(g, &self.leaves) {
                    return bad("leaves not independent".into());
                }
                for &h in &hubs {
                    if self.leaves.iter().any(|&l| !g.has_edge(h, l)) {
                        return bad(format!("leaf not adjacent to hub {h}"));
                    }
                }
                if hubs.len() == 2 && g.has_edge(hubs[0], hubs[1]) {
                    return bad("hubs adjacent".into());
                }
            }
            StructureKind::Fan | StructureKind::Wheel => {
                let Some(h) = self.hub else {
                    return bad("missing hub".into());
                };
                if self.ring.len() < 4 {
                    return bad("ring shorter than 4".into());
                }
                let ok = if self.kind == StructureKind::Fan {
                    is_chordless_path(g, &self.ring)
                } else {
                    is_chordless_cycle(g, &self.ring)
                };
                if !ok {
                    return bad(format!("{:?} not chordless", self.ring));
                }
                if self.ring.iter().any(|&v| !g.has_edge(h, v)) {
                    return bad("ring vertex not adjacent to hub".into());
                }
            }
        }
        Ok(())
    }
}

pub fn is_independent(g: &Graph, vs: &[Vertex]) -> bool {
    vs.iter()
        .enumerate()
        .all(|(i, &a)| vs[i + 1..].iter().all(|&b| !g.has_edge(a, b)))
}

/// True iff consecutive vertices are adjacent and no other pair is.
pub fn is_chordless_path(g: &Graph, p: &[Vertex]) -> bool {
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if g.has_edge(p[i], p[j]) != (j == i + 1) {
                return false;
            }
        }
    }
    true
}

pub fn is_chordless_cycle(g: &Graph, c: &[Vertex]) -> bool {
    let k = c.len();
    if k < 3 {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.has_edge(c[i], c[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

/// Caps for a capped enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchCaps {
    pub max_count: usize,
    pub time_budget: Option<Duration>,
}

impl SearchCaps {
    pub const UNLIMITED: SearchCaps = SearchCaps {
        max_count: usize::MAX,
        time_budget: None,
    };

    pub fn count(max_count: usize) -> Self {
        SearchCaps {
            max_count,
            time_budget: None,
        }
    }
}

impl Default for SearchCaps {
    /// 50 structures or one second per call.
    fn default() -> Self {
        SearchCaps {
            max_count: 50,
            time_budget: Some(Duration::from_secs(1)),
        }
    }
}

/// Outcome of a capped search: the structures plus whether the clock cut it short.
#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    pub found: Vec<Vec<Vertex>>,
    pub timed_out: bool,
}

struct Budget {
    max: usize,
    deadline: Option<Instant>,
    ticks: u32,
    timed_out: bool,
}

impl Budget {
    fn new(caps: SearchCaps) -> Self {
        Budget {
            max: caps.max_count,
            deadline: caps.time_budget.map(|d| Instant::now() + d),
            ticks: 0,
            timed_out: false,
        }
    }

    fn exhausted(&mut self, found: usize) -> bool {
        if found >= self.max || self.timed_out {
            return true;
        }
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(256) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.timed_out = true;
                }
            }
        }
        self.timed_out
    }
}

/// Chordless cycles of `G[within]` with at least `min_len` vertices that pass
/// `accept`, in canonical form: smallest vertex first, then the smaller of its
/// two ring neighbors.
pub fn chordless_cycles_within(
    g: &Graph,
    within: &VertexSet,
    min_len: usize,
    caps: SearchCaps,
    accept: &dyn Fn(&[Vertex]) -> bool,
) -> SearchOutcome {
    let mut out = SearchOutcome::default();
    let mut budget = Budget::new(caps);
    let mut path = Vec::new();
    for start in within.iter() {
        if budget.exhausted(out.found.len()) {
            break;
        }
        // only vertices larger than the start may join, so each cycle is rooted at its minimum
        let mut allowed = within.clone();
        for v in 0..=start {
            allowed.remove(v);
        }
        path.clear();
        path.push(start);
        let start_nb = g.neighbors(start).intersection(&allowed);
        for second in start_nb.iter() {
            path.push(second);
            let blocked = VertexSet::new(g.vertex_count());
            extend_cycle(
                g,
                &allowed,
                &start_nb,
                &blocked,
                &mut path,
                min_len,
                &mut budget,
                &mut out,
                accept,
            );
            path.pop();
            if budget.exhausted(out.found.len()) {
                break;
            }
        }
    }
    out.timed_out = budget.timed_out;
    out
}

#[allow(clippy::too_many_arguments)]
fn extend_cycle(
    g: &Graph,
    allowed: &VertexSet,
    start_nb: &VertexSet,
    blocked: &VertexSet,
    path: &mut Vec<Vertex>,
    min_len: usize,
    budget: &mut Budget,
    out: &mut SearchOutcome,
    accept: &dyn Fn(&[Vertex]) -> bool,
) {
    let last = *path.last().expect("nonempty");
    let second = path[1];
    // blocked holds N[v] for path[1..len-1]; neighbors of the start close the cycle
    let mut cand = g.neighbors(last).intersection(allowed);
    cand.difference_with(blocked);
    for &p in path.iter() {
        cand.remove(p);
    }
    for w in cand.iter() {
        if budget.exhausted(out.found.len()) {
            return;
        }
        if start_nb.contains(w) {
            // closes a cycle; w must not be the second vertex and the cycle needs 4+ vertices
            if path.len() >= 3 && w > second && path.len() + 1 >= min_len {
                let mut cyc = path.clone();
                cyc.push(w);
                if accept(&cyc) {
                    out.found.push(cyc);
                }
            }
            continue;
        }
        let mut next_blocked = blocked.clone();
        next_blocked.union_with(&g.closed_neighbors(last));
        path.push(w);
        extend_cycle(
            g,
            allowed,
            start_nb,
            &next_blocked,
            path,
            min_len,
            budget,
            out,
            accept,
        );
        path.pop();
    }
}

/// Chordless paths of `G[within]` with at least `min_len` vertices that pass
/// `accept`, each reported once with its smaller endpoint first.
pub fn chordless_paths_within(
    g: &Graph,
    within: &VertexSet,
    min_len: usize,
    caps: SearchCaps,
    accept: &dyn Fn(&[Vertex]) -> bool,
) -> SearchOutcome {
    let mut out = SearchOutcome::default();
    let mut budget = Budget::new(caps);
    let mut path = Vec::new();
    for start in within.iter() {
        if budget.exhausted(out.found.len()) {
            break;
        }
        path.clear();
        path.push(start);
        let blocked = VertexSet::new(g.vertex_count());
        extend_path(
            g,
            within,
            &blocked,
            &mut path,
            min_len,
            &mut budget,
            &mut out,
            accept,
        );
    }
    out.timed_out = budget.timed_out;
    out
}

#[allow(clippy::too_many_arguments)]
fn extend_path(
    g: &Graph,
    within: &VertexSet,
    blocked: &VertexSet,
    path: &mut Vec<Vertex>,
    min_len: usize,
    budget: &mut Budget,
    out: &mut SearchOutcome,
    accept: &dyn Fn(&[Vertex]) -> bool,
) {
    let last = *path.last().expect("nonempty");
    if path.len() >= min_len && path[0] < last && accept(path) {
        out.found.push(path.clone());
    }
    let mut cand = g.neighbors(last).intersection(within);
    cand.difference_with(blocked);
    for &p in path.iter() {
        cand.remove(p);
    }
    let mut next_blocked = blocked.clone();
    next_blocked.union_with(&g.closed_neighbors(last));
    for w in cand.iter() {
        if budget.exhausted(out.found.len()) {
            return;
        }
        path.push(w);
        extend_path(g, within, &next_blocked, path, min_len, budget, out, accept);
        path.pop();
    }
}

/// Every induced C4 once, as `[a, c, b, d]` with `a` the smallest vertex and `c < d`.
pub fn enumerate_4holes(g: &Graph) -> Vec<StructureWitness> {
    let mut out = Vec::new();
    let n = g.vertex_count();
    for a in 0..n {
        for b in a + 1..n {
            if g.has_edge(a, b) {
                continue;
            }
            let mut common = g.neighbors(a).intersection(g.neighbors(b));
            for v in 0..=a {
                common.remove(v);
            }
            let cs = common.to_vec();
            for (i, &c) in cs.iter().enumerate() {
                for &d in &cs[i + 1..] {
                    if !g.has_edge(c, d) {
                        out.push(StructureWitness::hole(vec![a, c, b, d]));
                    }
                }
            }
        }
    }
    out.sort_by(|x, y| x.ring.cmp(&y.ring));
    out
}

/// Chordless cycles (length >= `min_len`) in `G[N(hub)]`, reported as wheels.
pub fn chordless_cycles_in_neighborhood(
    g: &Graph,
    hub: Vertex,
    min_len: usize,
    caps: SearchCaps,
) -> Result<Vec<StructureWitness>> {
    Ok(wheels_at(g, hub, min_len, caps, &|_| true)?.0)
}

pub(crate) fn wheels_at(
    g: &Graph,
    hub: Vertex,
    min_len: usize,
    caps: SearchCaps,
    accept: &dyn Fn(&[Vertex]) -> bool,
) -> Result<(Vec<StructureWitness>, bool)> {
    if min_len < 4 {
        return Err(Error::Precondition(format!("min_len {min_len} < 4")));
    }
    let res = chordless_cycles_within(g, g.neighbors(hub), min_len, caps, accept);
    Ok((
        res.found
            .into_iter()
            .map(|r| StructureWitness::wheel(hub, r))
            .collect(),
        res.timed_out,
    ))
}

/// Chordless paths (length >= `min_len`) in `G[N(hub)]`, reported as fans.
pub fn chordless_paths_in_neighborhood(
    g: &Graph,
    hub: Vertex,
    min_len: usize,
    caps: SearchCaps,
) -> Result<Vec<StructureWitness>> {
    Ok(fans_at(g, hub, min_len, caps, &|_| true)?.0)
}

pub(crate) fn fans_at(
    g: &Graph,
    hub: Vertex,
    min_len: usize,
    caps: SearchCaps,
    accept: &dyn Fn(&[Vertex]) -> bool,
) -> Result<(Vec<StructureWitness>, bool)> {
    if min_len < 4 {
        return Err(Error::Precondition(format!("min_len {min_len} < 4")));
    }
    let res = chordless_paths_within(g, g.neighbors(hub), min_len, caps, accept);
    Ok((
        res.found
            .into_iter()
            .map(|p| StructureWitness::fan(hub, p))
            .collect(),
        res.timed_out,
    ))
}

/// Greedy inclusion-maximal independent subset of N(hub), scanning `seed_order`.
/// Vertices of `seed_order` outside N(hub) are skipped; neighbors absent from
/// `seed_order` are appended in ascending order.
pub fn maximal_star_at(g: &Graph, hub: Vertex, seed_order: &[Vertex]) -> Option<StructureWitness> {
    let nb = g.neighbors(hub);
    let mut seen = VertexSet::new(g.vertex_count());
    let mut leaves: Vec<Vertex> = Vec::new();
    let order = seed_order.iter().copied().chain(nb.iter());
    for v in order {
        if !nb.contains(v) || !seen.insert(v) {
            continue;
        }
        if leaves.iter().all(|&l| !g.has_edge(l, v)) {
            leaves.push(v);
        }
    }
    (leaves.len() >= 2).then(|| StructureWitness::star(hub, leaves))
}

/// Every `u` outside N[hub] adjacent to all leaves yields a double star.
pub fn double_stars_from(g: &Graph, star: &StructureWitness) -> Result<Vec<StructureWitness>> {
    if star.kind != StructureKind::Star {
        return Err(Error::Precondition(format!(
            "expected a star witness, got {:?}",
            star.kind
        )));
    }
    let h = star.hub.expect("star has a hub");
    let mut cand = VertexSet::full(g.vertex_count());
    cand.difference_with(&g.closed_neighbors(h));
    for &l in &star.leaves {
        cand.intersect_with(g.neighbors(l));
    }
    Ok(cand
        .iter()
        .map(|u| StructureWitness::double_star(h, u, star.leaves.clone()))
        .collect())
}

/// Anti-holes of length >= `min_len`, found as chordless cycles of the complement.
pub fn find_anti_holes(
    g: &Graph,
    min_len: usize,
    caps: SearchCaps,
) -> Result<Vec<StructureWitness>> {
    find_anti_holes_filtered(g, min_len, caps, &|_| true)
}

pub(crate) fn find_anti_holes_filtered(
    g: &Graph,
    min_len: usize,
    caps: SearchCaps,
    accept: &dyn Fn(&[Vertex]) -> bool,
) -> Result<Vec<StructureWitness>> {
    if min_len < 6 {
        return Err(Error::Precondition(format!(
            "anti-hole min_len {min_len} < 6"
        )));
    }
    let comp = g.complement();
    let res = chordless_cycles_within(&comp, &comp.vertices(), min_len, caps, accept);
    Ok(res
        .found
        .into_iter()
        .map(StructureWitness::anti_hole)
        .collect())
}

/// Holes of length >= `min_len` anywhere in `g`.
pub fn find_holes(
    g: &Graph,
    min_len: usize,
    caps: SearchCaps,
    accept: &dyn Fn(&[Vertex]) -> bool,
) -> Result<Vec<StructureWitness>> {
    if min_len < 4 {
        return Err(Error::Precondition(format!("hole min_len {min_len} < 4")));
    }
    let res = chordless_cycles_within(g, &g.vertices(), min_len, caps, accept);
    Ok(res.found.into_iter().map(StructureWitness::hole).collect())
}

/// Witness dump record used by test fixtures.
pub fn witnesses_to_json(ws: &[StructureWitness]) -> serde_json::Value {
    serde_json::Value::Array(
        ws.iter()
            .map(|w| {
                serde_json::json!({
                    "kind": w.kind,
                    "hub": w.hub,
                    "ring": w.ring,
                    "leaves": w.leaves,
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wheel_graph(ring: usize) -> Graph {
        // hub 0, ring 1..=ring
        let mut edges = Vec::new();
        for i in 0..ring {
            edges.push((0, 1 + i));
            edges.push((1 + i, 1 + (i + 1) % ring));
        }
        Graph::from_edges(ring + 1, &edges).unwrap()
    }

    #[test]
    fn four_holes_small() {
        assert_eq!(enumerate_4holes(&Graph::cycle(4)).len(), 1);
        assert!(enumerate_4holes(&Graph::complete(4)).is_empty());
        assert_eq!(enumerate_4holes(&Graph::complete_bipartite(2, 3)).len(), 3);
        for h in enumerate_4holes(&Graph::complete_bipartite(3, 3)) {
            h.validate(&Graph::complete_bipartite(3, 3)).unwrap();
        }
    }

    #[test]
    fn wheel_neighborhood_cycle() {
        let g = wheel_graph(9);
        let ws = chordless_cycles_in_neighborhood(&g, 0, 7, SearchCaps::UNLIMITED).unwrap();
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].ring, (1..=9).collect::<Vec<_>>());
        ws[0].validate(&g).unwrap();
        let k5 = Graph::complete(5);
        assert!(
            chordless_cycles_in_neighborhood(&k5, 0, 4, SearchCaps::UNLIMITED)
                .unwrap()
                .is_empty()
        );
        assert!(chordless_cycles_in_neighborhood(&k5, 0, 3, SearchCaps::UNLIMITED).is_err());
    }

    #[test]
    fn neighborhood_c4_plus_isolated() {
        // hub 0; N(0) = C4 on 1..=4 plus isolated 5
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)];
        edges.extend([(1, 2), (2, 3), (3, 4), (4, 1)]);
        let g = Graph::from_edges(6, &edges).unwrap();
        let ws = chordless_cycles_in_neighborhood(&g, 0, 4, SearchCaps::UNLIMITED).unwrap();
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].ring, vec![1, 2, 3, 4]);
    }

    #[test]
    fn fan_paths() {
        // hub 0 + P7 on 1..=7
        let mut edges: Vec<_> = (1..=7).map(|i| (0, i)).collect();
        edges.extend((1..7).map(|i| (i, i + 1)));
        let g = Graph::from_edges(8, &edges).unwrap();
        let fs = chordless_paths_in_neighborhood(&g, 0, 7, SearchCaps::UNLIMITED).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].ring, (1..=7).collect::<Vec<_>>());
        fs[0].validate(&g).unwrap();

        let star = Graph::complete_bipartite(1, 5);
        assert!(
            chordless_paths_in_neighborhood(&star, 0, 4, SearchCaps::UNLIMITED)
                .unwrap()
                .is_empty()
        );

        // neighborhood is a C4: its longest chordless path has 3 vertices
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (0, 4)];
        edges.extend([(1, 2), (2, 3), (3, 4), (4, 1)]);
        let g = Graph::from_edges(5, &edges).unwrap();
        assert!(
            chordless_paths_in_neighborhood(&g, 0, 4, SearchCaps::UNLIMITED)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn count_cap_is_respected() {
        let g = wheel_graph(12);
        let fs = chordless_paths_in_neighborhood(&g, 0, 4, SearchCaps::count(5)).unwrap();
        assert_eq!(fs.len(), 5);
    }

    #[test]
    fn stars() {
        let k14 = Graph::complete_bipartite(1, 4);
        let s = maximal_star_at(&k14, 0, &[]).unwrap();
        assert_eq!(s.leaves, vec![1, 2, 3, 4]);
        assert!(maximal_star_at(&Graph::complete(3), 0, &[]).is_none());
        // paw: triangle 0-1-2, pendant 3 at 0
        let paw = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        let s = maximal_star_at(&paw, 0, &[]).unwrap();
        assert_eq!(s.leaves, vec![1, 3]);
        let s = maximal_star_at(&paw, 0, &[2, 3]).unwrap();
        assert_eq!(s.leaves, vec![2, 3]);
        s.validate(&paw).unwrap();
    }

    #[test]
    fn double_stars() {
        let c4 = Graph::cycle(4);
        let s = maximal_star_at(&c4, 0, &[]).unwrap();
        let ds = double_stars_from(&c4, &s).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds[0].second_hub, Some(2));
        let s = maximal_star_at(&c4, 1, &[]).unwrap();
        assert_eq!(double_stars_from(&c4, &s).unwrap()[0].second_hub, Some(3));

        let k23 = Graph::complete_bipartite(2, 3);
        let s = maximal_star_at(&k23, 0, &[]).unwrap();
        assert_eq!(s.leaves, vec![2, 3, 4]);
        let ds = double_stars_from(&k23, &s).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds[0].second_hub, Some(1));
        ds[0].validate(&k23).unwrap();

        let k13 = Graph::complete_bipartite(1, 3);
        let s = maximal_star_at(&k13, 0, &[]).unwrap();
        assert!(double_stars_from(&k13, &s).unwrap().is_empty());
        assert!(double_stars_from(&k13, &StructureWitness::hole(vec![0, 1, 2, 3])).is_err());
    }

    #[test]
    fn anti_holes() {
        let g = Graph::cycle(7).complement();
        let ahs = find_anti_holes(&g, 6, SearchCaps::UNLIMITED).unwrap();
        assert_eq!(ahs.len(), 1);
        assert_eq!(ahs[0].ring.len(), 7);
        ahs[0].validate(&g).unwrap();
        let c5 = Graph::cycle(5).complement();
        assert!(find_anti_holes(&c5, 6, SearchCaps::UNLIMITED)
            .unwrap()
            .is_empty());
        assert!(
            find_anti_holes(&Graph::complete(6), 6, SearchCaps::UNLIMITED)
                .unwrap()
                .is_empty()
        );
        assert!(find_anti_holes(&g, 5, SearchCaps::UNLIMITED).is_err());
    }

    #[test]
    fn witness_json_shape() {
        let v = witnesses_to_json(&[StructureWitness::star(0, vec![2, 1])]);
        assert_eq!(v[0]["kind"], "Star");
        assert_eq!(v[0]["leaves"], serde_json::json!([1, 2]));
    }
}
