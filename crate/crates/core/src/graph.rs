//! Simple undirected graphs over dense vertex ids, stored as bitset rows.
//!
//! Vertex ids are `0..n` internally. DIMACS files use 1-based ids and are
//! translated at the boundary by [`Graph::from_dimacs`] and [`Graph::to_dimacs`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// A set of vertices of a fixed host graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0; words_for(universe)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::new(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    pub fn from_iter_in(universe: usize, it: impl IntoIterator<Item = Vertex>) -> Self {
        let mut s = Self::new(universe);
        for v in it {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        v < self.universe && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: Vertex) -> bool {
        assert!(
            v < self.universe,
            "vertex {v} outside universe {}",
            self.universe
        );
        let was = self.contains(v);
        self.words[v / WORD] |= 1 << (v % WORD);
        !was
    }

    #[inline]
    pub fn remove(&mut self, v: Vertex) -> bool {
        let was = self.contains(v);
        if was {
            self.words[v / WORD] &= !(1 << (v % WORD));
        }
        was
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<Vertex> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// An induced P3: `center` is adjacent to both leaves, the leaves are not adjacent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OpenTriangle {
    pub center: Vertex,
    pub leaf_a: Vertex,
    pub leaf_b: Vertex,
}

impl OpenTriangle {
    pub fn vertices(&self) -> [Vertex; 3] {
        [self.center, self.leaf_a, self.leaf_b]
    }
}

/// Immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![VertexSet::new(n); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; loops are rejected.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn complete(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                b.add_edge(u, v).expect("valid");
            }
        }
        b.build()
    }

    pub fn cycle(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for i in 0..n {
            b.add_edge(i, (i + 1) % n).expect("valid");
        }
        b.build()
    }

    pub fn path(n: usize) -> Self {
        let mut b = GraphBuilder::new(n);
        for i in 1..n {
            b.add_edge(i - 1, i).expect("valid");
        }
        b.build()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut gb = GraphBuilder::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                gb.add_edge(u, v).expect("valid");
            }
        }
        gb.build()
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Closed neighborhood N[v].
    pub fn closed_neighbors(&self, v: Vertex) -> VertexSet {
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Every induced P3 exactly once, ordered by center and then by leaves.
    pub fn open_triangles(&self) -> Vec<OpenTriangle> {
        let mut out = Vec::new();
        for c in 0..self.n {
            let nb: Vec<Vertex> = self.adj[c].to_vec();
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    if !self.has_edge(a, b) {
                        out.push(OpenTriangle {
                            center: c,
                            leaf_a: a,
                            leaf_b: b,
                        });
                    }
                }
            }
        }
        out
    }

    /// Number of open triangles, without materializing them.
    pub fn open_triangle_count(&self) -> usize {
        let mut total = 0;
        for c in 0..self.n {
            let d = self.degree(c);
            let mut inner = 0;
            for a in self.adj[c].iter() {
                inner += self.adj[a].intersection_len(&self.adj[c]);
            }
            total += d * d.saturating_sub(1) / 2 - inner / 2;
        }
        total
    }

    /// True iff `s` induces no P3, i.e. every component of `G[s]` is a clique.
    pub fn is_iuc(&self, s: &VertexSet) -> bool {
        for v in s.iter() {
            let nb = self.adj[v].intersection(s);
            // every S-neighbor of v must see all other S-neighbors of v
            for u in nb.iter() {
                let mut rest = nb.clone();
                rest.remove(u);
                if !rest.is_subset(&self.adj[u]) {
                    return false;
                }
            }
        }
        true
    }

    /// Induced subgraph on `s`; the returned map sends new ids to old ids.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<Vertex>) {
        let map = s.to_vec();
        let mut inverse = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            inverse[old] = new;
        }
        let mut b = GraphBuilder::new(map.len());
        for (new, &old) in map.iter().enumerate() {
            for w in self.adj[old].iter() {
                let nw = inverse[w];
                if nw != usize::MAX && nw > new {
                    b.add_edge(new, nw).expect("valid");
                }
            }
        }
        (b.build(), map)
    }

    pub fn complement(&self) -> Graph {
        let mut adj = Vec::with_capacity(self.n);
        for v in 0..self.n {
            let mut row = VertexSet::full(self.n);
            row.difference_with(&self.adj[v]);
            row.remove(v);
            adj.push(row);
        }
        let m = self.n * self.n.saturating_sub(1) / 2 - self.m;
        Graph { n: self.n, adj, m }
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut b = GraphBuilder::new(n);
        for (u, v) in self.edges() {
            b.add_edge(u, v).expect("valid");
        }
        for (u, v) in other.edges() {
            b.add_edge(u + self.n, v + self.n).expect("valid");
        }
        b.build()
    }

    /// Copy of the graph with `k` extra vertices and the given extra edges.
    pub fn extended(&self, k: usize, extra: &[(Vertex, Vertex)]) -> Result<Graph> {
        let mut b = GraphBuilder::new(self.n + k);
        for (u, v) in self.edges() {
            b.add_edge(u, v)?;
        }
        for &(u, v) in extra {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    /// Parses DIMACS edge format (`c` comments, one `p edge n m` header, `e i j` lines).
    pub fn from_dimacs(text: &str) -> Result<Graph> {
        let mut builder: Option<GraphBuilder> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let mut tok = line.split_whitespace();
            match tok.next() {
                Some("p") => {
                    if builder.is_some() {
                        return Err(Error::parse(line_no, "duplicate problem line"));
                    }
                    let fmt = tok.next();
                    if !matches!(fmt, Some("edge") | Some("col")) {
                        return Err(Error::parse(line_no, "expected \"p edge <n> <m>\""));
                    }
                    let n = parse_num(tok.next(), line_no, "vertex count")?;
                    let _m = parse_num(tok.next(), line_no, "edge count")?;
                    if tok.next().is_some() {
                        return Err(Error::parse(line_no, "trailing tokens in problem line"));
                    }
                    builder = Some(GraphBuilder::new(n));
                }
                Some("e") => {
                    let b = builder
                        .as_mut()
                        .ok_or_else(|| Error::parse(line_no, "edge before problem line"))?;
                    let u = parse_num(tok.next(), line_no, "edge endpoint")?;
                    let v = parse_num(tok.next(), line_no, "edge endpoint")?;
                    if tok.next().is_some() {
                        return Err(Error::parse(line_no, "trailing tokens in edge line"));
                    }
                    let n = b.n;
                    if u == 0 || v == 0 || u > n || v > n {
                        return Err(Error::parse(
                            line_no,
                            format!("vertex id out of range 1..={n}"),
                        ));
                    }
                    if u == v {
                        return Err(Error::parse(line_no, format!("loop at line {line_no}")));
                    }
                    b.add_edge(u - 1, v - 1)?;
                }
                Some(other) => {
                    return Err(Error::parse(
                        line_no,
                        format!("unknown line type {other:?}"),
                    ));
                }
                None => unreachable!("empty lines skipped"),
            }
        }
        builder
            .map(GraphBuilder::build)
            .ok_or_else(|| Error::parse(0, "missing problem line"))
    }

    /// DIMACS edge format, edges in ascending order, 1-based ids.
    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p edge {} {}\n", self.n, self.m);
        for (u, v) in self.edges() {
            s.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        s
    }

    /// Adjacency-list JSON, for debugging.
    pub fn to_adjacency_json(&self) -> serde_json::Value {
        let lists: Vec<Vec<Vertex>> = (0..self.n).map(|v| self.adj[v].to_vec()).collect();
        serde_json::json!({
            "vertex_count": self.n,
            "edge_count": self.m,
            "adjacency": lists,
        })
    }

    /// Adjacency rows as 64-bit masks; `None` when the graph has more than 64 vertices.
    pub fn masks(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|row| row.words.first().copied().unwrap_or(0))
                .collect(),
        )
    }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::parse(line, format!("malformed {what}")))
}

/// Incremental construction; [`GraphBuilder::build`] freezes the graph.
pub struct GraphBuilder {
    n: usize,
    adj: Vec<VertexSet>,
    m: usize,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            adj: vec![VertexSet::new(n); n],
            m: 0,
        }
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        if u >= self.n || v >= self.n {
            return Err(Error::Precondition(format!(
                "edge ({u},{v}) outside 0..{}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::Precondition(format!("loop at vertex {u}")));
        }
        if self.adj[u].insert(v) {
            self.adj[v].insert(u);
            self.m += 1;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    pub fn build(self) -> Graph {
        Graph {
            n: self.n,
            adj: self.adj,
            m: self.m,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, vs: &[Vertex]) -> VertexSet {
        VertexSet::from_iter_in(n, vs.iter().copied())
    }

    #[test]
    fn dimacs_p3() {
        let g = Graph::from_dimacs("p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn dimacs_duplicates_collapse() {
        let g = Graph::from_dimacs("c hi\np edge 2 2\ne 1 2\ne 1 2\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn dimacs_errors_name_the_line() {
        let err = Graph::from_dimacs("p edge 3 1\n\ne 1 1\n").unwrap_err();
        assert!(err.to_string().contains("loop at line 3"), "{err}");
        let err = Graph::from_dimacs("p edge 3 1\ne 1 4\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = Graph::from_dimacs("p edge x 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = Graph::from_dimacs("e 1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert!(Graph::from_dimacs("c only comments\n").is_err());
    }

    #[test]
    fn dimacs_round_trip() {
        let g = Graph::complete_bipartite(2, 3);
        let back = Graph::from_dimacs(&g.to_dimacs()).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn open_triangle_examples() {
        let p3 = Graph::path(3);
        assert_eq!(
            p3.open_triangles(),
            vec![OpenTriangle {
                center: 1,
                leaf_a: 0,
                leaf_b: 2
            }]
        );
        assert!(Graph::complete(3).open_triangles().is_empty());
        let c4 = Graph::cycle(4).open_triangles();
        assert_eq!(c4.len(), 4);
        let mut centers: Vec<_> = c4.iter().map(|t| t.center).collect();
        centers.dedup();
        assert_eq!(centers, vec![0, 1, 2, 3]);
        // 2 centers on the small side see C(3,2) pairs, 3 centers see one pair
        assert_eq!(Graph::complete_bipartite(2, 3).open_triangles().len(), 9);
        assert_eq!(Graph::complete_bipartite(2, 3).open_triangle_count(), 9);
    }

    #[test]
    fn iuc_examples() {
        let c4 = Graph::cycle(4);
        for u in 0..4 {
            assert!(c4.is_iuc(&set(4, &[u])));
            for v in 0..4 {
                assert!(c4.is_iuc(&set(4, &[u, v])));
            }
        }
        // {0,1} is an edge, 3 is adjacent to 0 but not to 1
        assert!(!c4.is_iuc(&set(4, &[0, 1, 3])));
        for t in c4.open_triangles() {
            assert!(!c4.is_iuc(&set(4, &t.vertices())));
        }
        assert!(c4.is_iuc(&VertexSet::new(4)));
    }

    #[test]
    fn induced_and_complement() {
        let (k3, map) = Graph::complete(4).induced_subgraph(&set(4, &[0, 2, 3]));
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(map, vec![0, 2, 3]);
        let (p4, _) = Graph::cycle(5).induced_subgraph(&set(5, &[0, 1, 2, 3]));
        assert_eq!(p4, Graph::path(4));
        let (e, _) = Graph::cycle(5).induced_subgraph(&VertexSet::new(5));
        assert_eq!(e.vertex_count(), 0);

        assert_eq!(Graph::complete(3).complement(), Graph::empty(3));
        let c5c = Graph::cycle(5).complement();
        assert_eq!(c5c.edge_count(), 5);
        assert!(c5c.vertices().iter().all(|v| c5c.degree(v) == 2));
        assert_eq!(Graph::cycle(6).complement().edge_count(), 9);
    }

    #[test]
    fn vertex_set_ops() {
        let mut s = VertexSet::new(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.to_vec(), vec![0, 64, 129]);
        assert_eq!(s.len(), 3);
        assert_eq!(s.first(), Some(0));
        s.remove(0);
        assert_eq!(s.first(), Some(64));
        let t = VertexSet::from_iter_in(130, [64, 100]);
        assert_eq!(s.intersection(&t).to_vec(), vec![64]);
        assert_eq!(s.union(&t).len(), 3);
        assert!(!s.is_subset(&t));
    }
}
