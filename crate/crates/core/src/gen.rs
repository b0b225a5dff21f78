//! Seeded instance generators. All randomness comes from ChaCha8 seeded with
//! a `u64`, so a seed fixes the graph on every platform.

use std::path::Path;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Normal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, Vertex};
use crate::inequality::{hole_rhs, path_rhs};
use crate::structure::{StructureKind, StructureWitness};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Smallest vertex count a structure of this kind can have.
pub fn min_size(kind: StructureKind) -> usize {
    match kind {
        StructureKind::Hole => 4,
        StructureKind::AntiHole => 6,
        StructureKind::Star => 3,
        StructureKind::DoubleStar => 4,
        StructureKind::Fan | StructureKind::Wheel => 5,
    }
}

/// Canonical structure on `size` vertices, labeled from `offset`; the hub
/// (or the two hubs) come first.
fn structure_at(
    kind: StructureKind,
    size: usize,
    offset: Vertex,
) -> (Vec<(Vertex, Vertex)>, StructureWitness) {
    let v = |i: usize| offset + i;
    let ring_edges = |from: usize, len: usize, closed: bool| {
        let mut e: Vec<_> = (0..len - 1)
            .map(|i| (v(from + i), v(from + i + 1)))
            .collect();
        if closed {
            e.push((v(from + len - 1), v(from)));
        }
        e
    };
    match kind {
        StructureKind::Hole => {
            let ring: Vec<_> = (0..size).map(v).collect();
            (ring_edges(0, size, true), StructureWitness::hole(ring))
        }
        StructureKind::AntiHole => {
            let ring: Vec<_> = (0..size).map(v).collect();
            let mut e = Vec::new();
            for i in 0..size {
                for j in i + 2..size {
                    if !(i == 0 && j == size - 1) {
                        e.push((v(i), v(j)));
                    }
                }
            }
            (e, StructureWitness::anti_hole(ring))
        }
        StructureKind::Star => {
            let leaves: Vec<_> = (1..size).map(v).collect();
            let e = leaves.iter().map(|&l| (v(0), l)).collect();
            (e, StructureWitness::star(v(0), leaves))
        }
        StructureKind::DoubleStar => {
            let leaves: Vec<_> = (2..size).map(v).collect();
            let e = leaves
                .iter()
                .flat_map(|&l| [(v(0), l), (v(1), l)])
                .collect();
            (e, StructureWitness::double_star(v(0), v(1), leaves))
        }
        StructureKind::Fan | StructureKind::Wheel => {
            let closed = kind == StructureKind::Wheel;
            let ring: Vec<_> = (1..size).map(v).collect();
            let mut e = ring_edges(1, size - 1, closed);
            e.extend(ring.iter().map(|&r| (v(0), r)));
            let w = if closed {
                StructureWitness::wheel(v(0), ring)
            } else {
                StructureWitness::fan(v(0), ring)
            };
            (e, w)
        }
    }
}

/// Canonical structure with `size` vertices in total: C_n, the complement
/// of C_n, K_{1,size-1}, K_{2,size-2}, hub + P_{size-1}, hub + C_{size-1}.
pub fn gen_structure(kind: StructureKind, size: usize) -> Result<(Graph, StructureWitness)> {
    let min = min_size(kind);
    if size < min {
        return Err(Error::Precondition(format!(
            "{kind:?} needs at least {min} vertices, got {size}"
        )));
    }
    let (edges, w) = structure_at(kind, size, 0);
    Ok((Graph::from_edges(size, &edges)?, w))
}

/// IUC number of an isolated structure witness.
pub fn structure_iuc_number(w: &StructureWitness) -> usize {
    let k = w.ring.len().max(w.leaves.len());
    match w.kind {
        StructureKind::Hole => hole_rhs(k) as usize,
        StructureKind::AntiHole => k / 2,
        StructureKind::Star | StructureKind::DoubleStar => k,
        StructureKind::Fan => path_rhs(k) as usize,
        // the hub with one ring edge is a triangle
        StructureKind::Wheel => (hole_rhs(k) as usize).max(3),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompositeSpec {
    pub principal_count: usize,
    pub size_mean: f64,
    pub size_sd: f64,
    pub inter_edge_prob: f64,
    /// Weights for hole, anti-hole, star, double star, fan, wheel.
    pub kind_weights: [f64; 6],
    pub seed: u64,
}

impl Default for CompositeSpec {
    fn default() -> Self {
        CompositeSpec {
            principal_count: 21,
            size_mean: 10.0,
            size_sd: 1.0,
            inter_edge_prob: 0.01,
            kind_weights: [1.0; 6],
            seed: 0,
        }
    }
}

const KINDS: [StructureKind; 6] = [
    StructureKind::Hole,
    StructureKind::AntiHole,
    StructureKind::Star,
    StructureKind::DoubleStar,
    StructureKind::Fan,
    StructureKind::Wheel,
];

/// Principal structures of a composite instance.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub structures: Vec<StructureWitness>,
}

impl GroundTruth {
    /// Σ of per-structure IUC numbers; the exact value when there are no
    /// edges between structures.
    pub fn disjoint_iuc_number(&self) -> usize {
        self.structures.iter().map(structure_iuc_number).sum()
    }
}

fn check_prob(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "probability {p} outside [0, 1]"
        )))
    }
}

/// Disjoint principal structures of normally distributed size, then sparse
/// random edges between different structures.
pub fn gen_composite(spec: &CompositeSpec) -> Result<(Graph, GroundTruth)> {
    check_prob(spec.inter_edge_prob)?;
    if spec.size_sd < 0.0 || !spec.size_mean.is_finite() {
        return Err(Error::Precondition("bad size distribution".into()));
    }
    let kinds = WeightedIndex::new(spec.kind_weights)
        .map_err(|e| Error::Precondition(format!("kind weights: {e}")))?;
    let sizes = Normal::new(spec.size_mean, spec.size_sd)
        .map_err(|e| Error::Precondition(format!("size distribution: {e}")))?;
    let mut r = rng(spec.seed);
    let mut edges = Vec::new();
    let mut truth = GroundTruth::default();
    let mut owner = Vec::new();
    for s in 0..spec.principal_count {
        let kind = KINDS[kinds.sample(&mut r)];
        let drawn = sizes.sample(&mut r).floor();
        let size = if drawn.is_finite() && drawn > 0.0 {
            drawn as usize
        } else {
            0
        };
        let size = size.max(min_size(kind)).max(4);
        let (e, w) = structure_at(kind, size, owner.len());
        owner.extend(std::iter::repeat_n(s, size));
        edges.extend(e);
        truth.structures.push(w);
    }
    let n = owner.len();
    if spec.inter_edge_prob > 0.0 {
        for i in 0..n {
            for j in i + 1..n {
                if owner[i] != owner[j] && r.random_bool(spec.inter_edge_prob) {
                    edges.push((i, j));
                }
            }
        }
    }
    Ok((Graph::from_edges(n, &edges)?, truth))
}

/// G(n, p): pairs visited in lexicographic order, one Bernoulli draw each.
pub fn gen_er(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_prob(p)?;
    let mut r = rng(seed);
    let mut b = GraphBuilder::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if r.random_bool(p) {
                b.add_edge(i, j)?;
            }
        }
    }
    Ok(b.build())
}

/// Uniform labeled tree decoded from a random Prüfer sequence.
pub fn gen_tree(n: usize, seed: u64) -> Graph {
    if n < 2 {
        return Graph::empty(n);
    }
    let mut r = rng(seed);
    let seq: Vec<Vertex> = (0..n - 2).map(|_| r.random_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut leaves: std::collections::BTreeSet<Vertex> =
        (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in &seq {
        let leaf = leaves.pop_first().expect("a leaf always exists");
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.insert(s);
        }
    }
    let a = leaves.pop_first().expect("two leaves remain");
    let b = leaves.pop_first().expect("two leaves remain");
    edges.push((a, b));
    Graph::from_edges(n, &edges).expect("valid tree")
}

pub fn gen_complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::complete_bipartite(a, b)
}

/// Writes `<stem>.dimacs` and, when given, `<stem>.json` holding the ground
/// truth and the generating spec.
pub fn write_instance<S: Serialize>(
    stem: &Path,
    g: &Graph,
    truth: Option<&GroundTruth>,
    spec: &S,
) -> Result<()> {
    std::fs::write(stem.with_extension("dimacs"), g.to_dimacs())?;
    let sidecar = serde_json::json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "spec": spec,
        "ground_truth": truth,
    });
    std::fs::write(
        stem.with_extension("json"),
        serde_json::to_string_pretty(&sidecar)?,
    )?;
    Ok(())
}
