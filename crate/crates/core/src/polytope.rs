//! Ground truth on small graphs: the IUC catalog, exact face dimensions,
//! facet certification and complete-description checks.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cuts::{separate_double_star_exact, separate_star_exact_independent};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::inequality::{
    anticycle_fan_inequality, antihole_inequality, double_star_inequalities, fan_inequality,
    hole_inequality, lift_coefficient, ot_inequality, star_inequality, wheel_inequality,
    LinearInequality,
};
use crate::lp::{LpStatus, Row, Simplex};
use crate::oracle;
use crate::structure::StructureWitness;

/// Largest graph whose IUCs are enumerated explicitly.
pub const CATALOG_LIMIT: usize = 24;

/// Every IUC of a graph (the empty set included), as bitmasks.
#[derive(Clone, Debug)]
pub struct IucCatalog {
    n: usize,
    masks: Vec<u64>,
}

impl IucCatalog {
    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn sets(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.masks
            .iter()
            .map(move |&m| VertexSet::from_iter_in(self.n, (0..self.n).filter(|i| m >> i & 1 == 1)))
    }
}

/// All IUCs by recursive extension, pruning any extension that creates an
/// open triangle.
pub fn enumerate_iucs(g: &Graph) -> Result<IucCatalog> {
    let n = g.vertex_count();
    if n > CATALOG_LIMIT {
        return Err(Error::SizeGuard {
            what: "IUC enumeration",
            got: n,
            limit: CATALOG_LIMIT,
        });
    }
    let adj = g.masks().expect("n <= 24");
    let mut out = Vec::new();
    fn rec(adj: &[u64], n: usize, next: usize, s: u64, out: &mut Vec<u64>) {
        out.push(s);
        for c in next..n {
            let t = adj[c] & s;
            let ok = t == 0 || {
                let s0 = t.trailing_zeros() as usize;
                t == (adj[s0] | 1 << s0) & s
            };
            if ok {
                rec(adj, n, c + 1, s | 1 << c, out);
            }
        }
    }
    rec(&adj, n, 0, 0, &mut out);
    Ok(IucCatalog { n, masks: out })
}

/// Incremental row echelon form over exact rationals.
#[derive(Clone, Debug)]
pub struct AffineRank {
    dim: usize,
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl AffineRank {
    /// Tracks the linear rank of vectors in `dim` coordinates.
    pub fn new(dim: usize) -> Self {
        AffineRank {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a vector; returns whether it increased the rank.
    pub fn push(&mut self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w: Vec<BigRational> = v
            .iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)))
            .collect();
        for (p, r) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let f = w[*p].clone();
            for (j, rj) in r.iter().enumerate().skip(*p) {
                if !rj.is_zero() {
                    w[j] = &w[j] - &f * rj;
                }
            }
        }
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = BigRational::one() / w[p].clone();
        for x in w.iter_mut().skip(p) {
            *x = &*x * &inv;
        }
        self.rows.push((p, w));
        true
    }
}

/// Tight points and affine dimension of the face an inequality induces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceReport {
    pub valid: bool,
    pub tight_point_count: usize,
    /// -1 for the empty face.
    pub affine_dimension: i64,
    pub is_facet: bool,
    /// Affinely independent tight IUCs, `affine_dimension + 1` of them.
    pub certificate: Vec<Vec<Vertex>>,
}

fn incidence(m: u64, n: usize) -> Vec<i64> {
    (0..n).map(|i| (m >> i & 1) as i64).collect()
}

fn face_of(catalog: &IucCatalog, coeffs: &[i64], rhs: i64) -> FaceReport {
    let n = catalog.n;
    let mut valid = true;
    let mut tight = 0usize;
    let mut rank = AffineRank::new(n + 1);
    let mut certificate = Vec::new();
    for &m in &catalog.masks {
        let lhs: i64 = (0..n).filter(|i| m >> i & 1 == 1).map(|i| coeffs[i]).sum();
        if lhs > rhs {
            valid = false;
        }
        if lhs != rhs {
            continue;
        }
        tight += 1;
        if rank.rank() <= n {
            let mut v = incidence(m, n);
            v.push(1);
            if rank.push(&v) {
                certificate.push((0..n).filter(|i| m >> i & 1 == 1).collect());
            }
        }
    }
    let dim = rank.rank() as i64 - 1;
    FaceReport {
        valid,
        tight_point_count: tight,
        affine_dimension: dim,
        is_facet: valid && dim == n as i64 - 1,
        certificate,
    }
}

pub fn face_dimension(g: &Graph, ineq: &LinearInequality) -> Result<FaceReport> {
    let catalog = enumerate_iucs(g)?;
    face_dimension_in(&catalog, ineq)
}

pub fn face_dimension_in(catalog: &IucCatalog, ineq: &LinearInequality) -> Result<FaceReport> {
    let n = catalog.n;
    if let Some(v) = ineq.max_vertex().filter(|&v| v >= n) {
        return Err(Error::Precondition(format!("vertex {v} outside the graph")));
    }
    let coeffs: Vec<i64> = (0..n).map(|v| ineq.coeff(v)).collect();
    Ok(face_of(catalog, &coeffs, ineq.rhs))
}

/// Face of `x_v ≥ 0`, written as `-x_v ≤ 0`.
pub fn nonnegativity_face(catalog: &IucCatalog, v: Vertex) -> FaceReport {
    let mut coeffs = vec![0; catalog.n];
    coeffs[v] = -1;
    face_of(catalog, &coeffs, 0)
}

/// Affine dimension of all IUC incidence vectors.
pub fn catalog_dimension(catalog: &IucCatalog) -> usize {
    let n = catalog.n;
    let mut rank = AffineRank::new(n + 1);
    for &m in &catalog.masks {
        let mut v = incidence(m, n);
        v.push(1);
        rank.push(&v);
        if rank.rank() == n + 1 {
            break;
        }
    }
    rank.rank() - 1
}

/// One row of the certification matrix.
#[derive(Clone, Debug, Serialize)]
pub struct CertRow {
    pub name: String,
    pub vertices: usize,
    pub inequality: String,
    pub expected_facet: bool,
    pub report: FaceReport,
    pub pass: bool,
}

/// A structure graph with its inequality and expected verdict.
struct Case {
    name: String,
    graph: Graph,
    ineq: LinearInequality,
    expected: bool,
}

fn fan_graph(p: usize) -> Graph {
    let mut edges: Vec<_> = (1..=p).map(|i| (0, i)).collect();
    edges.extend((1..p).map(|i| (i, i + 1)));
    Graph::from_edges(p + 1, &edges).expect("fan")
}

fn wheel_graph(len: usize) -> Graph {
    let mut edges: Vec<_> = (1..=len).map(|i| (0, i)).collect();
    edges.extend((0..len).map(|i| (1 + i, 1 + (i + 1) % len)));
    Graph::from_edges(len + 1, &edges).expect("wheel")
}

/// Adds two pendant vertices attached to `at[0]` and `at[1]`.
fn with_pendants(g: &Graph, at: [Vertex; 2]) -> Graph {
    let n = g.vertex_count();
    g.extended(2, &[(at[0], n), (at[1], n + 1)])
        .expect("pendants")
}

/// Verdict of the inequality in the host with pendants: a facet of the
/// structure stays a facet exactly when both pendant coefficients lift to
/// zero; a non-facet stays a non-facet.
fn host_expectation(host: &Graph, ineq: &LinearInequality, base: bool) -> bool {
    let n = host.vertex_count();
    base && (n - 2..n).all(|v| lift_coefficient(host, ineq, v).expect("small host") == 0)
}

fn structure_cases() -> Vec<Case> {
    let mut cases = Vec::new();
    let mut push =
        |name: String, graph: Graph, ineq: LinearInequality, expected: bool, at: [Vertex; 2]| {
            let host = with_pendants(&graph, at);
            let host_expected = host_expectation(&host, &ineq, expected);
            cases.push(Case {
                name: format!("{name} + 2 pendants"),
                graph: host,
                ineq: ineq.clone(),
                expected: host_expected,
            });
            cases.push(Case {
                name,
                graph,
                ineq,
                expected,
            });
        };

    push(
        "OT on P3".into(),
        Graph::path(3),
        ot_inequality(&Graph::path(3).open_triangles()[0]),
        true,
        [0, 2],
    );
    for t in Graph::cycle(4).open_triangles() {
        push(
            format!("OT {:?} inside C4", t.vertices()),
            Graph::cycle(4),
            ot_inequality(&t),
            false,
            [0, 2],
        );
    }
    for len in 4..=10 {
        let w = StructureWitness::hole((0..len).collect());
        push(
            format!("hole C{len}"),
            Graph::cycle(len),
            hole_inequality(&w).expect("hole"),
            len % 3 != 0,
            [0, len / 2],
        );
    }
    for len in 6..=11 {
        let w = StructureWitness::anti_hole((0..len).collect());
        push(
            format!("anti-hole of size {len}"),
            Graph::cycle(len).complement(),
            antihole_inequality(&w).expect("anti-hole"),
            len % 2 == 1,
            [0, len / 2],
        );
    }
    for k in 2..=5 {
        let leaves: Vec<Vertex> = (1..=k).collect();
        let s = star_inequality(&StructureWitness::star(0, leaves)).expect("star");
        push(
            format!("star |I|={k} in K1,{k}"),
            Graph::complete_bipartite(1, k),
            s,
            true,
            [1, 2],
        );
        // K_{2,k}: vertex 1 is a second hub adjacent to every leaf
        let leaves: Vec<Vertex> = (2..k + 2).collect();
        let s = star_inequality(&StructureWitness::star(0, leaves)).expect("star");
        push(
            format!("star |I|={k} in K2,{k} (second hub present)"),
            Graph::complete_bipartite(2, k),
            s,
            false,
            [2, 3],
        );
        let d = StructureWitness::double_star(0, 1, (2..k + 2).collect());
        for (i, ineq) in double_star_inequalities(&d)
            .expect("double star")
            .into_iter()
            .enumerate()
        {
            push(
                format!("double star |I|={k} in K2,{k} #{i}"),
                Graph::complete_bipartite(2, k),
                ineq,
                true,
                [2, 3],
            );
        }
    }
    for p in 4..=8 {
        let w = StructureWitness::fan(0, (1..=p).collect());
        push(
            format!("fan |P|={p}"),
            fan_graph(p),
            fan_inequality(&w).expect("fan"),
            p % 3 != 2,
            [1, p],
        );
    }
    // sub-fans of the fan with |P| = 9
    let big = fan_graph(9);
    for len in [4, 6, 7] {
        for start in [1, 2, 9 - len + 1] {
            let w = StructureWitness::fan(0, (start..start + len).collect());
            push(
                format!("sub-fan |P'|={len} from {start} in fan |P|=9"),
                big.clone(),
                fan_inequality(&w).expect("fan"),
                true,
                [1, 9],
            );
        }
    }
    for len in 4..=9 {
        let w = StructureWitness::wheel(0, (1..=len).collect());
        push(
            format!("wheel |H|={len}"),
            wheel_graph(len),
            wheel_inequality(&w).expect("wheel"),
            len % 3 != 0 || (len / 3) % 2 == 1,
            [1, 1 + len / 2],
        );
    }
    for len in [8, 9] {
        let ring: Vec<Vertex> = (0..len).collect();
        let g = Graph::cycle(len).complement();
        for k in 4..=len - 2 {
            push(
                format!("anti-cycle |A|={len} P4 from 0, k={k}"),
                g.clone(),
                anticycle_fan_inequality(&ring, 0, k).expect("positions"),
                true,
                [0, 4],
            );
        }
    }
    let a6: Vec<Vertex> = (0..6).collect();
    push(
        "anti-cycle |A|=6, sum of all six".into(),
        Graph::cycle(6).complement(),
        anticycle_fan_inequality(&a6, 0, 4).expect("positions"),
        false,
        [0, 3],
    );
    let a7: Vec<Vertex> = (0..7).collect();
    for k in [4, 5] {
        push(
            format!("anti-cycle |A|=7, k={k}"),
            Graph::cycle(7).complement(),
            anticycle_fan_inequality(&a7, 0, k).expect("positions"),
            false,
            [0, 3],
        );
    }
    // one extra vertex whose lifting coefficient is positive
    let mut attach = |name: &str, graph: Graph, ineq: LinearInequality, to: &[Vertex]| {
        let n = graph.vertex_count();
        let edges: Vec<_> = to.iter().map(|&u| (u, n)).collect();
        let host = graph.extended(1, &edges).expect("attach");
        let lifted = lift_coefficient(&host, &ineq, n).expect("small host");
        assert!(lifted > 0, "{name}");
        cases.push(Case {
            name: name.into(),
            graph: host,
            ineq,
            expected: false,
        });
    };
    attach(
        "hole C5 + vertex seeing the whole ring",
        Graph::cycle(5),
        hole_inequality(&StructureWitness::hole((0..5).collect())).expect("hole"),
        &[0, 1, 2, 3, 4],
    );
    attach(
        "hole C7 + vertex seeing the whole ring",
        Graph::cycle(7),
        hole_inequality(&StructureWitness::hole((0..7).collect())).expect("hole"),
        &[0, 1, 2, 3, 4, 5, 6],
    );
    attach(
        "star |I|=3 in K1,3 + vertex seeing every leaf",
        Graph::complete_bipartite(1, 3),
        star_inequality(&StructureWitness::star(0, vec![1, 2, 3])).expect("star"),
        &[1, 2, 3],
    );
    cases
}

/// Runs the fixed matrix of structures, sizes and hosts against exact face
/// dimensions. Rows run in parallel; output order is fixed.
pub fn certify_theorem_matrix() -> Vec<CertRow> {
    let cases = structure_cases();
    cases
        .into_par_iter()
        .map(|c| {
            let report = face_dimension(&c.graph, &c.ineq).expect("small graph");
            let pass = report.is_facet == c.expected && report.valid;
            CertRow {
                name: c.name,
                vertices: c.graph.vertex_count(),
                inequality: c.ineq.to_line(),
                expected_facet: c.expected,
                report,
                pass,
            }
        })
        .collect()
}

/// Plain-text table of a certification run.
pub fn render_certification(rows: &[CertRow]) -> String {
    let mut s = format!(
        "{:<55} {:>3} {:>6} {:>4} {:>8} {:>8}  {}\n",
        "case", "n", "tight", "dim", "expected", "facet", "verdict"
    );
    for r in rows {
        s.push_str(&format!(
            "{:<55} {:>3} {:>6} {:>4} {:>8} {:>8}  {}\n",
            r.name,
            r.vertices,
            r.report.tight_point_count,
            r.report.affine_dimension,
            r.expected_facet,
            r.report.is_facet,
            if r.pass { "ok" } else { "MISMATCH" }
        ));
    }
    s
}

/// Which separable family describes the polytope in a complete-description check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DescribedFamily {
    /// All stars of a tree.
    TreeStars,
    /// All double stars of a complete bipartite graph.
    BipartiteDoubleStars,
}

/// Outcome of one random objective.
#[derive(Clone, Debug, Serialize)]
pub struct DescriptionTrial {
    pub lp_value: String,
    pub oracle_value: String,
    pub integral: bool,
    pub rounds: usize,
}

/// Largest graph accepted by the complete-description check.
pub const DESCRIPTION_LIMIT: usize = 14;

fn is_tree(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n == 0 || g.edge_count() != n - 1 {
        return false;
    }
    let mut seen = VertexSet::new(n);
    let mut stack = vec![0];
    seen.insert(0);
    while let Some(v) = stack.pop() {
        for u in g.neighbors(v).iter() {
            if seen.insert(u) {
                stack.push(u);
            }
        }
    }
    seen.len() == n
}

/// Bipartition sides if `g` is complete bipartite with both sides nonempty.
pub fn complete_bipartite_sides(g: &Graph) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    let n = g.vertex_count();
    if n < 2 {
        return None;
    }
    let right = g.neighbors(0).to_vec();
    let left: Vec<Vertex> = (0..n).filter(|v| !g.neighbors(0).contains(*v)).collect();
    if right.is_empty() || left.len() * right.len() != g.edge_count() {
        return None;
    }
    let ok = left
        .iter()
        .all(|&a| right.iter().all(|&b| g.has_edge(a, b)));
    ok.then_some((left, right))
}

fn separate_family(
    g: &Graph,
    family: DescribedFamily,
    x: &[BigRational],
    sides: &Option<(Vec<Vertex>, Vec<Vertex>)>,
) -> Vec<LinearInequality> {
    let mut cuts = Vec::new();
    match family {
        DescribedFamily::TreeStars => {
            for h in g.vertices().iter() {
                let cands = g.neighbors(h).to_vec();
                if let Some(c) = separate_star_exact_independent(h, &cands, x) {
                    cuts.push(c);
                }
            }
        }
        DescribedFamily::BipartiteDoubleStars => {
            let (left, right) = sides.as_ref().expect("sides");
            for (side, other) in [(left, right), (right, left)] {
                for &h in side {
                    for &u in side {
                        if h != u {
                            if let Some(c) = separate_double_star_exact(h, u, other, x) {
                                cuts.push(c);
                            }
                        }
                    }
                }
            }
        }
    }
    cuts
}

/// Maximizes random rational objectives over the bounds plus the named
/// family (generated by exact separation) in exact arithmetic, and compares
/// each optimum with the weighted oracle.
pub fn verify_complete_description(
    g: &Graph,
    family: DescribedFamily,
    trials: usize,
    seed: u64,
) -> Result<Vec<DescriptionTrial>> {
    let n = g.vertex_count();
    if n > DESCRIPTION_LIMIT {
        return Err(Error::SizeGuard {
            what: "complete-description check",
            got: n,
            limit: DESCRIPTION_LIMIT,
        });
    }
    let sides = match family {
        DescribedFamily::TreeStars => {
            if !is_tree(g) {
                return Err(Error::Precondition("graph is not a tree".into()));
            }
            None
        }
        DescribedFamily::BipartiteDoubleStars => {
            let s = complete_bipartite_sides(g);
            if s.is_none() {
                return Err(Error::Precondition(
                    "graph is not complete bipartite".into(),
                ));
            }
            s
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let w: Vec<Ratio<i64>> = (0..n)
            .map(|_| Ratio::new(rng.random_range(1..=30), rng.random_range(1..=7)))
            .collect();
        let obj: Vec<BigRational> = w
            .iter()
            .map(|r| BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom())))
            .collect();
        let mut s: Simplex<BigRational> = Simplex::new(
            vec![BigRational::zero(); n],
            vec![BigRational::one(); n],
            obj,
        );
        let mut rounds = 0;
        loop {
            rounds += 1;
            if s.solve() != LpStatus::Optimal {
                return Err(Error::Precondition(
                    "exact LP did not reach optimality".into(),
                ));
            }
            let x = s.values();
            let cuts = separate_family(g, family, &x, &sides);
            if cuts.is_empty() {
                break;
            }
            for c in &cuts {
                s.add_row(&Row::from_inequality(c));
            }
        }
        let x = s.values();
        let integral = x.iter().all(|v| v.is_integer());
        let lp_value = s.objective_value();
        let oracle_value = oracle::max_iuc_oracle(g, Some(&w))?.value;
        let ov = BigRational::new(
            BigInt::from(*oracle_value.numer()),
            BigInt::from(*oracle_value.denom()),
        );
        let trial = DescriptionTrial {
            lp_value: lp_value.to_string(),
            oracle_value: oracle_value.to_string(),
            integral: integral && lp_value == ov,
            rounds,
        };
        out.push(trial);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes() {
        assert_eq!(enumerate_iucs(&Graph::complete(3)).unwrap().len(), 8);
        assert_eq!(enumerate_iucs(&Graph::path(3)).unwrap().len(), 7);
        assert_eq!(enumerate_iucs(&Graph::cycle(4)).unwrap().len(), 11);
        assert!(enumerate_iucs(&Graph::empty(25)).is_err());
    }

    #[test]
    fn faces_on_small_graphs() {
        let p3 = Graph::path(3);
        let r = face_dimension(&p3, &ot_inequality(&p3.open_triangles()[0])).unwrap();
        assert!(r.is_facet);
        assert_eq!(r.tight_point_count, 3);
        assert_eq!(r.certificate.len(), 3);
        let c4 = Graph::cycle(4);
        for t in c4.open_triangles() {
            assert!(!face_dimension(&c4, &ot_inequality(&t)).unwrap().is_facet);
        }
        let h = hole_inequality(&StructureWitness::hole(vec![0, 1, 2, 3])).unwrap();
        assert!(face_dimension(&c4, &h).unwrap().is_facet);
        let cat = enumerate_iucs(&c4).unwrap();
        assert_eq!(catalog_dimension(&cat), 4);
        for v in 0..4 {
            assert!(nonnegativity_face(&cat, v).is_facet);
            assert!(
                face_dimension_in(&cat, &LinearInequality::bound(v))
                    .unwrap()
                    .is_facet
            );
        }
    }

    #[test]
    fn invalid_inequality_flagged() {
        let mut h = hole_inequality(&StructureWitness::hole((0..5).collect())).unwrap();
        h.rhs = 2;
        let r = face_dimension(&Graph::cycle(5), &h).unwrap();
        assert!(!r.valid && !r.is_facet);
    }

    #[test]
    fn bipartite_sides() {
        let (l, r) = complete_bipartite_sides(&Graph::complete_bipartite(2, 3)).unwrap();
        assert_eq!((l, r), (vec![0, 1], vec![2, 3, 4]));
        assert!(complete_bipartite_sides(&Graph::cycle(5)).is_none());
        assert!(complete_bipartite_sides(&Graph::cycle(6)).is_none());
    }

    #[test]
    fn small_complete_descriptions() {
        let star = Graph::complete_bipartite(1, 5);
        for t in verify_complete_description(&star, DescribedFamily::TreeStars, 10, 1).unwrap() {
            assert!(t.integral, "{t:?}");
        }
        let k34 = Graph::complete_bipartite(3, 4);
        for t in
            verify_complete_description(&k34, DescribedFamily::BipartiteDoubleStars, 10, 2).unwrap()
        {
            assert!(t.integral, "{t:?}");
        }
        assert!(
            verify_complete_description(&Graph::cycle(4), DescribedFamily::TreeStars, 1, 0)
                .is_err()
        );
    }
}
