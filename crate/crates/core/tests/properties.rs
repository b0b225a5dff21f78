use std::collections::BTreeSet;

use proptest::prelude::*;

use iuc_core::cuts::{generate_root_cuts, CutConfig};
use iuc_core::polytope::enumerate_iucs;
use iuc_core::structure::{chordless_cycles_within, enumerate_4holes, is_chordless_cycle};
use iuc_core::{CutFlags, Graph, SearchCaps, VertexSet};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn set_of(n: usize, mask: u32) -> VertexSet {
    VertexSet::from_iter_in(n, (0..n).filter(|v| mask >> v & 1 == 1))
}

/// Induced P3 test on every ordered triple.
fn brute_is_iuc(g: &Graph, s: &[usize]) -> bool {
    for &c in s {
        for &a in s {
            for &b in s {
                if a < b
                    && a != c
                    && b != c
                    && g.has_edge(c, a)
                    && g.has_edge(c, b)
                    && !g.has_edge(a, b)
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Vertex sets of size ≥ 4 that induce a connected 2-regular graph.
fn brute_holes(g: &Graph, len: Option<usize>) -> BTreeSet<Vec<usize>> {
    let n = g.vertex_count();
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << n {
        let vs: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        if vs.len() < 4 || len.is_some_and(|l| vs.len() != l) {
            continue;
        }
        let s = set_of(n, mask);
        if vs.iter().any(|&v| g.neighbors(v).intersection_len(&s) != 2) {
            continue;
        }
        let mut seen = VertexSet::new(n);
        let mut stack = vec![vs[0]];
        seen.insert(vs[0]);
        while let Some(v) = stack.pop() {
            for u in g.neighbors(v).intersection(&s).iter() {
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        if seen.len() == vs.len() {
            out.insert(vs);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complement_is_an_involution(g in graph(12)) {
        let c = g.complement();
        let n = g.vertex_count();
        prop_assert_eq!(c.edge_count() + g.edge_count(), n * (n - 1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn open_triangles_match_triples(g in graph(10)) {
        let n = g.vertex_count();
        let mut expect = 0;
        for c in 0..n {
            for a in 0..n {
                for b in a + 1..n {
                    if a != c && b != c && g.has_edge(c, a) && g.has_edge(c, b) && !g.has_edge(a, b) {
                        expect += 1;
                    }
                }
            }
        }
        prop_assert_eq!(g.open_triangles().len(), expect);
        prop_assert_eq!(g.open_triangle_count(), expect);
    }

    #[test]
    fn iuc_test_matches_triples(g in graph(10), mask in any::<u32>()) {
        let n = g.vertex_count();
        let mask = mask & ((1 << n) - 1);
        let vs: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        prop_assert_eq!(g.is_iuc(&set_of(n, mask)), brute_is_iuc(&g, &vs));
    }

    #[test]
    fn four_holes_match_brute_force(g in graph(9)) {
        let found: BTreeSet<Vec<usize>> = enumerate_4holes(&g)
            .into_iter()
            .map(|h| {
                let mut r = h.ring.clone();
                r.sort();
                r
            })
            .collect();
        prop_assert_eq!(found, brute_holes(&g, Some(4)));
    }

    #[test]
    fn chordless_cycles_match_brute_force(g in graph(9)) {
        let out = chordless_cycles_within(&g, &g.vertices(), 4, SearchCaps::count(usize::MAX), &|_| true);
        prop_assert!(!out.timed_out);
        let mut found = BTreeSet::new();
        for c in &out.found {
            prop_assert!(is_chordless_cycle(&g, c));
            let mut s = c.clone();
            s.sort();
            prop_assert!(found.insert(s), "cycle reported twice");
        }
        prop_assert_eq!(found, brute_holes(&g, None));
    }

    #[test]
    fn catalog_is_downward_closed(g in graph(9)) {
        let cat = enumerate_iucs(&g).unwrap();
        let members: BTreeSet<u64> = cat.masks().iter().copied().collect();
        prop_assert!(members.contains(&0));
        for &m in cat.masks() {
            for v in 0..g.vertex_count() {
                if m >> v & 1 == 1 {
                    prop_assert!(members.contains(&(m & !(1 << v))));
                }
            }
        }
        let n = g.vertex_count();
        let all = (0u32..1 << n).filter(|&m| g.is_iuc(&set_of(n, m))).count();
        prop_assert_eq!(cat.len(), all);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// With every cut family on, the formulation (pool plus residual open
    /// triangles) must still reject exactly the non-IUC 0/1 points.
    #[test]
    fn formulation_rejects_exactly_non_iucs(g in graph(12)) {
        let cfg = CutConfig { flags: CutFlags::ALL, ..CutConfig::default() };
        let rows = generate_root_cuts(&g, &cfg).formulation_rows();
        let n = g.vertex_count();
        for mask in 0u32..1 << n {
            let s = set_of(n, mask);
            let rejected = rows.iter().any(|r| r.lhs_set(&s) > r.rhs);
            prop_assert_eq!(rejected, !g.is_iuc(&s), "mask {:b}", mask);
        }
    }
}
