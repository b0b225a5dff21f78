//! Exact maximum (weighted) IUC by bitmask branch-and-bound.
//!
//! Vertices are decided in ascending id order, include branch first, and an
//! incumbent is replaced only by a strictly better set, so the reported
//! witness is deterministic. The bound adds every still-addable candidate and
//! then subtracts the lighter vertex of a greedy packing of pairwise conflicts.

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Largest graph accepted by the oracle.
pub const ORACLE_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub value: Ratio<i64>,
    pub witness: VertexSet,
}

/// α^ω(G) together with a maximum IUC.
pub fn iuc_number(g: &Graph) -> Result<(usize, VertexSet)> {
    let w = vec![1i64; g.vertex_count()];
    let (v, s) = max_weight_iuc(g, &w)?;
    Ok((v as usize, s))
}

/// Maximum weight IUC; unit weights when `weights` is `None`.
pub fn max_iuc_oracle(g: &Graph, weights: Option<&[Ratio<i64>]>) -> Result<OracleResult> {
    let n = g.vertex_count();
    let Some(ws) = weights else {
        let (v, witness) = iuc_number(g)?;
        return Ok(OracleResult {
            value: Ratio::from_integer(v as i64),
            witness,
        });
    };
    if ws.len() != n {
        return Err(Error::Precondition(format!(
            "{} weights for {n} vertices",
            ws.len()
        )));
    }
    if ws.iter().any(|w| *w.numer() < 0) {
        return Err(Error::Precondition("negative weight".into()));
    }
    let den = ws.iter().fold(1i64, |acc, w| acc.lcm(w.denom()));
    let scaled: Vec<i64> = ws.iter().map(|w| w.numer() * (den / w.denom())).collect();
    let (v, witness) = max_weight_iuc(g, &scaled)?;
    Ok(OracleResult {
        value: Ratio::new(v, den),
        witness,
    })
}

/// Maximum of `Σ w_i` over IUCs, decomposed over connected components of
/// the positive-weight vertices.
pub fn max_weight_iuc(g: &Graph, w: &[i64]) -> Result<(i64, VertexSet)> {
    let adj = masks(g)?;
    check_weights(g, w)?;
    let mut live: u64 = (0..g.vertex_count())
        .filter(|&v| w[v] > 0)
        .fold(0, |m, v| m | 1 << v);
    let mut total = 0;
    let mut set = 0u64;
    while live != 0 {
        let comp = component(&adj, live, live.trailing_zeros() as usize);
        live &= !comp;
        let mut s = Search::new(&adj, w);
        s.run(0, 0, comp);
        total += s.best;
        set |= s.best_set;
    }
    Ok((total, mask_to_set(set, g.vertex_count())))
}

/// Maximum of `Σ w_i` over IUCs that contain `v`.
pub fn max_weight_iuc_containing(g: &Graph, w: &[i64], v: Vertex) -> Result<(i64, VertexSet)> {
    let adj = masks(g)?;
    check_weights(g, w)?;
    if v >= g.vertex_count() {
        return Err(Error::Precondition(format!("vertex {v} out of range")));
    }
    let cand: u64 = (0..g.vertex_count())
        .filter(|&u| u != v && w[u] > 0)
        .fold(0, |m, u| m | 1 << u);
    let mut s = Search::new(&adj, w);
    s.best = i64::MIN;
    s.run(1 << v, w[v], cand);
    Ok((s.best, mask_to_set(s.best_set, g.vertex_count())))
}

fn check_weights(g: &Graph, w: &[i64]) -> Result<()> {
    if w.len() != g.vertex_count() {
        return Err(Error::Precondition(format!(
            "{} weights for {} vertices",
            w.len(),
            g.vertex_count()
        )));
    }
    if w.iter().any(|&x| x < 0) {
        return Err(Error::Precondition("negative weight".into()));
    }
    Ok(())
}

fn masks(g: &Graph) -> Result<Vec<u64>> {
    g.masks().ok_or(Error::SizeGuard {
        what: "the exact oracle",
        got: g.vertex_count(),
        limit: ORACLE_LIMIT,
    })
}

fn mask_to_set(m: u64, n: usize) -> VertexSet {
    VertexSet::from_iter_in(n, bits(m))
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

fn component(adj: &[u64], within: u64, start: usize) -> u64 {
    let mut comp = 1u64 << start;
    let mut frontier = comp;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & within & !comp;
        comp |= new;
        frontier |= new;
    }
    comp
}

/// Clique of `s` that `c` would join, `Some(0)` when `c` has no neighbor in
/// `s`, `None` when adding `c` creates an open triangle.
#[inline]
fn joins(adj: &[u64], s: u64, c: usize) -> Option<u64> {
    let t = adj[c] & s;
    if t == 0 {
        return Some(0);
    }
    let s0 = t.trailing_zeros() as usize;
    let comp = (adj[s0] | 1 << s0) & s;
    (t == comp).then_some(comp)
}

struct Search<'a> {
    adj: &'a [u64],
    w: &'a [i64],
    best: i64,
    best_set: u64,
}

impl<'a> Search<'a> {
    fn new(adj: &'a [u64], w: &'a [i64]) -> Self {
        Search {
            adj,
            w,
            best: 0,
            best_set: 0,
        }
    }

    fn run(&mut self, s: u64, ws: i64, cand: u64) {
        if ws > self.best {
            self.best = ws;
            self.best_set = s;
        }
        let mut comps = [0u64; 64];
        let mut live = 0u64;
        let mut sum = 0i64;
        for c in bits(cand) {
            if let Some(k) = joins(self.adj, s, c) {
                comps[c] = k;
                live |= 1 << c;
                sum += self.w[c];
            }
        }
        if live == 0 || ws + sum <= self.best {
            return;
        }
        let mut bound = ws + sum;
        let mut free = live;
        while free != 0 {
            let c = free.trailing_zeros() as usize;
            free &= free - 1;
            let clash = bits(free).find(|&d| {
                if self.adj[c] >> d & 1 == 1 {
                    comps[c] != comps[d]
                } else {
                    comps[c] != 0 && comps[c] == comps[d]
                }
            });
            if let Some(d) = clash {
                free &= !(1 << d);
                bound -= self.w[c].min(self.w[d]);
                if bound <= self.best {
                    return;
                }
            }
        }
        let c = live.trailing_zeros() as usize;
        let rest = live & !(1 << c);
        self.run(s | 1 << c, ws + self.w[c], rest);
        self.run(s, ws, rest);
    }
}
