//! Valid inequalities for the IUC polytope, their validation and lifting.
//!
//! Coefficients and right-hand sides are exact integers. Validation and
//! lifting restrict the graph to the support (plus the lifted vertex) before
//! calling the exact oracle, which is sound because IUCs are hereditary.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, OpenTriangle, Vertex, VertexSet};
use crate::oracle;
use crate::structure::{StructureKind, StructureWitness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    OT,
    Hole,
    AntiHole,
    Star,
    DoubleStar,
    Fan,
    Wheel,
    /// Chordless path without its hub.
    Path,
    Lifted,
    Bound,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::OT,
        Family::Hole,
        Family::AntiHole,
        Family::Star,
        Family::DoubleStar,
        Family::Fan,
        Family::Wheel,
        Family::Path,
        Family::Lifted,
        Family::Bound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::OT => "OT",
            Family::Hole => "Hole",
            Family::AntiHole => "AntiHole",
            Family::Star => "Star",
            Family::DoubleStar => "DoubleStar",
            Family::Fan => "Fan",
            Family::Wheel => "Wheel",
            Family::Path => "Path",
            Family::Lifted => "Lifted",
            Family::Bound => "Bound",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown family {s:?}")))
    }
}

/// `Σ coeffs[v] · x_v ≤ rhs` with positive integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearInequality {
    pub coeffs: BTreeMap<Vertex, i64>,
    pub rhs: i64,
    pub family: Family,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub source: Option<StructureWitness>,
}

impl LinearInequality {
    /// Zero coefficients are dropped.
    pub fn new(
        family: Family,
        terms: impl IntoIterator<Item = (Vertex, i64)>,
        rhs: i64,
    ) -> LinearInequality {
        let mut coeffs = BTreeMap::new();
        for (v, c) in terms {
            *coeffs.entry(v).or_insert(0) += c;
        }
        coeffs.retain(|_, c| *c != 0);
        LinearInequality {
            coeffs,
            rhs,
            family,
            source: None,
        }
    }

    fn unit(family: Family, vs: &[Vertex], rhs: i64) -> LinearInequality {
        Self::new(family, vs.iter().map(|&v| (v, 1)), rhs)
    }

    fn with_source(mut self, w: &StructureWitness) -> Self {
        self.source = Some(w.clone());
        self
    }

    pub fn bound(v: Vertex) -> LinearInequality {
        Self::new(Family::Bound, [(v, 1)], 1)
    }

    pub fn coeff(&self, v: Vertex) -> i64 {
        self.coeffs.get(&v).copied().unwrap_or(0)
    }

    pub fn support(&self) -> Vec<Vertex> {
        self.coeffs.keys().copied().collect()
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn lhs(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().map(|(&v, &c)| c as f64 * x[v]).sum()
    }

    pub fn lhs_set(&self, s: &VertexSet) -> i64 {
        self.coeffs
            .iter()
            .filter(|(v, _)| s.contains(**v))
            .map(|(_, c)| c)
            .sum()
    }

    /// Amount by which `x` violates the inequality (negative when satisfied).
    pub fn violation(&self, x: &[f64]) -> f64 {
        self.lhs(x) - self.rhs as f64
    }

    /// Same coefficients and right-hand side, ignoring family and source.
    pub fn same_terms(&self, other: &LinearInequality) -> bool {
        self.coeffs == other.coeffs && self.rhs == other.rhs
    }

    /// Relabels vertices through `map` (e.g. induced-subgraph ids back to host ids).
    pub fn relabel(&self, map: &[Vertex]) -> LinearInequality {
        LinearInequality {
            coeffs: self.coeffs.iter().map(|(&v, &c)| (map[v], c)).collect(),
            rhs: self.rhs,
            family: self.family,
            source: None,
        }
    }

    /// Text line `family; rhs; v:coeff,v:coeff,...` in ascending vertex order.
    pub fn to_line(&self) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(v, c)| format!("{v}:{c}"))
            .collect();
        format!("{}; {}; {}", self.family, self.rhs, terms.join(","))
    }

    pub fn from_line(line: &str) -> Result<LinearInequality> {
        let parts: Vec<&str> = line.split(';').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::parse(0, format!("expected 3 fields in {line:?}")));
        }
        let family: Family = parts[0].parse()?;
        let rhs: i64 = parts[1]
            .parse()
            .map_err(|_| Error::parse(0, format!("bad rhs {:?}", parts[1])))?;
        let mut terms = Vec::new();
        for t in parts[2].split(',').filter(|t| !t.is_empty()) {
            let (v, c) = t
                .split_once(':')
                .ok_or_else(|| Error::parse(0, format!("bad term {t:?}")))?;
            let v = v
                .trim()
                .parse()
                .map_err(|_| Error::parse(0, format!("bad vertex {v:?}")))?;
            let c = c
                .trim()
                .parse()
                .map_err(|_| Error::parse(0, format!("bad coefficient {c:?}")))?;
            terms.push((v, c));
        }
        Ok(LinearInequality::new(family, terms, rhs))
    }
}

impl fmt::Display for LinearInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

fn expect_kind(w: &StructureWitness, kind: StructureKind) -> Result<()> {
    if w.kind != kind {
        return Err(Error::Precondition(format!(
            "expected {kind:?}, got {:?}",
            w.kind
        )));
    }
    Ok(())
}

/// Right-hand side of the hole inequality for a ring of `len` vertices,
/// which is also α^ω of the cycle.
pub fn hole_rhs(len: usize) -> i64 {
    let (q, r) = ((len / 3) as i64, (len % 3) as i64);
    2 * q + 2 * r / 3
}

/// α^ω of the chordless path on `len` vertices.
pub fn path_rhs(len: usize) -> i64 {
    let (q, r) = ((len / 3) as i64, (len % 3) as i64);
    2 * q + 2 * (r + 1) / 3
}

pub fn ot_inequality(t: &OpenTriangle) -> LinearInequality {
    LinearInequality::unit(Family::OT, &t.vertices(), 2)
}

pub fn hole_inequality(h: &StructureWitness) -> Result<LinearInequality> {
    expect_kind(h, StructureKind::Hole)?;
    if h.ring.len() < 4 {
        return Err(Error::Precondition(format!(
            "hole of length {}",
            h.ring.len()
        )));
    }
    Ok(LinearInequality::unit(Family::Hole, &h.ring, hole_rhs(h.ring.len())).with_source(h))
}

pub fn antihole_inequality(a: &StructureWitness) -> Result<LinearInequality> {
    expect_kind(a, StructureKind::AntiHole)?;
    if a.ring.len() < 6 {
        return Err(Error::Precondition(format!(
            "anti-hole of length {}",
            a.ring.len()
        )));
    }
    Ok(LinearInequality::unit(Family::AntiHole, &a.ring, (a.ring.len() / 2) as i64).with_source(a))
}

pub fn star_inequality(s: &StructureWitness) -> Result<LinearInequality> {
    expect_kind(s, StructureKind::Star)?;
    let k = s.leaves.len() as i64;
    if k < 2 {
        return Err(Error::Precondition(format!("star with {k} leaves")));
    }
    let h = s
        .hub
        .ok_or_else(|| Error::Precondition("star without hub".into()))?;
    let terms = s.leaves.iter().map(|&l| (l, 1)).chain([(h, k - 1)]);
    Ok(LinearInequality::new(Family::Star, terms, k).with_source(s))
}

/// The pair with the heavy coefficient on `hub`, then on `second_hub`.
pub fn double_star_inequalities(d: &StructureWitness) -> Result<[LinearInequality; 2]> {
    expect_kind(d, StructureKind::DoubleStar)?;
    let k = d.leaves.len() as i64;
    let (Some(h), Some(u)) = (d.hub, d.second_hub) else {
        return Err(Error::Precondition("double star needs two hubs".into()));
    };
    if k < 2 {
        return Err(Error::Precondition(format!("double star with {k} leaves")));
    }
    let make = |a: i64, b: i64| {
        let terms = d.leaves.iter().map(|&l| (l, 1)).chain([(h, a), (u, b)]);
        LinearInequality::new(Family::DoubleStar, terms, k).with_source(d)
    };
    Ok([make(k - 1, 1), make(1, k - 1)])
}

pub fn fan_inequality(f: &StructureWitness) -> Result<LinearInequality> {
    expect_kind(f, StructureKind::Fan)?;
    let p = f.ring.len();
    if p < 4 {
        return Err(Error::Precondition(format!("fan path of length {p}")));
    }
    let h = f
        .hub
        .ok_or_else(|| Error::Precondition("fan without hub".into()))?;
    let rhs = path_rhs(p);
    let terms = f.ring.iter().map(|&v| (v, 1)).chain([(h, rhs - 2)]);
    Ok(LinearInequality::new(Family::Fan, terms, rhs).with_source(f))
}

/// The fan's path inequality without the hub term.
pub fn path_inequality(f: &StructureWitness) -> Result<LinearInequality> {
    expect_kind(f, StructureKind::Fan)?;
    Ok(LinearInequality::unit(Family::Path, &f.ring, path_rhs(f.ring.len())).with_source(f))
}

pub fn wheel_inequality(w: &StructureWitness) -> Result<LinearInequality> {
    expect_kind(w, StructureKind::Wheel)?;
    let len = w.ring.len();
    if len < 4 {
        return Err(Error::Precondition(format!("wheel ring of length {len}")));
    }
    let h = w
        .hub
        .ok_or_else(|| Error::Precondition("wheel without hub".into()))?;
    let rhs = hole_rhs(len);
    let terms = w.ring.iter().map(|&v| (v, 1)).chain([(h, rhs - 2)]);
    Ok(LinearInequality::new(Family::Wheel, terms, rhs).with_source(w))
}

/// Anti-cycle inequality `Σ_{j=i..i+3} x_j + x_k + x_{k+1} ≤ 3` where the
/// positions are taken cyclically along the anti-hole ring.
pub fn anticycle_fan_inequality(ring: &[Vertex], i: usize, k: usize) -> Result<LinearInequality> {
    let n = ring.len();
    if n < 6 || k < i + 4 || k > n + i - 2 {
        return Err(Error::Precondition(format!(
            "positions i={i}, k={k} invalid for an anti-cycle of length {n}"
        )));
    }
    let at = |p: usize| ring[p % n];
    let vs: Vec<Vertex> = (i..i + 4).map(at).chain([at(k), at(k + 1)]).collect();
    Ok(LinearInequality::unit(Family::Lifted, &vs, 3))
}

/// Every inequality the witness defines.
pub fn inequalities_for(w: &StructureWitness) -> Result<Vec<LinearInequality>> {
    Ok(match w.kind {
        StructureKind::Hole => vec![hole_inequality(w)?],
        StructureKind::AntiHole => vec![antihole_inequality(w)?],
        StructureKind::Star => vec![star_inequality(w)?],
        StructureKind::DoubleStar => double_star_inequalities(w)?.to_vec(),
        StructureKind::Fan => vec![fan_inequality(w)?],
        StructureKind::Wheel => vec![wheel_inequality(w)?],
    })
}

fn check_support(g: &Graph, ineq: &LinearInequality) -> Result<()> {
    match ineq.max_vertex() {
        Some(v) if v >= g.vertex_count() => Err(Error::Precondition(format!(
            "inequality references vertex {v} outside the graph"
        ))),
        None => Err(Error::Precondition("empty support".into())),
        _ => Ok(()),
    }
}

/// Maximum of the left-hand side over all IUCs of `g`.
pub fn max_lhs(g: &Graph, ineq: &LinearInequality) -> Result<i64> {
    check_support(g, ineq)?;
    let supp = VertexSet::from_iter_in(g.vertex_count(), ineq.support());
    let (sub, map) = g.induced_subgraph(&supp);
    let w: Vec<i64> = map.iter().map(|&v| ineq.coeff(v)).collect();
    Ok(oracle::max_weight_iuc(&sub, &w)?.0)
}

/// True iff every IUC of `g` satisfies the inequality.
pub fn validate_inequality(g: &Graph, ineq: &LinearInequality) -> Result<bool> {
    Ok(max_lhs(g, ineq)? <= ineq.rhs)
}

/// `rhs − max{πx : x an IUC containing v}`, clamped at zero.
pub fn lift_coefficient(g: &Graph, ineq: &LinearInequality, v: Vertex) -> Result<i64> {
    check_support(g, ineq)?;
    if ineq.coeffs.contains_key(&v) {
        return Err(Error::Precondition(format!(
            "vertex {v} already in the support"
        )));
    }
    if v >= g.vertex_count() {
        return Err(Error::Precondition(format!("vertex {v} out of range")));
    }
    let mut keep = VertexSet::from_iter_in(g.vertex_count(), ineq.support());
    keep.insert(v);
    let (sub, map) = g.induced_subgraph(&keep);
    let w: Vec<i64> = map.iter().map(|&u| ineq.coeff(u)).collect();
    let local = map.iter().position(|&u| u == v).expect("v kept");
    let (best, _) = oracle::max_weight_iuc_containing(&sub, &w, local)?;
    Ok((ineq.rhs - best).max(0))
}

/// Lifts each vertex of `order` in turn; zero coefficients stay out of the support.
pub fn sequential_lift(
    g: &Graph,
    ineq: &LinearInequality,
    order: &[Vertex],
) -> Result<LinearInequality> {
    let mut cur = ineq.clone();
    for &v in order {
        if cur.coeffs.contains_key(&v) {
            continue;
        }
        let c = lift_coefficient(g, &cur, v)?;
        if c > 0 {
            cur.coeffs.insert(v, c);
            cur.family = Family::Lifted;
        }
    }
    Ok(cur)
}

/// Closed-form sufficient conditions for the lifting coefficient of `x_v`
/// into the witness's inequality to be zero. `false` means no guarantee,
/// not that the coefficient is positive.
pub fn check_lift_vanishing_conditions(g: &Graph, w: &StructureWitness, v: Vertex) -> bool {
    if w.vertices().contains(&v) {
        return false;
    }
    let nv = g.neighbors(v);
    let ring_hits = w.ring.iter().filter(|&&u| nv.contains(u)).count();
    let len = w.ring.len();
    match w.kind {
        StructureKind::Hole => hole_condition(len, ring_hits),
        StructureKind::AntiHole => len % 2 == 1 && (ring_hits <= 2 || ring_hits + 2 >= len),
        StructureKind::Star => {
            let h = w.hub.expect("star hub");
            let leaf_hits = w.leaves.iter().filter(|&&l| nv.contains(l)).count();
            if nv.contains(h) {
                leaf_hits > 0
            } else {
                leaf_hits < w.leaves.len()
            }
        }
        StructureKind::DoubleStar => {
            let (h, u) = (w.hub.expect("hub"), w.second_hub.expect("second hub"));
            let leaf_hits = w.leaves.iter().filter(|&&l| nv.contains(l)).count();
            // both orientations; the heavy hub is `a`, the light one `b`
            let side = |a: Vertex, b: Vertex| !nv.contains(a) || !nv.contains(b) || leaf_hits > 0;
            side(h, u) && side(u, h)
        }
        StructureKind::Fan => {
            if len % 3 == 2 {
                return false;
            }
            let h = w.hub.expect("fan hub");
            if nv.contains(h) {
                ring_hits > len.div_ceil(2)
            } else {
                ring_hits < len / 2
            }
        }
        StructureKind::Wheel => hole_condition(len, ring_hits),
    }
}

fn hole_condition(len: usize, hits: usize) -> bool {
    match len % 3 {
        1 => hits <= 3,
        2 => hits <= 2,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::StructureWitness as W;

    #[test]
    fn closed_forms() {
        assert_eq!(hole_rhs(4), 2);
        assert_eq!(hole_rhs(6), 4);
        assert_eq!(hole_rhs(7), 4);
        let f = |p: usize| fan_inequality(&W::fan(0, (1..=p).collect())).unwrap();
        assert_eq!((f(4).coeff(0), f(4).rhs), (1, 3));
        assert_eq!((f(7).coeff(0), f(7).rhs), (3, 5));
        assert_eq!((f(6).coeff(0), f(6).rhs), (2, 4));
        let wh = |p: usize| wheel_inequality(&W::wheel(0, (1..=p).collect())).unwrap();
        assert_eq!((wh(4).coeff(0), wh(4).rhs), (0, 2));
        assert!(wh(4).same_terms(&hole_inequality(&W::hole(vec![1, 2, 3, 4])).unwrap()));
        assert_eq!((wh(5).coeff(0), wh(5).rhs), (1, 3));
        assert_eq!((wh(6).coeff(0), wh(6).rhs), (2, 4));
        let s = star_inequality(&W::star(0, vec![1, 2, 3])).unwrap();
        assert_eq!((s.coeff(0), s.rhs), (2, 3));
        let s2 = star_inequality(&W::star(1, vec![0, 2])).unwrap();
        assert!(s2.same_terms(&ot_inequality(&OpenTriangle {
            center: 1,
            leaf_a: 0,
            leaf_b: 2
        })));
        let [a, b] = double_star_inequalities(&W::double_star(0, 1, vec![2, 3, 4])).unwrap();
        assert_eq!(
            (a.coeff(0), a.coeff(1), b.coeff(0), b.coeff(1)),
            (2, 1, 1, 2)
        );
        let ah = |n: usize| {
            antihole_inequality(&W::anti_hole((0..n).collect()))
                .unwrap()
                .rhs
        };
        assert_eq!((ah(6), ah(7), ah(9)), (3, 3, 4));
        assert!(antihole_inequality(&W::anti_hole((0..5).collect())).is_err());
        assert!(hole_inequality(&W::hole(vec![0, 1, 2])).is_err());
    }

    #[test]
    fn line_round_trip() {
        let s = star_inequality(&W::star(3, vec![0, 1, 2])).unwrap();
        let line = s.to_line();
        assert_eq!(line, "Star; 3; 0:1,1:1,2:1,3:2");
        let back = LinearInequality::from_line(&line).unwrap();
        assert!(back.same_terms(&s));
        assert_eq!(back.family, Family::Star);
        assert!(LinearInequality::from_line("Nope; 1; 0:1").is_err());
        assert!(LinearInequality::from_line("OT; x; 0:1").is_err());
    }

    #[test]
    fn validation() {
        for n in 4..=12 {
            let h = hole_inequality(&W::hole((0..n).collect())).unwrap();
            assert!(validate_inequality(&Graph::cycle(n), &h).unwrap());
        }
        let mut h5 = hole_inequality(&W::hole((0..5).collect())).unwrap();
        h5.rhs -= 1;
        assert!(!validate_inequality(&Graph::cycle(5), &h5).unwrap());
        assert!(validate_inequality(&Graph::complete(3), &LinearInequality::bound(1)).unwrap());
    }

    #[test]
    fn hub_lift_into_hole() {
        for len in 4..=10 {
            let mut edges: Vec<_> = (1..=len).map(|i| (0, i)).collect();
            edges.extend((0..len).map(|i| (1 + i, 1 + (i + 1) % len)));
            let g = Graph::from_edges(len + 1, &edges).unwrap();
            let h = hole_inequality(&W::hole((1..=len).collect())).unwrap();
            assert_eq!(lift_coefficient(&g, &h, 0).unwrap(), h.rhs - 2);
        }
    }

    #[test]
    fn path_lift_gives_fan() {
        for p in 4..=9 {
            let mut edges: Vec<_> = (1..=p).map(|i| (0, i)).collect();
            edges.extend((1..p).map(|i| (i, i + 1)));
            let g = Graph::from_edges(p + 1, &edges).unwrap();
            let f = W::fan(0, (1..=p).collect());
            let lifted = sequential_lift(&g, &path_inequality(&f).unwrap(), &[0]).unwrap();
            assert!(lifted.same_terms(&fan_inequality(&f).unwrap()), "p={p}");
        }
    }
}
