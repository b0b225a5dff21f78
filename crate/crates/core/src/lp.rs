//! Bounded-variable dual simplex on a condensed tableau.
//!
//! The solver is generic over [`Scalar`] so the same code runs in `f64` and
//! in exact rationals. Each row `a·x ≤ b` gets a slack in `[0, b - min a·x]`,
//! the upper end implied by the structural box. With every variable boxed, a
//! nonbasic variable can always sit at the bound its reduced cost prefers, so
//! any basis is dual feasible and the dual simplex re-optimizes directly after
//! new rows or bound changes.
//!
//! The leaving row is the most infeasible one; Bland's rule takes over after
//! a long run of degenerate pivots.

use std::fmt::{self, Debug, Write as _};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::inequality::{hole_inequality, ot_inequality, LinearInequality};
use crate::structure::enumerate_4holes;

/// Number type of the simplex.
pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Zero for exact arithmetic.
    fn tol() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(r: &Ratio<i64>) -> Self;
    fn to_f64(&self) -> f64;
    fn abs_val(&self) -> Self;

    /// `row[j] -= f · prow[j]` for `j` in `nz`.
    fn sub_scaled(row: &mut [Self], f: &Self, prow: &[Self], nz: &[usize]) {
        for &j in nz {
            row[j] = row[j].clone() - f.clone() * prow[j].clone();
        }
    }
}

impl Scalar for f64 {
    fn tol() -> f64 {
        1e-9
    }
    fn from_i64(v: i64) -> f64 {
        v as f64
    }
    fn from_ratio(r: &Ratio<i64>) -> f64 {
        *r.numer() as f64 / *r.denom() as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs_val(&self) -> f64 {
        self.abs()
    }
    // dense so it vectorizes; the pivot column is overwritten by the caller
    fn sub_scaled(row: &mut [f64], f: &f64, prow: &[f64], _nz: &[usize]) {
        for (a, b) in row.iter_mut().zip(prow) {
            *a -= f * b;
        }
    }
}

impl Scalar for BigRational {
    fn tol() -> BigRational {
        BigRational::zero()
    }
    fn from_i64(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(r: &Ratio<i64>) -> BigRational {
        BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn abs_val(&self) -> BigRational {
        self.abs()
    }
}

/// `Σ coeffs · x ≤ rhs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row<T> {
    pub coeffs: Vec<(usize, T)>,
    pub rhs: T,
}

impl<T: Scalar> Row<T> {
    pub fn from_inequality(ineq: &LinearInequality) -> Row<T> {
        Row {
            coeffs: ineq
                .coeffs
                .iter()
                .map(|(&v, &c)| (v, T::from_i64(c)))
                .collect(),
            rhs: T::from_i64(ineq.rhs),
        }
    }

    pub fn activity(&self, x: &[T]) -> T {
        self.coeffs
            .iter()
            .fold(T::zero(), |acc, (j, a)| acc + a.clone() * x[*j].clone())
    }
}

/// Maximize `objective · x` subject to `rows` and `lower ≤ x ≤ upper`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpProblem<T> {
    pub lower: Vec<T>,
    pub upper: Vec<T>,
    pub rows: Vec<Row<T>>,
    pub objective: Vec<T>,
}

impl<T: Scalar> LpProblem<T> {
    /// `n` variables in `[0, 1]`, objective all ones, no rows.
    pub fn unit_box(n: usize) -> Self {
        LpProblem {
            lower: vec![T::zero(); n],
            upper: vec![T::one(); n],
            rows: Vec::new(),
            objective: vec![T::one(); n],
        }
    }

    pub fn variable_count(&self) -> usize {
        self.objective.len()
    }

    pub fn push_inequality(&mut self, ineq: &LinearInequality) {
        self.rows.push(Row::from_inequality(ineq));
    }

    /// Fixed-order text dump for regression fixtures.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let n = self.variable_count();
        let _ = writeln!(s, "vars {n} rows {}", self.rows.len());
        let obj: Vec<String> = (0..n).map(|j| format!("{:?}", self.objective[j])).collect();
        let _ = writeln!(s, "max {}", obj.join(" "));
        for j in 0..n {
            let _ = writeln!(s, "bound {j} {:?} {:?}", self.lower[j], self.upper[j]);
        }
        for (i, r) in self.rows.iter().enumerate() {
            let terms: Vec<String> = r.coeffs.iter().map(|(j, a)| format!("{j}:{a:?}")).collect();
            let _ = writeln!(s, "row {i} {} <= {:?}", terms.join(","), r.rhs);
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    IterationLimit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    pub objective: T,
    pub values: Vec<T>,
    /// Indices into the problem's rows that hold with equality at `values`.
    pub tight_rows: Vec<usize>,
}

impl<T: Scalar> LpSolution<T> {
    pub fn objective_f64(&self) -> f64 {
        self.objective.to_f64()
    }

    pub fn values_f64(&self) -> Vec<f64> {
        self.values.iter().map(Scalar::to_f64).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pos {
    Basic(usize),
    Nonbasic(usize),
}

/// Default pivot budget per call to [`Simplex::solve`].
pub const DEFAULT_PIVOT_LIMIT: usize = 200_000;

/// Simplex state that can be modified and re-solved.
///
/// Variables are the structurals followed by one slack per row. Row `i` of
/// the tableau reads `x_{basis[i]} + Σ_k tab[i][k] · x_{nonbasic[k]} = const`,
/// so the tableau is rows × structurals whatever the number of rows.
#[derive(Clone)]
pub struct Simplex<T: Scalar> {
    n: usize,
    rows: Vec<Row<T>>,
    tags: Vec<usize>,
    /// Widest structural bounds seen; slack upper bounds are implied from them.
    box_lo: Vec<T>,
    box_up: Vec<T>,
    lo: Vec<T>,
    up: Vec<T>,
    x: Vec<T>,
    cost: Vec<T>,
    basis: Vec<usize>,
    nonbasic: Vec<usize>,
    pos: Vec<Pos>,
    tab: Vec<Vec<T>>,
    d: Vec<T>,
    pub pivot_limit: usize,
    pivots: usize,
}

impl<T: Scalar> fmt::Debug for Simplex<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Simplex")
            .field("vars", &self.n)
            .field("rows", &self.tab.len())
            .finish()
    }
}

impl<T: Scalar> Simplex<T> {
    /// Maximizes `objective · x` over `lower ≤ x ≤ upper`; rows are added
    /// with [`Simplex::add_row`].
    pub fn new(lower: Vec<T>, upper: Vec<T>, objective: Vec<T>) -> Self {
        let n = objective.len();
        assert_eq!(lower.len(), n);
        assert_eq!(upper.len(), n);
        let mut s = Simplex {
            n,
            rows: Vec::new(),
            tags: Vec::new(),
            box_lo: lower.clone(),
            box_up: upper.clone(),
            x: lower.clone(),
            lo: lower,
            up: upper,
            d: objective.clone(),
            cost: objective,
            basis: Vec::new(),
            nonbasic: (0..n).collect(),
            pos: (0..n).map(Pos::Nonbasic).collect(),
            tab: Vec::new(),
            pivot_limit: DEFAULT_PIVOT_LIMIT,
            pivots: 0,
        };
        for k in 0..n {
            s.place(k);
        }
        s
    }

    pub fn from_problem(p: &LpProblem<T>) -> Self {
        let mut s = Simplex::new(p.lower.clone(), p.upper.clone(), p.objective.clone());
        for r in &p.rows {
            s.add_row(r);
        }
        s
    }

    pub fn row_count(&self) -> usize {
        self.tab.len()
    }

    pub fn pivot_count(&self) -> usize {
        self.pivots
    }

    pub fn values(&self) -> Vec<T> {
        self.x[..self.n].to_vec()
    }

    pub fn objective_value(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, j| {
            acc + self.cost[j].clone() * self.x[j].clone()
        })
    }

    /// Moves the nonbasic variable of column `k` to the bound its reduced
    /// cost prefers.
    fn place(&mut self, k: usize) {
        let v = self.nonbasic[k];
        let tol = T::tol();
        let target = if self.d[k] > tol {
            self.up[v].clone()
        } else if self.d[k] < -tol.clone() {
            self.lo[v].clone()
        } else if self.x[v] == self.up[v] {
            self.up[v].clone()
        } else {
            self.lo[v].clone()
        };
        self.shift(k, target);
    }

    fn shift(&mut self, k: usize, target: T) {
        let v = self.nonbasic[k];
        let delta = target.clone() - self.x[v].clone();
        if !delta.is_zero() {
            for (i, row) in self.tab.iter().enumerate() {
                let a = &row[k];
                if !a.is_zero() {
                    let b = self.basis[i];
                    self.x[b] = self.x[b].clone() - a.clone() * delta.clone();
                }
            }
        }
        self.x[v] = target;
    }

    fn slack_upper(&self, r: &Row<T>) -> T {
        let min_activity = r.coeffs.iter().fold(T::zero(), |acc, (j, a)| {
            let lo = a.clone() * self.box_lo[*j].clone();
            let up = a.clone() * self.box_up[*j].clone();
            acc + if lo < up { lo } else { up }
        });
        let u = r.rhs.clone() - min_activity;
        if u < T::zero() {
            T::zero()
        } else {
            u
        }
    }

    /// Appends a row whose slack enters the basis; the next solve restores
    /// feasibility.
    pub fn add_row(&mut self, r: &Row<T>) {
        self.add_tagged_row(r, usize::MAX);
    }

    /// [`Simplex::add_row`] with a caller id reported by [`Simplex::drop_loose_rows`].
    pub fn add_tagged_row(&mut self, r: &Row<T>, tag: usize) {
        let s = self.x.len();
        let up = self.slack_upper(r);
        let mut row = vec![T::zero(); self.n];
        let mut value = r.rhs.clone();
        for (j, a) in &r.coeffs {
            value = value - a.clone() * self.x[*j].clone();
            match self.pos[*j] {
                Pos::Nonbasic(k) => row[k] = row[k].clone() + a.clone(),
                Pos::Basic(i) => {
                    for (k, t) in self.tab[i].iter().enumerate() {
                        if !t.is_zero() {
                            row[k] = row[k].clone() - a.clone() * t.clone();
                        }
                    }
                }
            }
        }
        self.lo.push(T::zero());
        self.up.push(up);
        self.x.push(value);
        self.pos.push(Pos::Basic(self.tab.len()));
        self.basis.push(s);
        self.tab.push(row);
        self.rows.push(r.clone());
        self.tags.push(tag);
    }

    /// Removes rows whose slack is basic and exceeds `min_slack`; the basis
    /// of the remaining rows is unchanged. Returns the removed tags.
    pub fn drop_loose_rows(&mut self, min_slack: &T) -> Vec<usize> {
        let n = self.n;
        let m = self.rows.len();
        let drop: Vec<bool> = (0..m)
            .map(|i| matches!(self.pos[n + i], Pos::Basic(_)) && self.x[n + i] > *min_slack)
            .collect();
        if !drop.contains(&true) {
            return Vec::new();
        }
        let mut map: Vec<usize> = (0..n).collect();
        map.resize(n + m, usize::MAX);
        let mut next = n;
        let mut removed = Vec::new();
        for i in 0..m {
            if drop[i] {
                removed.push(self.tags[i]);
            } else {
                map[n + i] = next;
                next += 1;
            }
        }
        let keep_var: Vec<bool> = (0..n + m).map(|v| map[v] != usize::MAX).collect();
        fn retain_by<X>(v: &mut Vec<X>, keep: &[bool]) {
            let mut it = keep.iter();
            v.retain(|_| *it.next().expect("aligned"));
        }
        retain_by(&mut self.lo, &keep_var);
        retain_by(&mut self.up, &keep_var);
        retain_by(&mut self.x, &keep_var);
        let keep_row: Vec<bool> = drop.iter().map(|d| !d).collect();
        retain_by(&mut self.rows, &keep_row);
        retain_by(&mut self.tags, &keep_row);
        let keep_tab: Vec<bool> = self.basis.iter().map(|&b| keep_var[b]).collect();
        retain_by(&mut self.tab, &keep_tab);
        retain_by(&mut self.basis, &keep_tab);
        for b in &mut self.basis {
            *b = map[*b];
        }
        for v in &mut self.nonbasic {
            *v = map[*v];
        }
        self.pos = vec![Pos::Nonbasic(0); next];
        for (r, &b) in self.basis.iter().enumerate() {
            self.pos[b] = Pos::Basic(r);
        }
        for (k, &v) in self.nonbasic.iter().enumerate() {
            self.pos[v] = Pos::Nonbasic(k);
        }
        removed
    }

    /// Changes the bounds of structural variable `j`.
    pub fn set_bounds(&mut self, j: usize, lo: T, up: T) {
        assert!(j < self.n);
        let mut widened = false;
        if lo < self.box_lo[j] {
            self.box_lo[j] = lo.clone();
            widened = true;
        }
        if up > self.box_up[j] {
            self.box_up[j] = up.clone();
            widened = true;
        }
        self.lo[j] = lo;
        self.up[j] = up;
        if let Pos::Nonbasic(k) = self.pos[j] {
            self.place(k);
        }
        if widened {
            for i in 0..self.rows.len() {
                let u = self.slack_upper(&self.rows[i]);
                let s = self.n + i;
                self.up[s] = u;
                if let Pos::Nonbasic(k) = self.pos[s] {
                    self.place(k);
                }
            }
        }
    }

    pub fn bounds(&self, j: usize) -> (T, T) {
        (self.lo[j].clone(), self.up[j].clone())
    }

    /// Flips nonbasic variables whose reduced cost has the wrong sign for
    /// the bound they sit at.
    fn restore_dual_feasibility(&mut self) {
        for k in 0..self.n {
            self.place(k);
        }
    }

    /// Leaving row and the bound its variable moves to.
    fn choose_leaving(&self, bland: bool) -> Option<(usize, T)> {
        let tol = T::tol();
        let mut best: Option<(usize, T, T)> = None;
        for (i, &b) in self.basis.iter().enumerate() {
            let (gap, target) = if self.x[b] < self.lo[b].clone() - tol.clone() {
                (self.lo[b].clone() - self.x[b].clone(), self.lo[b].clone())
            } else if self.x[b] > self.up[b].clone() + tol.clone() {
                (self.x[b].clone() - self.up[b].clone(), self.up[b].clone())
            } else {
                continue;
            };
            let better = match &best {
                None => true,
                Some((bi, bg, _)) => {
                    if bland {
                        b < self.basis[*bi]
                    } else {
                        gap > *bg
                    }
                }
            };
            if better {
                best = Some((i, gap, target));
            }
        }
        best.map(|(i, _, t)| (i, t))
    }

    /// Entering column for leaving row `r`, keeping every reduced cost on
    /// the correct side.
    fn choose_entering(&self, r: usize, increase: bool, bland: bool) -> Option<usize> {
        let piv_tol = if T::tol().is_zero() {
            T::zero()
        } else {
            T::tol()
        };
        let tol = T::tol();
        let mut best: Option<(usize, T, T)> = None;
        for k in 0..self.n {
            let v = self.nonbasic[k];
            if self.lo[v] == self.up[v] {
                continue;
            }
            let a = &self.tab[r][k];
            if a.abs_val() <= piv_tol {
                continue;
            }
            // moving x_v away from its bound changes x_B by -a per unit
            let at_lower = self.x[v] == self.lo[v];
            let toward = if at_lower { -a.clone() } else { a.clone() };
            if (toward > T::zero()) != increase {
                continue;
            }
            let ratio = self.d[k].abs_val() / a.abs_val();
            let better = match &best {
                None => true,
                Some((bk, br, ba)) => {
                    if ratio.clone() < br.clone() - tol.clone() {
                        true
                    } else if ratio.clone() > br.clone() + tol.clone() {
                        false
                    } else if bland {
                        v < self.nonbasic[*bk]
                    } else {
                        a.abs_val() > *ba
                    }
                }
            };
            if better {
                best = Some((k, ratio, a.abs_val()));
            }
        }
        best.map(|(k, _, _)| k)
    }

    fn pivot(&mut self, r: usize, k: usize) {
        let p = self.tab[r][k].clone();
        let inv = T::one() / p;
        let mut prow = std::mem::take(&mut self.tab[r]);
        for (j, t) in prow.iter_mut().enumerate() {
            if j == k {
                *t = inv.clone();
            } else if !t.is_zero() {
                *t = t.clone() * inv.clone();
            }
        }
        let nz: Vec<usize> = (0..self.n)
            .filter(|&j| j != k && !prow[j].is_zero())
            .collect();
        for (i, row) in self.tab.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[k].clone();
            if f.is_zero() {
                continue;
            }
            T::sub_scaled(row, &f, &prow, &nz);
            row[k] = -(f * inv.clone());
        }
        let f = self.d[k].clone();
        if !f.is_zero() {
            T::sub_scaled(&mut self.d, &f, &prow, &nz);
            self.d[k] = -(f * inv);
        }
        self.tab[r] = prow;
        let leaving = self.basis[r];
        let entering = self.nonbasic[k];
        self.basis[r] = entering;
        self.nonbasic[k] = leaving;
        self.pos[entering] = Pos::Basic(r);
        self.pos[leaving] = Pos::Nonbasic(k);
    }

    /// Re-optimizes after any modification by the dual simplex method. Every
    /// variable is bounded, so a dual feasible start always exists.
    pub fn solve(&mut self) -> LpStatus {
        self.pivots = 0;
        self.restore_dual_feasibility();
        let stall_limit = 5 * (self.tab.len() + self.n) + 50;
        let mut stall = 0usize;
        let tol = T::tol();
        loop {
            let bland = stall > stall_limit;
            let Some((r, target)) = self.choose_leaving(bland) else {
                return LpStatus::Optimal;
            };
            if self.pivots >= self.pivot_limit {
                return LpStatus::IterationLimit;
            }
            let b = self.basis[r];
            let increase = target > self.x[b];
            let Some(k) = self.choose_entering(r, increase, bland) else {
                return LpStatus::Infeasible;
            };
            let a = self.tab[r][k].clone();
            let step = (self.x[b].clone() - target.clone()) / a;
            let v = self.nonbasic[k];
            let progress = (self.d[k].clone() * step.clone()).abs_val();
            let to = self.x[v].clone() + step;
            self.shift(k, to);
            self.x[b] = target;
            self.pivot(r, k);
            self.pivots += 1;
            if progress > tol {
                stall = 0;
            } else {
                stall += 1;
            }
        }
    }
}

/// Solves `p` directly when it is small; otherwise activates rows lazily,
/// adding the most violated inactive rows until none is violated. Both paths
/// return an optimum of the full problem.
pub fn solve_lp<T: Scalar>(p: &LpProblem<T>) -> LpSolution<T> {
    let n = p.variable_count();
    let lazy_threshold = 2 * n + 16;
    let (mut s, status) = if p.rows.len() <= lazy_threshold {
        let mut s = Simplex::from_problem(p);
        let st = s.solve();
        (s, st)
    } else {
        let mut s = Simplex::new(p.lower.clone(), p.upper.clone(), p.objective.clone());
        let mut active = vec![false; p.rows.len()];
        let st = solve_lazy(&mut s, &p.rows, &mut active, n.max(8));
        (s, st)
    };
    finish(&mut s, p, status)
}

/// Row generation over a fixed row list: repeatedly solves, then activates up
/// to `batch` of the most violated inactive rows.
pub fn solve_lazy<T: Scalar>(
    s: &mut Simplex<T>,
    rows: &[Row<T>],
    active: &mut [bool],
    batch: usize,
) -> LpStatus {
    loop {
        let st = s.solve();
        if st != LpStatus::Optimal {
            return st;
        }
        let x = s.values();
        let tol = T::tol();
        let mut viol: Vec<(T, usize)> = rows
            .iter()
            .enumerate()
            .filter(|(i, _)| !active[*i])
            .filter_map(|(i, r)| {
                let v = r.activity(&x) - r.rhs.clone();
                (v > tol).then_some((v, i))
            })
            .collect();
        if viol.is_empty() {
            return LpStatus::Optimal;
        }
        viol.sort_by(|a, b| {
            b.0.partial_cmp(&a.0)
                .expect("comparable")
                .then(a.1.cmp(&b.1))
        });
        for (_, i) in viol.into_iter().take(batch) {
            active[i] = true;
            s.add_tagged_row(&rows[i], i);
        }
    }
}

fn finish<T: Scalar>(s: &mut Simplex<T>, p: &LpProblem<T>, status: LpStatus) -> LpSolution<T> {
    let values = s.values();
    let tight = tight_rows(&p.rows, &values);
    LpSolution {
        status,
        objective: s.objective_value(),
        values,
        tight_rows: tight,
    }
}

/// Rows satisfied with equality (within 1e-7 for floating point).
pub fn tight_rows<T: Scalar>(rows: &[Row<T>], x: &[T]) -> Vec<usize> {
    let tol = if T::tol().is_zero() {
        T::zero()
    } else {
        T::tol() * T::from_i64(100)
    };
    rows.iter()
        .enumerate()
        .filter(|(_, r)| (r.activity(x) - r.rhs.clone()).abs_val() <= tol)
        .map(|(i, _)| i)
        .collect()
}

/// Unit box plus one open-triangle row per member of Λ(G).
pub fn build_base_relaxation(g: &Graph) -> LpProblem<f64> {
    let mut p = LpProblem::unit_box(g.vertex_count());
    for t in g.open_triangles() {
        p.push_inequality(&ot_inequality(&t));
    }
    p
}

/// LP value of max Σx over open-triangle and 4-hole rows with unit bounds.
pub fn fractional_iuc_number(g: &Graph) -> f64 {
    let mut p = build_base_relaxation(g);
    for h in enumerate_4holes(g) {
        p.push_inequality(&hole_inequality(&h).expect("4-hole"));
    }
    solve_lp(&p).objective
}

/// Largest problem accepted by [`solve_exact`].
pub const EXACT_LIMIT: usize = 40;

/// Solves a problem with dyadic data in exact rational arithmetic.
pub fn solve_exact(p: &LpProblem<f64>) -> Result<LpSolution<BigRational>> {
    if p.variable_count() > EXACT_LIMIT {
        return Err(Error::SizeGuard {
            what: "exact LP",
            got: p.variable_count(),
            limit: EXACT_LIMIT,
        });
    }
    Ok(solve_lp(&to_rational(p)))
}

/// Exact copy of an integer-data problem.
pub fn to_rational(p: &LpProblem<f64>) -> LpProblem<BigRational> {
    let conv = |v: &f64| BigRational::from_float(*v).expect("finite problem data");
    LpProblem {
        lower: p.lower.iter().map(conv).collect(),
        upper: p.upper.iter().map(conv).collect(),
        rows: p
            .rows
            .iter()
            .map(|r| Row {
                coeffs: r.coeffs.iter().map(|(j, a)| (*j, conv(a))).collect(),
                rhs: conv(&r.rhs),
            })
            .collect(),
        objective: p.objective.iter().map(conv).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(c: &[(usize, f64)], rhs: f64) -> Row<f64> {
        Row {
            coeffs: c.to_vec(),
            rhs,
        }
    }

    #[test]
    fn trivial_problems() {
        let p: LpProblem<f64> = LpProblem::unit_box(5);
        let s = solve_lp(&p);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective - 5.0).abs() < 1e-9);

        let mut p: LpProblem<f64> = LpProblem::unit_box(3);
        p.rows.push(row(&[(0, 1.0), (1, 1.0), (2, 1.0)], 2.0));
        let s = solve_lp(&p);
        assert!((s.objective - 2.0).abs() < 1e-9);
        assert_eq!(s.tight_rows, vec![0]);
    }

    #[test]
    fn base_relaxations() {
        assert_eq!(build_base_relaxation(&Graph::path(3)).rows.len(), 1);
        let k3 = build_base_relaxation(&Graph::complete(3));
        assert!(k3.rows.is_empty());
        assert!((solve_lp(&k3).objective - 3.0).abs() < 1e-9);
        let c4 = build_base_relaxation(&Graph::cycle(4));
        assert_eq!(c4.rows.len(), 4);
        assert!((solve_lp(&c4).objective - 8.0 / 3.0).abs() < 1e-9);
        let exact = solve_lp(&to_rational(&c4));
        assert_eq!(exact.objective, BigRational::new(8.into(), 3.into()));
    }

    #[test]
    fn fractional_number() {
        assert!((fractional_iuc_number(&Graph::complete(3)) - 3.0).abs() < 1e-9);
        assert!((fractional_iuc_number(&Graph::path(3)) - 2.0).abs() < 1e-9);
        assert!((fractional_iuc_number(&Graph::cycle(4)) - 2.0).abs() < 1e-9);
    }

    #[test]
    fn infeasible_after_fixing() {
        let mut s = Simplex::new(vec![0.0; 3], vec![1.0; 3], vec![1.0; 3]);
        s.add_row(&row(&[(0, 1.0), (1, 1.0), (2, 1.0)], 2.0));
        assert_eq!(s.solve(), LpStatus::Optimal);
        for j in 0..3 {
            s.set_bounds(j, 1.0, 1.0);
        }
        assert_eq!(s.solve(), LpStatus::Infeasible);
        s.set_bounds(2, 0.0, 0.0);
        assert_eq!(s.solve(), LpStatus::Optimal);
        assert!((s.objective_value() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn warm_row_addition_matches_cold() {
        let g = Graph::cycle(9);
        let p = build_base_relaxation(&g);
        let cold = Simplex::from_problem(&p).clone().solve();
        assert_eq!(cold, LpStatus::Optimal);
        let mut warm = Simplex::new(p.lower.clone(), p.upper.clone(), p.objective.clone());
        for r in &p.rows {
            warm.add_row(r);
            assert_eq!(warm.solve(), LpStatus::Optimal);
        }
        assert!((warm.objective_value() - 6.0).abs() < 1e-9);
    }

    #[test]
    fn negative_rhs_needs_phase_one() {
        // x0 + x1 <= 1.5, -x0 <= -0.75 (x0 >= 0.75); max x1
        let mut p: LpProblem<f64> = LpProblem::unit_box(2);
        p.objective = vec![0.0, 1.0];
        p.rows.push(row(&[(0, 1.0), (1, 1.0)], 1.5));
        p.rows.push(row(&[(0, -1.0)], -0.75));
        let s = solve_lp(&p);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective - 0.75).abs() < 1e-9);
        p.rows.push(row(&[(0, 1.0)], 0.5));
        assert_eq!(solve_lp(&p).status, LpStatus::Infeasible);
    }

    #[test]
    fn text_dump_is_stable() {
        let p = build_base_relaxation(&Graph::path(3));
        let t = p.to_text();
        assert!(t.starts_with("vars 3 rows 1\n"));
        assert!(t.contains("row 0 0:1.0,1:1.0,2:1.0 <= 2.0"));
        assert_eq!(t, p.to_text());
    }

    #[test]
    fn float_exact_and_warm_cold_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.random_range(4..12);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random_bool(0.4) {
                        edges.push((i, j));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let mut p = build_base_relaxation(&g);
            p.objective = (0..n).map(|_| rng.random_range(1..6) as f64).collect();
            let f = solve_lp(&p);
            let e = solve_lp(&to_rational(&p));
            assert!((f.objective - e.objective_f64()).abs() < 1e-7);

            let mut warm = Simplex::from_problem(&p);
            warm.solve();
            let mut cold_p = p.clone();
            for _ in 0..3 {
                let j = rng.random_range(0..n);
                let v = if rng.random_bool(0.5) { 1.0 } else { 0.0 };
                warm.set_bounds(j, v, v);
                cold_p.lower[j] = v;
                cold_p.upper[j] = v;
                let ws = warm.solve();
                let cold = solve_lp(&cold_p);
                assert_eq!(ws, cold.status);
                if ws == LpStatus::Optimal {
                    assert!((warm.objective_value() - cold.objective).abs() < 1e-7);
                    let x = warm.values();
                    for r in &p.rows {
                        assert!(r.activity(&x) <= r.rhs + 1e-7);
                    }
                }
            }
        }
    }
}
