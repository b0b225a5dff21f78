//! Experiment runner: ablation arms over instance sets, CSV rows.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bnc::{solve_max_iuc, SolveConfig, SolveResult, SolveStatus};
use crate::cuts::CutFlags;
use crate::error::Result;
use crate::graph::Graph;

/// Column names of the bench CSV, in order. Frozen.
pub const BENCH_COLUMNS: [&str; 23] = [
    "instance",
    "arm",
    "n",
    "m",
    "open_triangles",
    "ot_residual",
    "hole_cuts",
    "antihole_cuts",
    "star_cuts",
    "double_star_cuts",
    "fan_cuts",
    "wheel_cuts",
    "root_lp_base",
    "root_lp_with_cuts",
    "best_value",
    "best_bound",
    "node_count",
    "status",
    "time_truncated",
    "time_cut_generation",
    "time_root_lp",
    "time_tree",
    "time_total",
];

/// One instance solved under one arm.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: String,
    pub arm: String,
    pub n: usize,
    pub m: usize,
    pub open_triangles: usize,
    pub ot_residual: usize,
    pub hole_cuts: usize,
    pub antihole_cuts: usize,
    pub star_cuts: usize,
    pub double_star_cuts: usize,
    pub fan_cuts: usize,
    pub wheel_cuts: usize,
    pub root_lp_base: f64,
    pub root_lp_with_cuts: f64,
    pub best_value: i64,
    pub best_bound: f64,
    pub node_count: u64,
    pub status: SolveStatus,
    pub time_truncated: bool,
    pub time_cut_generation: f64,
    pub time_root_lp: f64,
    pub time_tree: f64,
    pub time_total: f64,
}

impl BenchRow {
    pub fn from_result(instance: &str, arm: &str, g: &Graph, r: &SolveResult) -> BenchRow {
        let c = |k: &str| r.cut_counts.get(k).copied().unwrap_or(0);
        BenchRow {
            instance: instance.to_string(),
            arm: arm.to_string(),
            n: g.vertex_count(),
            m: g.edge_count(),
            open_triangles: g.open_triangle_count(),
            ot_residual: r.residual_ot,
            hole_cuts: c("Hole"),
            antihole_cuts: c("AntiHole"),
            star_cuts: c("Star"),
            double_star_cuts: c("DoubleStar"),
            fan_cuts: c("Fan"),
            wheel_cuts: c("Wheel"),
            root_lp_base: r.root_lp_base,
            root_lp_with_cuts: r.root_lp_with_cuts,
            best_value: r.best_value,
            best_bound: r.best_bound,
            node_count: r.node_count,
            status: r.status,
            time_truncated: r.time_truncated,
            time_cut_generation: r.timings.cut_generation,
            time_root_lp: r.timings.root_lp,
            time_tree: r.timings.tree,
            time_total: r.timings.total,
        }
    }
}

/// Named instance for a bench run.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub graph: Graph,
}

/// Solves every instance under every arm, fanning out over the rayon pool.
/// Rows come back instance-major in arm order regardless of scheduling.
pub fn run_bench(
    instances: &[Instance],
    arms: &[(&str, CutFlags)],
    base: &SolveConfig,
) -> Vec<BenchRow> {
    let jobs: Vec<(usize, usize)> = (0..instances.len())
        .flat_map(|i| (0..arms.len()).map(move |a| (i, a)))
        .collect();
    jobs.par_iter()
        .map(|&(i, a)| {
            let inst = &instances[i];
            let (label, flags) = arms[a];
            let mut cfg = base.clone();
            cfg.cuts.flags = flags;
            let r = solve_max_iuc(&inst.graph, &cfg);
            BenchRow::from_result(&inst.name, label, &inst.graph, &r)
        })
        .collect()
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(BENCH_COLUMNS)?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Paired comparison of a cut arm against the base arm on the same instances.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct ArmComparison {
    pub instances: usize,
    /// Cut LP bound ≤ base LP bound (1e-6 slack).
    pub lp_not_worse: usize,
    /// Cut LP bound < base LP bound by more than 1e-6.
    pub lp_strictly_better: usize,
    /// Cut arm used no more nodes. A base run stopped by its node limit
    /// counts only if the cut arm finished within that many nodes.
    pub nodes_not_more: usize,
    pub values_agree: usize,
}

pub fn compare_arms(base: &[BenchRow], cut: &[BenchRow]) -> ArmComparison {
    let mut c = ArmComparison::default();
    for (b, k) in base.iter().zip(cut) {
        assert_eq!(b.instance, k.instance, "rows must be paired");
        c.instances += 1;
        if k.root_lp_with_cuts <= b.root_lp_with_cuts + 1e-6 {
            c.lp_not_worse += 1;
        }
        if k.root_lp_with_cuts < b.root_lp_with_cuts - 1e-6 {
            c.lp_strictly_better += 1;
        }
        if k.status == SolveStatus::Optimal && k.node_count <= b.node_count {
            c.nodes_not_more += 1;
        }
        let both_optimal = b.status == SolveStatus::Optimal && k.status == SolveStatus::Optimal;
        if !both_optimal || b.best_value == k.best_value {
            c.values_agree += 1;
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_header_is_frozen() {
        let g = Graph::cycle(5);
        let inst = [Instance {
            name: "c5".into(),
            graph: g,
        }];
        let rows = run_bench(&inst, &CutFlags::arms(), &SolveConfig::default());
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(|r| r.best_value == 3));
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), BENCH_COLUMNS.join(","));
        assert_eq!(text.lines().count(), 9);
        let cmp = compare_arms(&rows[..1], &rows[7..]);
        assert_eq!((cmp.lp_strictly_better, cmp.values_agree), (1, 1));
    }
}
