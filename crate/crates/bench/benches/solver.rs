use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use iuc_bench::{composite_small, er60, er_oracle_sized};
use iuc_core::cuts::{generate_root_cuts, CutConfig};
use iuc_core::lp::{build_base_relaxation, solve_lp};
use iuc_core::structure::enumerate_4holes;
use iuc_core::{iuc_number, solve_max_iuc, CutFlags, SolveConfig};

fn lp(c: &mut Criterion) {
    let g = er60(0);
    let p = build_base_relaxation(&g);
    c.bench_function("base_lp_er60", |b| b.iter(|| solve_lp(black_box(&p))));
}

fn structures(c: &mut Criterion) {
    let g = er60(1);
    c.bench_function("four_holes_er60", |b| {
        b.iter(|| enumerate_4holes(black_box(&g)))
    });
    let cfg = CutConfig {
        flags: CutFlags::ALL,
        ..CutConfig::default()
    };
    c.bench_function("root_cuts_er60", |b| {
        b.iter(|| generate_root_cuts(black_box(&g), &cfg))
    });
}

fn oracle(c: &mut Criterion) {
    let g = er_oracle_sized(3);
    c.bench_function("oracle_er22", |b| {
        b.iter(|| iuc_number(black_box(&g)).unwrap())
    });
}

fn solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    let g = composite_small(0);
    for (label, flags) in [("base", CutFlags::NONE), ("all", CutFlags::ALL)] {
        let cfg = SolveConfig::with_flags(flags);
        group.bench_function(format!("composite_{label}"), |b| {
            b.iter_batched(
                || g.clone(),
                |g| solve_max_iuc(&g, &cfg),
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

criterion_group!(benches, lp, structures, oracle, solve);
criterion_main!(benches);
