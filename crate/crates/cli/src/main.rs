use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use iuc_core::bnc::{root_problems, NodeOrder};
use iuc_core::gen::{self, CompositeSpec};
use iuc_core::harness::{self, Instance};
use iuc_core::lp::{solve_exact, solve_lp};
use iuc_core::polytope::{self, DescribedFamily};
use iuc_core::{
    max_iuc_oracle, CutFlags, Error, Graph, LinearInequality, SearchCaps, SolveConfig, SolveStatus,
    StructureKind,
};
use serde_json::json;

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_LIMIT: u8 = 3;

#[derive(Parser)]
#[command(name = "iuc", version, about = "Maximum independent union of cliques")]
struct Cli {
    /// More log output on stderr (repeat for more).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance as DIMACS (plus a JSON sidecar with --out).
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Output stem; writes STEM.dimacs and STEM.json. Prints DIMACS when absent.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Solve a DIMACS graph by branch-and-cut; prints the result as JSON.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        cuts: CutArgs,
        #[arg(long)]
        node_limit: Option<u64>,
        /// Seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        depth_first: bool,
        /// Heuristic star separation at every node.
        #[arg(long)]
        node_stars: bool,
    },
    /// Exact IUC number by enumeration (at most 64 vertices).
    Oracle { file: PathBuf },
    /// Root cut pool summary and root LP values.
    Cuts {
        file: PathBuf,
        #[command(flatten)]
        cuts: CutArgs,
        /// Print every inequality.
        #[arg(long)]
        list: bool,
        /// Root LP values in exact arithmetic (at most 40 vertices).
        #[arg(long)]
        rational: bool,
    },
    /// Polytope certification.
    Certify {
        #[command(subcommand)]
        what: CertifyKind,
    },
    /// Ablation runs; writes one CSV row per instance and arm.
    Bench {
        #[command(subcommand)]
        set: BenchSet,
        #[command(flatten)]
        cuts: CutArgs,
        /// Comma separated arm labels (Base,+HA,...,+All) or "all".
        #[arg(long, default_value = "all", global = true)]
        arms: String,
        #[arg(long, global = true)]
        node_limit: Option<u64>,
        #[arg(long, global = true)]
        time_limit: Option<f64>,
        /// CSV path; stdout when absent.
        #[arg(long, global = true)]
        csv: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Erdős–Rényi G(n, p).
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Uniform random labeled tree.
    Tree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Complete bipartite K_{a,b}.
    Bipartite {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// One canonical structure.
    Structure {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        size: usize,
    },
    /// Disjoint principal structures joined by sparse random edges.
    Composite {
        #[arg(long, default_value_t = 21)]
        count: usize,
        #[arg(long, default_value_t = 10.0)]
        mean: f64,
        #[arg(long, default_value_t = 1.0)]
        sd: f64,
        #[arg(long, default_value_t = 0.01)]
        inter: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Hole,
    AntiHole,
    Star,
    DoubleStar,
    Fan,
    Wheel,
}

impl From<Kind> for StructureKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Hole => StructureKind::Hole,
            Kind::AntiHole => StructureKind::AntiHole,
            Kind::Star => StructureKind::Star,
            Kind::DoubleStar => StructureKind::DoubleStar,
            Kind::Fan => StructureKind::Fan,
            Kind::Wheel => StructureKind::Wheel,
        }
    }
}

#[derive(Subcommand)]
enum CertifyKind {
    /// Fixed matrix of structures, sizes and hosts.
    Matrix {
        #[arg(long)]
        json: bool,
    },
    /// Face dimension of one inequality, e.g. "Hole; 2; 0:1,1:1,2:1,3:1".
    Face {
        file: PathBuf,
        #[arg(long)]
        ineq: String,
    },
    /// Random objectives over a tree (stars) or K_{a,b} (double stars).
    Complete {
        file: PathBuf,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Stars,
    DoubleStars,
}

#[derive(Subcommand)]
enum BenchSet {
    /// Seeded G(n, p) instances.
    Er {
        #[arg(long, default_value_t = 10)]
        count: u64,
        #[arg(long, default_value_t = 60)]
        n: usize,
        #[arg(long, default_value_t = 0.2)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Composite instances with default structure sizes.
    Composite {
        #[arg(long, default_value_t = 5)]
        count: u64,
        #[arg(long, default_value_t = 21)]
        principal: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// DIMACS files.
    Files { files: Vec<PathBuf> },
}

#[derive(Args)]
struct CutArgs {
    /// ha, sd, fw, all or none, comma separated.
    #[arg(long, default_value = "all", value_parser = parse_flags)]
    cuts: CutFlags,
    /// Minimum ring length of fan and wheel cuts.
    #[arg(long, default_value_t = 7)]
    min_ring: usize,
    /// Structures per hub search.
    #[arg(long, default_value_t = 50)]
    hub_cap: usize,
    /// Seconds per hub search.
    #[arg(long, default_value_t = 1.0)]
    hub_time: f64,
    /// Keep every 4-hole instead of the greedy cover.
    #[arg(long)]
    all_holes: bool,
}

fn parse_flags(s: &str) -> Result<CutFlags, String> {
    CutFlags::parse(s).ok_or_else(|| format!("unknown cut family in {s:?}"))
}

impl CutArgs {
    fn config(&self) -> SolveConfig {
        let mut c = SolveConfig::with_flags(self.cuts);
        c.cuts.fan_wheel_min_ring = self.min_ring;
        c.cuts.hole_cover_greedy = !self.all_holes;
        c.set_hub_caps(SearchCaps {
            max_count: self.hub_cap,
            time_budget: Some(Duration::from_secs_f64(self.hub_time)),
        });
        c
    }
}

fn read_graph(path: &Path) -> Result<Graph, Error> {
    Graph::from_dimacs(&fs::read_to_string(path)?)
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("plain data"));
}

fn emit(
    g: &Graph,
    truth: Option<&gen::GroundTruth>,
    spec: serde_json::Value,
    out: &Option<PathBuf>,
) -> Result<u8, Error> {
    match out {
        Some(stem) => gen::write_instance(stem, g, truth, &spec)?,
        None => print!("{}", g.to_dimacs()),
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Gen { kind, out } => match kind {
            GenKind::Er { n, p, seed } => {
                let g = gen::gen_er(n, p, seed)?;
                emit(
                    &g,
                    None,
                    json!({"kind": "er", "n": n, "p": p, "seed": seed}),
                    &out,
                )
            }
            GenKind::Tree { n, seed } => {
                let g = gen::gen_tree(n, seed);
                emit(
                    &g,
                    None,
                    json!({"kind": "tree", "n": n, "seed": seed}),
                    &out,
                )
            }
            GenKind::Bipartite { a, b } => {
                let g = gen::gen_complete_bipartite(a, b);
                emit(
                    &g,
                    None,
                    json!({"kind": "complete_bipartite", "a": a, "b": b}),
                    &out,
                )
            }
            GenKind::Structure { kind, size } => {
                let (g, w) = gen::gen_structure(kind.into(), size)?;
                let truth = gen::GroundTruth {
                    structures: vec![w],
                };
                emit(
                    &g,
                    Some(&truth),
                    json!({"kind": "structure", "size": size}),
                    &out,
                )
            }
            GenKind::Composite {
                count,
                mean,
                sd,
                inter,
                seed,
            } => {
                let spec = CompositeSpec {
                    principal_count: count,
                    size_mean: mean,
                    size_sd: sd,
                    inter_edge_prob: inter,
                    seed,
                    ..CompositeSpec::default()
                };
                let (g, truth) = gen::gen_composite(&spec)?;
                emit(&g, Some(&truth), serde_json::to_value(&spec)?, &out)
            }
        },
        Command::Solve {
            file,
            cuts,
            node_limit,
            time_limit,
            seed,
            depth_first,
            node_stars,
        } => {
            let g = read_graph(&file)?;
            let mut cfg = cuts.config();
            cfg.node_limit = node_limit;
            cfg.time_limit = time_limit.map(Duration::from_secs_f64);
            cfg.seed = seed;
            cfg.node_star_separation = node_stars;
            if depth_first {
                cfg.node_order = NodeOrder::DepthFirst;
            }
            let r = iuc_core::solve_max_iuc(&g, &cfg);
            log::info!(
                "value {} bound {} after {} nodes in {:.3}s",
                r.best_value,
                r.best_bound,
                r.node_count,
                r.timings.total
            );
            println!("{}", r.to_json());
            Ok(if r.status == SolveStatus::Optimal {
                0
            } else {
                EXIT_LIMIT
            })
        }
        Command::Oracle { file } => {
            let g = read_graph(&file)?;
            let r = max_iuc_oracle(&g, None)?;
            print_json(&json!({
                "value": r.value.to_integer(),
                "witness": r.witness.to_vec(),
            }));
            Ok(0)
        }
        Command::Cuts {
            file,
            cuts,
            list,
            rational,
        } => {
            let g = read_graph(&file)?;
            let cfg = cuts.config();
            let (base, with_cuts, pool) = root_problems(&g, &cfg);
            let (lp_base, lp_cuts) = if rational {
                (
                    solve_exact(&base)?.objective.to_string(),
                    solve_exact(&with_cuts)?.objective.to_string(),
                )
            } else {
                (
                    solve_lp(&base).objective.to_string(),
                    solve_lp(&with_cuts).objective.to_string(),
                )
            };
            let mut v = json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "open_triangles": g.open_triangle_count(),
                "covered_ot": pool.covered.len(),
                "residual_ot": pool.residual_ot.len(),
                "counts": pool.counts.iter().map(|(f, c)| (f.name().to_string(), *c)).collect::<std::collections::BTreeMap<_, _>>(),
                "time_truncated": pool.time_truncated,
                "generation_seconds": pool.generation_time.as_secs_f64(),
                "root_lp_base": lp_base,
                "root_lp_with_cuts": lp_cuts,
            });
            if list {
                v["inequalities"] = pool
                    .inequalities
                    .iter()
                    .map(LinearInequality::to_line)
                    .collect();
            }
            print_json(&v);
            Ok(0)
        }
        Command::Certify { what } => match what {
            CertifyKind::Matrix { json } => {
                let rows = polytope::certify_theorem_matrix();
                if json {
                    print_json(&serde_json::to_value(&rows)?);
                } else {
                    print!("{}", polytope::render_certification(&rows));
                }
                let bad = rows.iter().filter(|r| !r.pass).count();
                log::info!("{} rows, {bad} mismatches", rows.len());
                Ok(if bad == 0 { 0 } else { EXIT_FAILURE })
            }
            CertifyKind::Face { file, ineq } => {
                let g = read_graph(&file)?;
                let ineq = LinearInequality::from_line(&ineq)?;
                let report = polytope::face_dimension(&g, &ineq)?;
                print_json(&serde_json::to_value(&report)?);
                Ok(0)
            }
            CertifyKind::Complete {
                file,
                family,
                trials,
                seed,
            } => {
                let g = read_graph(&file)?;
                let family = match family {
                    FamilyArg::Stars => DescribedFamily::TreeStars,
                    FamilyArg::DoubleStars => DescribedFamily::BipartiteDoubleStars,
                };
                let out = polytope::verify_complete_description(&g, family, trials, seed)?;
                let failures = out.iter().filter(|t| !t.integral).count();
                print_json(&json!({"trials": out, "failures": failures}));
                Ok(if failures == 0 { 0 } else { EXIT_FAILURE })
            }
        },
        Command::Bench {
            set,
            cuts,
            arms,
            node_limit,
            time_limit,
            csv,
        } => {
            let instances: Vec<Instance> = match set {
                BenchSet::Er { count, n, p, seed } => (0..count)
                    .map(|i| {
                        Ok(Instance {
                            name: format!("er_{n}_{p}_{}", seed + i),
                            graph: gen::gen_er(n, p, seed + i)?,
                        })
                    })
                    .collect::<Result<_, Error>>()?,
                BenchSet::Composite {
                    count,
                    principal,
                    seed,
                } => (0..count)
                    .map(|i| {
                        let spec = CompositeSpec {
                            principal_count: principal,
                            seed: seed + i,
                            ..CompositeSpec::default()
                        };
                        Ok(Instance {
                            name: format!("composite_{}", seed + i),
                            graph: gen::gen_composite(&spec)?.0,
                        })
                    })
                    .collect::<Result<_, Error>>()?,
                BenchSet::Files { files } => files
                    .iter()
                    .map(|f| {
                        Ok(Instance {
                            name: f.display().to_string(),
                            graph: read_graph(f)?,
                        })
                    })
                    .collect::<Result<_, Error>>()?,
            };
            let all = CutFlags::arms();
            let chosen: Vec<(&str, CutFlags)> = if arms.eq_ignore_ascii_case("all") {
                all.to_vec()
            } else {
                let mut v = Vec::new();
                for label in arms.split(',').map(str::trim) {
                    match all.iter().find(|(l, _)| l.eq_ignore_ascii_case(label)) {
                        Some(a) => v.push(*a),
                        None => {
                            return Err(Error::Parse {
                                line: 0,
                                msg: format!("unknown arm {label:?}"),
                            })
                        }
                    }
                }
                v
            };
            let mut cfg = cuts.config();
            cfg.node_limit = node_limit;
            cfg.time_limit = time_limit.map(Duration::from_secs_f64);
            let rows = harness::run_bench(&instances, &chosen, &cfg);
            match csv {
                Some(path) => harness::write_csv(&rows, fs::File::create(path)?)?,
                None => harness::write_csv(&rows, std::io::stdout().lock())?,
            }
            let limited = rows.iter().any(|r| r.status != SolveStatus::Optimal);
            Ok(if limited { EXIT_LIMIT } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        2 => log::LevelFilter::Debug,
        _ => log::LevelFilter::Trace,
    };
    env_logger::Builder::new().filter_level(level).init();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse { .. } => EXIT_PARSE,
                Error::SizeGuard { .. } => EXIT_LIMIT,
                _ => EXIT_FAILURE,
            })
        }
    }
}
