//! Maximum independent union of cliques: structures, valid inequalities,
//! branch-and-cut and polytope certification.

pub mod bnc;
pub mod cuts;
pub mod error;
pub mod gen;
pub mod graph;
pub mod harness;
pub mod inequality;
pub mod lp;
pub mod oracle;
pub mod polytope;
pub mod structure;

pub use bnc::{solve_max_iuc, SolveConfig, SolveResult, SolveStatus};
pub use cuts::{generate_root_cuts, CutConfig, CutFlags, CutPool};
pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, OpenTriangle, Vertex, VertexSet};
pub use inequality::{Family, LinearInequality};
pub use lp::{LpProblem, LpSolution, LpStatus, Simplex};
pub use oracle::{iuc_number, max_iuc_oracle, OracleResult};
pub use structure::{SearchCaps, StructureKind, StructureWitness};
