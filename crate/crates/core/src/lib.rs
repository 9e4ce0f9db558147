//! Spanning trees with at most four leaves in connected `K_{1,5}`-free
//! graphs with `σ₅(G) ≥ n − 1`.
//!
//! [`solve`] either returns such a tree or a verifiable [`Certificate`]
//! that a hypothesis fails. The [`oracle`] module cross-checks the solver
//! by exact enumeration on small graphs.

pub mod certificate;
pub mod decompose;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod hypothesis;
pub mod leafmin;
pub mod oracle;
pub mod tree;

pub use certificate::{Certificate, InducedStar};
pub use decompose::{decompose, CaseDecomposition, CaseId, Skeleton};
pub use error::{FormatError, GenerationError, OracleError, SolveError, TreeError};
pub use graph::{Graph, Vertex, VertexSet};
pub use graph6::{encode_graph6, parse_graph6};
pub use hypothesis::{
    find_induced_star, hypotheses_hold, sigma_k, DegreeSum, HypothesisReport, Verdict,
};
pub use leafmin::{
    solve, solve_with, ClaimTag, Outcome, Potential, Solution, SolveOptions, SolveReport,
};
pub use tree::{Edge, Exchange, SpanningTree};
