//! Variable inverse sum deg index `ISD_a` and related degree-based
//! topological indices, the inequalities between them, and Erdős–Rényi
//! ensemble statistics.
//!
//! - [`graph`]: immutable simple graphs and structural classification.
//! - [`indices`]: the index engine.
//! - [`bounds`]: inequality checks with equality-case detection.
//! - [`ensemble`]: `G(n, p)` sampling and ensemble averages.
//! - [`io`]: edge-list files, grids, and number formatting.

pub mod bounds;
pub mod ensemble;
pub mod graph;
pub mod indices;
pub mod io;
pub mod sum;

pub use bounds::{check_bound, verify_all, BoundReport, TheoremId};
pub use graph::{ClassTag, ExtremalClass, Graph, GraphError};
pub use indices::{IndexFamily, IndexSpec};
