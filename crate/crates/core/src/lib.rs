//! Exact solvers for Triangle Deletion, Feedback Arc Set in Tournaments and
//! Cluster Editing, parameterized by the number of modifications `ℓ = k − h`
//! that exceed the lower bound `h` of a vertex-disjoint packing of
//! bounded-cost induced subgraphs.
//!
//! The crate is organised by problem:
//!
//! * [`graph`], [`tournament`], [`edits`] and [`forbidden`] hold the shared
//!   representations and the enumeration of forbidden substructures.
//! * [`packing`] builds, validates and cost-annotates packings.
//! * [`triangle`], [`fast`] and [`cluster`] contain the reduction rules,
//!   branching algorithms and plain exact engines for each problem.
//! * [`oracle`] holds brute-force ground truth used for cross-checks.
//! * [`generators`] builds the SAT-based hardness instances and random inputs.
//! * [`io`] reads and writes the plain-text file formats.

pub mod cluster;
pub mod edits;
pub mod error;
pub mod fast;
pub mod forbidden;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod packing;
pub mod stats;
pub mod tournament;
pub mod triangle;

pub use edits::{EditOp, EditSet};
pub use error::{Error, Result};
pub use forbidden::Family;
pub use graph::{Graph, VertexPair};
pub use packing::{Instance, Packing, PackingMode, Part, Problem};
pub use stats::SolveStats;
pub use tournament::Tournament;
