//! Integer-linear encodings of graph search spaces.
//!
//! The crate compiles declarative graph-space descriptions (connected,
//! strongly/weakly connected, acyclic, single-source/single-sink, directed
//! or undirected) into integer-linear constraint models whose variables
//! carry adjacency, reachability, and shortest-path information, then
//! enumerates every feasible solution exactly. Lexicographic
//! symmetry-breaking constraints over neighbor and successor sets cut the
//! labeled spaces down toward one representative per isomorphism class, and
//! everything is cross-checkable against an independent brute-force graph
//! oracle.
//!
//! The pieces:
//! - [`graph`]: dense graphs, shortest-path tables, family membership,
//!   exhaustive generation, isomorphism counting — the oracle side.
//! - [`model`]: exact-integer linear models with LP-format export.
//! - [`encodings`]: the space compiler and solution/graph conversion.
//! - [`symmetry`]: lexicographic machinery, constraint emitters, canonical
//!   indexing algorithms, and the ancestor-tie-break verification.
//! - [`search`]: exhaustive depth-first enumeration with bounds propagation,
//!   the in-process replacement for an external solution-pool solver.

pub mod encodings;
pub mod graph;
pub mod model;
pub mod search;
pub mod symmetry;

pub use encodings::{
    build_space, encode_general, encode_simplified, Flavor, SpaceModel, SpaceSpec,
};
pub use graph::{enumerate_graphs, iso_classes, Graph, PathTables, SpaceFamily};
pub use model::{Assignment, Model, Sense, VarId, VarKind};
pub use search::{enumerate_feasible, SearchOptions, SearchStatus};
pub use symmetry::{
    check_indexing, index_dag, index_undirected, lo_compare, verify_conjecture, SymmetryScheme,
};
