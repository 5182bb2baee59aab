//! Dense graph representation and the brute-force ground-truth side of the
//! library: property checks, shortest-path tables, transforms, exhaustive
//! generation, and isomorphism counting.
//!
//! Graphs live in a fixed number of index slots. Slot `v` is occupied when
//! `exists(v)` is true, and occupied slots always form a prefix `0..n_exist`.
//! The diagonal of the adjacency matrix is reserved for existence, so edges
//! never touch it. Everything here is immutable after construction.

mod enumerate;
mod family;
mod tables;

pub(crate) use enumerate::canonical_key;
pub use enumerate::{
    enumerate_graphs, enumerate_graphs_with_cap, iso_class_keys, iso_classes, GraphStream,
    DIRECTED_ENUM_CAP, PERMUTATION_CAP, UNDIRECTED_ENUM_CAP,
};
pub use family::SpaceFamily;
pub use tables::PathTables;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors produced by graph construction, parsing, and the brute-force ops.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("edge endpoint {node} out of range: only {n_exist} nodes exist")]
    EndpointOutOfRange { node: usize, n_exist: usize },
    #[error("self-loop on node {0} (the diagonal is reserved for node existence)")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("n_exist {n_exist} exceeds the slot count {n_slots}")]
    TooManyNodes { n_exist: usize, n_slots: usize },
    #[error("family {family} applies to {expected} graphs only")]
    DomainMismatch {
        family: SpaceFamily,
        expected: &'static str,
    },
    #[error("node count {n} exceeds the brute-force cap {cap}")]
    AboveCap { n: usize, cap: usize },
    #[error("graphs must all share one node count (saw {0} and {1})")]
    MixedNodeCounts(usize, usize),
    #[error("graphs must all share one directedness")]
    MixedDirectedness,
    #[error("empty graph list")]
    EmptyInput,
    #[error("invalid graph JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Simple graph over `n_slots` index slots with prefix node existence.
///
/// Undirected graphs store both orientations of every edge, so `adj` is
/// symmetric exactly when `directed` is false.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n_slots: usize,
    exists: Vec<bool>,
    adj: Vec<bool>,
    directed: bool,
}

/// Wire format: `{"n": int, "n_exist": int, "directed": bool, "edges": [[u,v],...]}`.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    n_exist: usize,
    directed: bool,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from an explicit edge list.
    ///
    /// The first `n_exist` slots are occupied. For undirected graphs each
    /// listed edge is stored in both orientations, and `(u,v)` / `(v,u)`
    /// count as the same edge for duplicate detection.
    pub fn from_edges(
        n_slots: usize,
        n_exist: usize,
        edges: &[(usize, usize)],
        directed: bool,
    ) -> Result<Self, GraphError> {
        if n_exist > n_slots {
            return Err(GraphError::TooManyNodes { n_exist, n_slots });
        }
        let mut g = Graph {
            n_slots,
            exists: (0..n_slots).map(|v| v < n_exist).collect(),
            adj: vec![false; n_slots * n_slots],
            directed,
        };
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for node in [u, v] {
                if node >= n_exist {
                    return Err(GraphError::EndpointOutOfRange { node, n_exist });
                }
            }
            if g.adj[u * n_slots + v] {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            g.adj[u * n_slots + v] = true;
            if !directed {
                g.adj[v * n_slots + u] = true;
            }
        }
        Ok(g)
    }

    /// Internal constructor for enumeration: adjacency is trusted to respect
    /// the prefix-existence and no-self-loop invariants.
    pub(crate) fn from_parts(n_slots: usize, n_exist: usize, adj: Vec<bool>, directed: bool) -> Self {
        debug_assert_eq!(adj.len(), n_slots * n_slots);
        Graph {
            n_slots,
            exists: (0..n_slots).map(|v| v < n_exist).collect(),
            adj,
            directed,
        }
    }

    pub fn n_slots(&self) -> usize {
        self.n_slots
    }

    /// Number of existing nodes (they occupy slots `0..n_exist`).
    pub fn n_exist(&self) -> usize {
        self.exists.iter().filter(|&&e| e).count()
    }

    pub fn exists(&self, v: usize) -> bool {
        self.exists[v]
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    /// Whether edge `u -> v` is present (`u != v`).
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n_slots + v]
    }

    /// Edges in deterministic row-major order; undirected edges are reported
    /// once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n_slots {
            for v in 0..self.n_slots {
                if u != v && self.adj[u * self.n_slots + v] && (self.directed || u < v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Out-neighbors of `v` (all neighbors when undirected).
    pub fn out_neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n_slots).filter(|&u| u != v && self.has_edge(v, u)).collect()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        (0..self.n_slots).filter(|&u| u != v && self.has_edge(u, v)).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        (0..self.n_slots).filter(|&u| u != v && self.has_edge(v, u)).count()
    }

    /// Underlying graph: directions dropped, existence preserved.
    pub fn underlying(&self) -> Graph {
        let mut adj = vec![false; self.n_slots * self.n_slots];
        for u in 0..self.n_slots {
            for v in 0..self.n_slots {
                if u != v && (self.has_edge(u, v) || self.has_edge(v, u)) {
                    adj[u * self.n_slots + v] = true;
                }
            }
        }
        Graph {
            n_slots: self.n_slots,
            exists: self.exists.clone(),
            adj,
            directed: false,
        }
    }

    /// Transpose graph: every edge reversed, existence preserved.
    pub fn transpose(&self) -> Graph {
        let mut adj = vec![false; self.n_slots * self.n_slots];
        for u in 0..self.n_slots {
            for v in 0..self.n_slots {
                if u != v && self.has_edge(v, u) {
                    adj[u * self.n_slots + v] = true;
                }
            }
        }
        Graph {
            n_slots: self.n_slots,
            exists: self.exists.clone(),
            adj,
            directed: self.directed,
        }
    }

    /// Graph with nodes relabeled by `perm` (node `v` becomes `perm[v]`).
    /// `perm` must be a permutation of the existing prefix.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let n = self.n_exist();
        debug_assert_eq!(perm.len(), n);
        let mut adj = vec![false; self.n_slots * self.n_slots];
        for u in 0..n {
            for v in 0..n {
                if u != v && self.has_edge(u, v) {
                    adj[perm[u] * self.n_slots + perm[v]] = true;
                }
            }
        }
        Graph {
            n_slots: self.n_slots,
            exists: self.exists.clone(),
            adj,
            directed: self.directed,
        }
    }

    /// All-pairs shortest-path tables for this graph (the oracle's ground
    /// truth for every encoding variable).
    pub fn path_tables(&self) -> PathTables {
        PathTables::new(self)
    }

    /// Whether the existing nodes form one connected component of the
    /// underlying graph. The empty graph is not connected.
    pub fn is_connected_underlying(&self) -> bool {
        let n = self.n_exist();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for (y, s) in seen.iter_mut().enumerate() {
                if y != x && !*s && (self.has_edge(x, y) || self.has_edge(y, x)) {
                    *s = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Serializes to the JSON wire format. Output bytes are deterministic:
    /// edges in row-major order, undirected edges once with `u < v`.
    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            n: self.n_slots,
            n_exist: self.n_exist(),
            directed: self.directed,
            edges: self.edges(),
        };
        serde_json::to_string(&doc).expect("graph serialization cannot fail")
    }

    /// Parses the JSON wire format, re-validating all graph invariants.
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let doc: GraphJson = serde_json::from_str(text)?;
        Graph::from_edges(doc.n, doc.n_exist, &doc.edges, doc.directed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn path_graph_from_edges() {
        let g = Graph::from_edges(3, 3, &[(0, 1), (1, 2)], false).unwrap();
        assert!(g.has_edge(0, 1) && g.has_edge(1, 0));
        assert!(g.has_edge(1, 2) && g.has_edge(2, 1));
        assert!(!g.has_edge(0, 2));
        assert_eq!(g.n_exist(), 3);
    }

    #[test]
    fn prefix_existence() {
        let g = Graph::from_edges(3, 2, &[(0, 1)], true).unwrap();
        assert!(g.exists(0) && g.exists(1) && !g.exists(2));
        assert_eq!(g.edges(), vec![(0, 1)]);
    }

    #[test]
    fn rejects_out_of_range_endpoint() {
        let err = Graph::from_edges(3, 2, &[(0, 2)], true).unwrap_err();
        assert!(matches!(err, GraphError::EndpointOutOfRange { node: 2, .. }));
    }

    #[test]
    fn rejects_self_loop() {
        let err = Graph::from_edges(3, 3, &[(1, 1)], true).unwrap_err();
        assert!(matches!(err, GraphError::SelfLoop(1)));
    }

    #[test]
    fn rejects_duplicate_edges_in_both_orientations() {
        let err = Graph::from_edges(3, 3, &[(0, 1), (1, 0)], false).unwrap_err();
        assert!(matches!(err, GraphError::DuplicateEdge(1, 0)));
        assert!(Graph::from_edges(3, 3, &[(0, 1), (1, 0)], true).is_ok());
    }

    #[test]
    fn worked_example_neighbor_sets() {
        let g = worked_undirected_example();
        let neigh = |v: usize| -> Vec<usize> {
            (0..6).filter(|&u| u != v && g.has_edge(v, u)).collect()
        };
        assert_eq!(neigh(0), vec![1, 2, 3, 4, 5]);
        assert_eq!(neigh(1), vec![0, 2, 3, 4]);
        assert_eq!(neigh(2), vec![0, 1, 5]);
        assert_eq!(neigh(3), vec![0, 1, 4]);
        assert_eq!(neigh(4), vec![0, 1, 3]);
        assert_eq!(neigh(5), vec![0, 2]);
    }

    #[test]
    fn underlying_and_transpose_of_single_edge() {
        let g = Graph::from_edges(2, 2, &[(0, 1)], true).unwrap();
        let u = g.underlying();
        assert!(!u.directed() && u.has_edge(0, 1) && u.has_edge(1, 0));
        let t = g.transpose();
        assert!(t.has_edge(1, 0) && !t.has_edge(0, 1));
    }

    #[test]
    fn underlying_merges_antiparallel_edges() {
        let g = Graph::from_edges(2, 2, &[(0, 1), (1, 0)], true).unwrap();
        assert_eq!(g.underlying().edges(), vec![(0, 1)]);
    }

    pub(crate) fn worked_undirected_example() -> Graph {
        Graph::from_edges(
            6,
            6,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 5),
                (3, 4),
            ],
            false,
        )
        .unwrap()
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..=5, 0usize..=5, any::<bool>(), any::<u32>()).prop_map(
            |(n_slots, spare, directed, bits)| {
                let n_exist = n_slots.saturating_sub(spare).max(if n_slots > 0 { 1 } else { 0 });
                let mut edges = Vec::new();
                let mut i = 0;
                for u in 0..n_exist {
                    for v in 0..n_exist {
                        if u == v || (!directed && u > v) {
                            continue;
                        }
                        if bits >> (i % 32) & 1 == 1 {
                            edges.push((u, v));
                        }
                        i += 1;
                    }
                }
                Graph::from_edges(n_slots, n_exist, &edges, directed).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn transpose_is_an_involution(g in arb_graph()) {
            prop_assert_eq!(g.transpose().transpose(), g);
        }

        #[test]
        fn json_round_trips_bit_exactly(g in arb_graph()) {
            let text = g.to_json();
            let back = Graph::from_json(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(back.to_json(), text);
        }
    }
}
