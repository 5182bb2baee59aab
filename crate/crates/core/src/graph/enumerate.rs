//! Exhaustive labeled-graph generation and brute-force isomorphism counting.

use std::collections::HashSet;

use itertools::Itertools;

use super::{Graph, GraphError, SpaceFamily};

/// Brute-force cap for directed enumeration (2^(n(n-1)) masks).
pub const DIRECTED_ENUM_CAP: usize = 5;
/// Brute-force cap for undirected enumeration (2^(n(n-1)/2) masks).
pub const UNDIRECTED_ENUM_CAP: usize = 6;
/// Cap for the n! canonical-form search.
pub const PERMUTATION_CAP: usize = 7;

/// Streams every labeled graph of `family` with node count in `[n0, n]`,
/// padded to `n` slots, in deterministic order: node count ascending, then
/// edge bitmask ascending (bit i = i-th pair in row-major order).
pub fn enumerate_graphs(
    family: SpaceFamily,
    n0: usize,
    n: usize,
) -> Result<GraphStream, GraphError> {
    let cap = if family.directed() {
        DIRECTED_ENUM_CAP
    } else {
        UNDIRECTED_ENUM_CAP
    };
    enumerate_graphs_with_cap(family, n0, n, cap)
}

/// Same as [`enumerate_graphs`] with an explicit cap, for callers that accept
/// the cost of larger masks.
pub fn enumerate_graphs_with_cap(
    family: SpaceFamily,
    n0: usize,
    n: usize,
    cap: usize,
) -> Result<GraphStream, GraphError> {
    if n > cap {
        return Err(GraphError::AboveCap { n, cap });
    }
    Ok(GraphStream {
        family,
        n_slots: n,
        k: n0,
        k_max: n,
        mask: 0,
        pairs: pair_order(n0, family.directed()),
    })
}

fn pair_order(k: usize, directed: bool) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for u in 0..k {
        for v in 0..k {
            if u != v && (directed || u < v) {
                pairs.push((u, v));
            }
        }
    }
    pairs
}

/// Iterator over a family's labeled members. See [`enumerate_graphs`].
pub struct GraphStream {
    family: SpaceFamily,
    n_slots: usize,
    k: usize,
    k_max: usize,
    mask: u64,
    pairs: Vec<(usize, usize)>,
}

impl Iterator for GraphStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let directed = self.family.directed();
        loop {
            if self.k > self.k_max {
                return None;
            }
            if self.mask >> self.pairs.len() != 0 {
                self.k += 1;
                self.mask = 0;
                self.pairs = pair_order(self.k, directed);
                continue;
            }
            let n = self.n_slots;
            let mut adj = vec![false; n * n];
            for (i, &(u, v)) in self.pairs.iter().enumerate() {
                if self.mask >> i & 1 == 1 {
                    adj[u * n + v] = true;
                    if !directed {
                        adj[v * n + u] = true;
                    }
                }
            }
            let g = Graph::from_parts(n, self.k, adj, directed);
            self.mask += 1;
            if self.family.contains(&g).expect("directedness matches by construction") {
                return Some(g);
            }
        }
    }
}

/// Lexicographically minimal adjacency bit-string over all permutations of
/// the existing nodes. Graphs are isomorphic iff their keys are equal.
pub(crate) fn canonical_key(g: &Graph) -> u128 {
    let n = g.n_exist();
    debug_assert!(n <= PERMUTATION_CAP);
    let mut best = u128::MAX;
    for perm in (0..n).permutations(n) {
        let mut key: u128 = 0;
        for u in 0..n {
            for v in 0..n {
                if u != v && g.has_edge(u, v) {
                    key |= 1 << (perm[u] * n + perm[v]);
                }
            }
        }
        if key < best {
            best = key;
        }
    }
    best
}

/// Number of isomorphism classes among `graphs`, by exhaustive
/// canonical-form search over all node permutations.
pub fn iso_classes(graphs: &[Graph]) -> Result<usize, GraphError> {
    Ok(iso_class_keys(graphs)?.len())
}

/// The set of canonical keys among `graphs` (one key per isomorphism class).
pub fn iso_class_keys(graphs: &[Graph]) -> Result<HashSet<u128>, GraphError> {
    let first = graphs.first().ok_or(GraphError::EmptyInput)?;
    let n = first.n_exist();
    if n > PERMUTATION_CAP {
        return Err(GraphError::AboveCap {
            n,
            cap: PERMUTATION_CAP,
        });
    }
    let mut keys = HashSet::new();
    for g in graphs {
        if g.n_exist() != n {
            return Err(GraphError::MixedNodeCounts(n, g.n_exist()));
        }
        if g.directed() != first.directed() {
            return Err(GraphError::MixedDirectedness);
        }
        keys.insert(canonical_key(g));
    }
    Ok(keys)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect(family: SpaceFamily, n0: usize, n: usize) -> Vec<Graph> {
        enumerate_graphs(family, n0, n).unwrap().collect()
    }

    #[test]
    fn connected_undirected_counts() {
        assert_eq!(collect(SpaceFamily::ConnectedUndirected, 3, 3).len(), 4);
        assert_eq!(collect(SpaceFamily::ConnectedUndirected, 4, 4).len(), 38);
    }

    #[test]
    fn strongly_connected_count_n3() {
        assert_eq!(collect(SpaceFamily::StronglyConnected, 3, 3).len(), 18);
    }

    #[test]
    fn dag_count_n3() {
        // 25 of the 64 labeled digraphs on 3 nodes are acyclic.
        assert_eq!(collect(SpaceFamily::Dag, 3, 3).len(), 25);
        assert_eq!(collect(SpaceFamily::AllDirected, 3, 3).len(), 64);
    }

    #[test]
    fn node_range_is_inclusive_and_padded() {
        let graphs = collect(SpaceFamily::AllDirected, 1, 2);
        assert_eq!(graphs.len(), 5); // one 1-node graph, four 2-node digraphs
        assert!(graphs.iter().all(|g| g.n_slots() == 2));
        assert_eq!(graphs[0].n_exist(), 1);
    }

    #[test]
    fn enumeration_order_is_deterministic() {
        let a: Vec<_> = collect(SpaceFamily::WeaklyConnectedDag, 3, 3)
            .iter()
            .map(|g| g.edges())
            .collect();
        let b: Vec<_> = collect(SpaceFamily::WeaklyConnectedDag, 3, 3)
            .iter()
            .map(|g| g.edges())
            .collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 18);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_graphs(SpaceFamily::AllDirected, 6, 6),
            Err(GraphError::AboveCap { .. })
        ));
    }

    #[test]
    fn iso_classes_of_connected_graphs_n4() {
        let graphs = collect(SpaceFamily::ConnectedUndirected, 4, 4);
        assert_eq!(iso_classes(&graphs).unwrap(), 6);
    }

    #[test]
    fn iso_classes_of_weakly_connected_dags_n4() {
        let graphs = collect(SpaceFamily::WeaklyConnectedDag, 4, 4);
        assert_eq!(graphs.len(), 446);
        assert_eq!(iso_classes(&graphs).unwrap(), 24);
    }

    #[test]
    fn iso_classes_of_st_dags_n3() {
        let graphs = collect(SpaceFamily::StDag, 3, 3);
        assert_eq!(graphs.len(), 12);
        assert_eq!(iso_classes(&graphs).unwrap(), 2);
    }

    #[test]
    fn iso_classes_rejects_mixed_node_counts() {
        let a = Graph::from_edges(3, 3, &[(0, 1)], true).unwrap();
        let b = Graph::from_edges(3, 2, &[(0, 1)], true).unwrap();
        assert!(matches!(
            iso_classes(&[a, b]),
            Err(GraphError::MixedNodeCounts(3, 2))
        ));
    }
}
