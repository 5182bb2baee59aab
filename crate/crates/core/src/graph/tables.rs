//! All-pairs and single-source shortest-path tables.
//!
//! The tables follow the conventions the constraint encodings force on their
//! variables, so an oracle value can be compared against a model value
//! verbatim:
//! - `d[u][v] = n` stands for "unreachable", and also for any off-diagonal
//!   pair touching a nonexistent node;
//! - the diagonal is `r = 1, d = 0` for every slot, existing or not;
//! - `delta[u][v]` always contains both endpoints for `u != v`;
//! - `d_src[0] = 0` unconditionally, `d_src[v] = n` for nonexistent `v`;
//! - `gamma[u][v] = 1` exactly when edge `u -> v` exists and
//!   `d_src[v] = d_src[u] + 1`.

use super::Graph;

/// Reachability, shortest-distance, and shortest-path-membership tables,
/// plus the single-source tables rooted at node 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathTables {
    n: usize,
    r: Vec<bool>,
    d: Vec<usize>,
    delta: Vec<bool>,
    d_src: Vec<usize>,
    gamma: Vec<bool>,
}

impl PathTables {
    /// Computes every table by Floyd–Warshall over the existing prefix.
    pub fn new(g: &Graph) -> Self {
        let n = g.n_slots();
        let inf = n;

        // d: 0 on the diagonal (every slot), 1 on edges, n otherwise.
        let mut d = vec![inf; n * n];
        for v in 0..n {
            d[v * n + v] = 0;
        }
        for u in 0..n {
            for v in 0..n {
                if u != v && g.has_edge(u, v) {
                    d[u * n + v] = 1;
                }
            }
        }
        for w in 0..n {
            for u in 0..n {
                if d[u * n + w] >= inf {
                    continue;
                }
                for v in 0..n {
                    if d[w * n + v] >= inf {
                        continue;
                    }
                    let via = d[u * n + w] + d[w * n + v];
                    if via < d[u * n + v] {
                        d[u * n + v] = via;
                    }
                }
            }
        }

        let mut r = vec![false; n * n];
        for u in 0..n {
            for v in 0..n {
                r[u * n + v] = u == v || d[u * n + v] < inf;
            }
        }

        // delta[u][v][w]: endpoints by convention, interior nodes by the
        // additivity test d(u,w) + d(w,v) = d(u,v) on reachable legs.
        let mut delta = vec![false; n * n * n];
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    let on = if u == v {
                        w == u
                    } else if w == u || w == v {
                        true
                    } else {
                        u != w
                            && w != v
                            && d[u * n + w] < inf
                            && d[w * n + v] < inf
                            && d[u * n + w] + d[w * n + v] == d[u * n + v]
                    };
                    delta[(u * n + v) * n + w] = on;
                }
            }
        }

        let mut d_src = d[..n].to_vec(); // row 0 of d
        if n > 0 {
            d_src[0] = 0;
        }

        let mut gamma = vec![false; n * n];
        for u in 0..n {
            for v in 0..n {
                gamma[u * n + v] =
                    u != v && g.has_edge(u, v) && d_src[u] < inf && d_src[v] == d_src[u] + 1;
            }
        }

        PathTables {
            n,
            r,
            d,
            delta,
            d_src,
            gamma,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether node `u` reaches node `v`.
    pub fn reach(&self, u: usize, v: usize) -> bool {
        self.r[u * self.n + v]
    }

    /// Shortest distance from `u` to `v`; `n` means unreachable.
    pub fn dist(&self, u: usize, v: usize) -> usize {
        self.d[u * self.n + v]
    }

    /// Whether node `w` lies on a shortest `u -> v` path.
    pub fn on_shortest_path(&self, u: usize, v: usize, w: usize) -> bool {
        self.delta[(u * self.n + v) * self.n + w]
    }

    /// Shortest distance from node 0 to `v`; `n` for nonexistent nodes.
    pub fn dist_from_source(&self, v: usize) -> usize {
        self.d_src[v]
    }

    /// Whether edge `u -> v` advances a shortest path from node 0 to `v`.
    pub fn on_source_path(&self, u: usize, v: usize) -> bool {
        self.gamma[u * self.n + v]
    }

    /// Successor set of `v`: nodes other than `v` it reaches.
    pub fn successors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| u != v && self.reach(v, u)).collect()
    }

    /// Ancestor set of `v`: nodes other than `v` that reach it.
    pub fn ancestors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| u != v && self.reach(u, v)).collect()
    }
}
