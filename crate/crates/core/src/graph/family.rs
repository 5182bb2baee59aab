//! The catalog of graph spaces and their membership predicates.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// The graph families the encodings can target, plus the two unrestricted
/// base spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpaceFamily {
    ConnectedUndirected,
    StronglyConnected,
    WeaklyConnected,
    Dag,
    WeaklyConnectedDag,
    StDag,
    AllDirected,
    AllUndirected,
}

impl SpaceFamily {
    pub const ALL: [SpaceFamily; 8] = [
        SpaceFamily::ConnectedUndirected,
        SpaceFamily::StronglyConnected,
        SpaceFamily::WeaklyConnected,
        SpaceFamily::Dag,
        SpaceFamily::WeaklyConnectedDag,
        SpaceFamily::StDag,
        SpaceFamily::AllDirected,
        SpaceFamily::AllUndirected,
    ];

    /// Whether members of the family are directed graphs.
    pub fn directed(self) -> bool {
        !matches!(
            self,
            SpaceFamily::ConnectedUndirected | SpaceFamily::AllUndirected
        )
    }

    /// Membership predicate. Errors when the graph's directedness does not
    /// match the family's.
    pub fn contains(self, g: &Graph) -> Result<bool, GraphError> {
        if g.directed() != self.directed() {
            return Err(GraphError::DomainMismatch {
                family: self,
                expected: if self.directed() { "directed" } else { "undirected" },
            });
        }
        Ok(match self {
            SpaceFamily::AllUndirected | SpaceFamily::AllDirected => true,
            SpaceFamily::ConnectedUndirected | SpaceFamily::WeaklyConnected => {
                g.is_connected_underlying()
            }
            SpaceFamily::StronglyConnected => is_strongly_connected(g),
            SpaceFamily::Dag => is_acyclic(g),
            SpaceFamily::WeaklyConnectedDag => is_acyclic(g) && g.is_connected_underlying(),
            SpaceFamily::StDag => is_st_dag(g),
        })
    }
}

impl fmt::Display for SpaceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SpaceFamily::ConnectedUndirected => "connected-undirected",
            SpaceFamily::StronglyConnected => "strongly-connected",
            SpaceFamily::WeaklyConnected => "weakly-connected",
            SpaceFamily::Dag => "dag",
            SpaceFamily::WeaklyConnectedDag => "weakly-connected-dag",
            SpaceFamily::StDag => "st-dag",
            SpaceFamily::AllDirected => "all-directed",
            SpaceFamily::AllUndirected => "all-undirected",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for SpaceFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        SpaceFamily::ALL
            .into_iter()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| format!("unknown family {s:?}"))
    }
}

fn is_strongly_connected(g: &Graph) -> bool {
    let n = g.n_exist();
    if n == 0 {
        return false;
    }
    let t = g.path_tables();
    (0..n).all(|u| (0..n).all(|v| t.reach(u, v)))
}

fn is_acyclic(g: &Graph) -> bool {
    let n = g.n_exist();
    let t = g.path_tables();
    // No self-loops can exist, so any cycle makes two nodes mutually reachable.
    (0..n).all(|u| (u + 1..n).all(|v| !(t.reach(u, v) && t.reach(v, u))))
}

fn is_st_dag(g: &Graph) -> bool {
    if !is_acyclic(g) {
        return false;
    }
    let n = g.n_exist();
    if n == 0 {
        return false;
    }
    let sources = (0..n).filter(|&v| g.in_degree(v) == 0).count();
    let sinks = (0..n).filter(|&v| g.out_degree(v) == 0).count();
    sources == 1 && sinks == 1
}
