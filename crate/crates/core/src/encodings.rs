//! Compilation of graph-space descriptions into integer-linear models, and
//! the bidirectional solution/graph conversion.
//!
//! Two base encodings exist. The general one carries adjacency, reachability,
//! all-pairs shortest distances, and shortest-path membership (`A`, `r`, `d`,
//! `delta`); its feasible points are in bijection with *all* graphs on the
//! slot range. The simplified one carries adjacency plus single-source tables
//! rooted at node 0 (`A`, `d_v`, `gamma`); its feasible points are in
//! bijection with the graphs where node 0 reaches every existing node.
//! Restrictions, underlying/transpose copies, and symmetry constraints are
//! layered on top in a fixed order so a space always compiles to the same
//! model bytes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, SpaceFamily};
use crate::model::{Assignment, EvaluationReport, Model, ModelError, Sense, VarId, VarKind};
use crate::symmetry::{emit_for_space, SymmetryScheme};

/// Largest supported slot count: keeps every emitted coefficient (up to
/// `2^(2n-1)` after big-M expansion) exactly representable in `i128` with
/// plenty of headroom for constraint activities.
pub const ARITHMETIC_CAP: usize = 30;

#[derive(Debug, Error)]
pub enum EncodeError {
    #[error("invalid space: {0}")]
    Spec(String),
    #[error("restriction {restriction} needs {needed} variables, but the encoding has none")]
    Capability {
        restriction: &'static str,
        needed: &'static str,
    },
    #[error("encodings cover different slot counts: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("slot count {n} exceeds the exact-arithmetic cap {cap}")]
    ArithmeticCap { n: usize, cap: usize },
    #[error("assignment is infeasible for this space ({} constraint violations, {} bounds violations)",
            .0.violations.len(), .0.bounds_violations.len())]
    Infeasible(EvaluationReport),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which base encoding realizes a space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    General,
    Simplified,
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Flavor::General => "general",
            Flavor::Simplified => "simplified",
        })
    }
}

impl std::str::FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "general" => Ok(Flavor::General),
            "simplified" => Ok(Flavor::Simplified),
            _ => Err(format!("unknown flavor {s:?}")),
        }
    }
}

/// Declarative description of a compilable graph space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub family: SpaceFamily,
    pub n0: usize,
    pub n: usize,
    /// `None` picks the family's default flavor.
    #[serde(default)]
    pub flavor: Option<Flavor>,
    #[serde(default)]
    pub symmetry: SymmetryScheme,
}

impl SpaceSpec {
    pub fn new(family: SpaceFamily, n0: usize, n: usize) -> Self {
        SpaceSpec {
            family,
            n0,
            n,
            flavor: None,
            symmetry: SymmetryScheme::None,
        }
    }

    pub fn with_flavor(mut self, flavor: Flavor) -> Self {
        self.flavor = Some(flavor);
        self
    }

    pub fn with_symmetry(mut self, symmetry: SymmetryScheme) -> Self {
        self.symmetry = symmetry;
        self
    }

    /// The flavor actually compiled: the requested one, or the family's
    /// default (the smallest valid formulation).
    pub fn effective_flavor(&self) -> Flavor {
        self.flavor.unwrap_or(match self.family {
            SpaceFamily::ConnectedUndirected
            | SpaceFamily::StronglyConnected
            | SpaceFamily::WeaklyConnected
            | SpaceFamily::WeaklyConnectedDag => Flavor::Simplified,
            SpaceFamily::Dag
            | SpaceFamily::StDag
            | SpaceFamily::AllDirected
            | SpaceFamily::AllUndirected => Flavor::General,
        })
    }
}

/// Extra constraint families layered onto a base encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Restriction {
    /// Symmetric adjacency (and symmetric `r`/`d`/`delta` when present).
    Undirected,
    /// Every pair of existing nodes reaches each other.
    ConnectivityReach,
    /// No two nodes reach each other: acyclicity.
    Dag,
    /// At most one existing source and one existing sink.
    StDag,
    /// Every existing node beyond 0 has an edge from a smaller index.
    SmallerIndexConnectivity,
}

/// Variable table for one general-encoding copy.
#[derive(Debug, Clone)]
pub struct GeneralVars {
    n: usize,
    a: Vec<VarId>,
    r: Vec<VarId>,
    d: Vec<VarId>,
    delta: Vec<VarId>,
}

impl GeneralVars {
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn a(&self, u: usize, v: usize) -> VarId {
        self.a[u * self.n + v]
    }
    pub fn r(&self, u: usize, v: usize) -> VarId {
        self.r[u * self.n + v]
    }
    pub fn d(&self, u: usize, v: usize) -> VarId {
        self.d[u * self.n + v]
    }
    pub fn delta(&self, u: usize, v: usize, w: usize) -> VarId {
        self.delta[(u * self.n + v) * self.n + w]
    }
}

/// Variable table for one simplified-encoding copy.
#[derive(Debug, Clone)]
pub struct SimplifiedVars {
    n: usize,
    a: Vec<VarId>,
    dist: Vec<VarId>,
    gamma: Vec<VarId>,
}

impl SimplifiedVars {
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn a(&self, u: usize, v: usize) -> VarId {
        self.a[u * self.n + v]
    }
    pub fn d_src(&self, v: usize) -> VarId {
        self.dist[v]
    }
    pub fn gamma(&self, u: usize, v: usize) -> VarId {
        self.gamma[u * self.n + v]
    }
}

/// Adjacency-only copy: used when a symmetry scheme needs an underlying
/// adjacency matrix but the space recipe carries no full underlying encoding.
#[derive(Debug, Clone)]
pub struct AdjacencyVars {
    n: usize,
    a: Vec<VarId>,
}

impl AdjacencyVars {
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn a(&self, u: usize, v: usize) -> VarId {
        self.a[u * self.n + v]
    }
}

/// One graph copy's variable table, of whichever kind.
#[derive(Debug, Clone)]
pub enum EncodingVars {
    General(GeneralVars),
    Simplified(SimplifiedVars),
    Adjacency(AdjacencyVars),
}

impl EncodingVars {
    pub fn n(&self) -> usize {
        match self {
            EncodingVars::General(g) => g.n,
            EncodingVars::Simplified(s) => s.n,
            EncodingVars::Adjacency(a) => a.n,
        }
    }

    /// Adjacency entry `(u, v)`; the diagonal holds node existence.
    pub fn a(&self, u: usize, v: usize) -> VarId {
        match self {
            EncodingVars::General(g) => g.a(u, v),
            EncodingVars::Simplified(s) => s.a(u, v),
            EncodingVars::Adjacency(a) => a.a(u, v),
        }
    }

    pub fn as_general(&self) -> Option<&GeneralVars> {
        match self {
            EncodingVars::General(g) => Some(g),
            _ => None,
        }
    }

    pub fn as_simplified(&self) -> Option<&SimplifiedVars> {
        match self {
            EncodingVars::Simplified(s) => Some(s),
            _ => None,
        }
    }
}

fn check_dims(n0: usize, n: usize) -> Result<(), EncodeError> {
    if n > ARITHMETIC_CAP {
        return Err(EncodeError::ArithmeticCap {
            n,
            cap: ARITHMETIC_CAP,
        });
    }
    if n0 < 1 || n0 > n {
        return Err(EncodeError::Spec(format!(
            "node range requires 1 <= n0 <= n, got n0={n0}, n={n}"
        )));
    }
    Ok(())
}

/// Fresh model holding one general-encoding copy.
pub fn encode_general(n0: usize, n: usize) -> Result<(Model, EncodingVars), EncodeError> {
    check_dims(n0, n)?;
    let mut model = Model::new();
    let vars = emit_general(&mut model, "", n0, n)?;
    Ok((model, EncodingVars::General(vars)))
}

/// Fresh model holding one simplified-encoding copy.
pub fn encode_simplified(n0: usize, n: usize) -> Result<(Model, EncodingVars), EncodeError> {
    check_dims(n0, n)?;
    let mut model = Model::new();
    let vars = emit_simplified(&mut model, "", n0, n)?;
    Ok((model, EncodingVars::Simplified(vars)))
}

/// Emits the general encoding into `model` under `prefix`. Variables first
/// (A, r, d, delta in row-major order), then conditions C1..C8.
pub(crate) fn emit_general(
    model: &mut Model,
    prefix: &str,
    n0: usize,
    n: usize,
) -> Result<GeneralVars, EncodeError> {
    let ni = n as i128;
    let mut a = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            a.push(model.add_binary(format!("{prefix}A_{u}_{v}"))?);
        }
    }
    let mut r = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            r.push(model.add_binary(format!("{prefix}r_{u}_{v}"))?);
        }
    }
    let mut d = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            d.push(model.add_variable(format!("{prefix}d_{u}_{v}"), VarKind::Integer, 0, n as i64)?);
        }
    }
    let mut delta = Vec::with_capacity(n * n * n);
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                delta.push(model.add_binary(format!("{prefix}delta_{u}_{v}_{w}"))?);
            }
        }
    }
    let vars = GeneralVars { n, a, r, d, delta };

    // C1: at least n0 nodes, smaller indexes occupied first.
    let diag: Vec<(i128, VarId)> = (0..n).map(|v| (1, vars.a(v, v))).collect();
    model.add_constraint(&diag, Sense::Ge, n0 as i128, format!("{prefix}C1_sum"))?;
    for v in 0..n.saturating_sub(1) {
        model.add_constraint(
            &[(1, vars.a(v, v)), (-1, vars.a(v + 1, v + 1))],
            Sense::Ge,
            0,
            format!("{prefix}C1_mono_{v}"),
        )?;
    }

    // C2: nonexistent endpoints kill reachability and push distance to n.
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            model.add_constraint(
                &[(2, vars.r(u, v)), (-1, vars.a(u, u)), (-1, vars.a(v, v))],
                Sense::Le,
                0,
                format!("{prefix}C2a_{u}_{v}"),
            )?;
            model.add_constraint(
                &[(1, vars.d(u, v)), (ni, vars.a(u, u))],
                Sense::Ge,
                ni,
                format!("{prefix}C2b_{u}_{v}"),
            )?;
            model.add_constraint(
                &[(1, vars.d(u, v)), (ni, vars.a(v, v))],
                Sense::Ge,
                ni,
                format!("{prefix}C2c_{u}_{v}"),
            )?;
        }
    }

    // C3: diagonal initialization.
    for v in 0..n {
        model.add_constraint(&[(1, vars.r(v, v))], Sense::Eq, 1, format!("{prefix}C3a_{v}"))?;
        model.add_constraint(&[(1, vars.d(v, v))], Sense::Eq, 0, format!("{prefix}C3b_{v}"))?;
        model.add_constraint(
            &[(1, vars.delta(v, v, v))],
            Sense::Eq,
            1,
            format!("{prefix}C3c_{v}"),
        )?;
        for w in 0..n {
            if w != v {
                model.add_constraint(
                    &[(1, vars.delta(v, v, w))],
                    Sense::Eq,
                    0,
                    format!("{prefix}C3d_{v}_{w}"),
                )?;
            }
        }
    }

    // C4: an edge pins distance 1; a missing edge pushes it above 1.
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            model.add_constraint(
                &[(1, vars.r(u, v)), (-1, vars.a(u, v))],
                Sense::Ge,
                0,
                format!("{prefix}C4a_{u}_{v}"),
            )?;
            model.add_constraint(
                &[(1, vars.d(u, v)), (1, vars.a(u, v))],
                Sense::Ge,
                2,
                format!("{prefix}C4b_{u}_{v}"),
            )?;
            model.add_constraint(
                &[(1, vars.d(u, v)), (ni - 1, vars.a(u, v))],
                Sense::Le,
                ni,
                format!("{prefix}C4c_{u}_{v}"),
            )?;
        }
    }

    // C5: reachable exactly when the distance is finite.
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            model.add_constraint(
                &[(1, vars.r(u, v)), (1, vars.d(u, v))],
                Sense::Le,
                ni,
                format!("{prefix}C5a_{u}_{v}"),
            )?;
            model.add_constraint(
                &[(1, vars.d(u, v)), (ni - 1, vars.r(u, v))],
                Sense::Ge,
                ni,
                format!("{prefix}C5b_{u}_{v}"),
            )?;
        }
    }

    // C6: path membership needs both legs reachable; reachability is
    // transitive.
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if u == v || v == w || u == w {
                    continue;
                }
                model.add_constraint(
                    &[(2, vars.delta(u, v, w)), (-1, vars.r(u, w)), (-1, vars.r(w, v))],
                    Sense::Le,
                    0,
                    format!("{prefix}C6a_{u}_{v}_{w}"),
                )?;
                model.add_constraint(
                    &[(1, vars.r(u, w)), (1, vars.r(w, v)), (-1, vars.r(u, v))],
                    Sense::Le,
                    1,
                    format!("{prefix}C6b_{u}_{v}_{w}"),
                )?;
            }
        }
    }

    // C7: endpoints always on the path; interior nodes appear exactly when
    // the pair is reachable without a direct edge.
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            model.add_constraint(
                &[(1, vars.delta(u, v, u))],
                Sense::Eq,
                1,
                format!("{prefix}C7a_{u}_{v}"),
            )?;
            model.add_constraint(
                &[(1, vars.delta(u, v, v))],
                Sense::Eq,
                1,
                format!("{prefix}C7b_{u}_{v}"),
            )?;
            let sum: Vec<(i128, VarId)> = (0..n).map(|w| (1, vars.delta(u, v, w))).collect();
            let mut lo = sum.clone();
            lo.push((-1, vars.r(u, v)));
            lo.push((1, vars.a(u, v)));
            model.add_constraint(&lo, Sense::Ge, 2, format!("{prefix}C7c_{u}_{v}"))?;
            let mut hi = sum;
            hi.push((-(ni - 2), vars.r(u, v)));
            hi.push((ni - 2, vars.a(u, v)));
            model.add_constraint(&hi, Sense::Le, 2, format!("{prefix}C7d_{u}_{v}"))?;
        }
    }

    // C8: triangle inequality, tight exactly on shortest-path members.
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                if u == v || v == w || u == w {
                    continue;
                }
                model.add_constraint(
                    &[
                        (1, vars.d(u, w)),
                        (1, vars.d(w, v)),
                        (-1, vars.d(u, v)),
                        (1, vars.delta(u, v, w)),
                        (-(ni + 1), vars.r(u, w)),
                        (-(ni + 1), vars.r(w, v)),
                    ],
                    Sense::Ge,
                    1 - 2 * (ni + 1),
                    format!("{prefix}C8a_{u}_{v}_{w}"),
                )?;
                model.add_constraint(
                    &[
                        (1, vars.d(u, w)),
                        (1, vars.d(w, v)),
                        (-1, vars.d(u, v)),
                        (2 * ni, vars.delta(u, v, w)),
                    ],
                    Sense::Le,
                    2 * ni,
                    format!("{prefix}C8b_{u}_{v}_{w}"),
                )?;
            }
        }
    }

    Ok(vars)
}

/// Emits the simplified encoding into `model` under `prefix`. Variables
/// first (A, d, gamma), then conditions CS1..CS5.
pub(crate) fn emit_simplified(
    model: &mut Model,
    prefix: &str,
    n0: usize,
    n: usize,
) -> Result<SimplifiedVars, EncodeError> {
    let ni = n as i128;
    let mut a = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            a.push(model.add_binary(format!("{prefix}A_{u}_{v}"))?);
        }
    }
    let mut dist = Vec::with_capacity(n);
    for v in 0..n {
        dist.push(model.add_variable(format!("{prefix}d_{v}"), VarKind::Integer, 0, n as i64)?);
    }
    let mut gamma = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            gamma.push(model.add_binary(format!("{prefix}gamma_{u}_{v}"))?);
        }
    }
    let vars = SimplifiedVars { n, a, dist, gamma };

    // CS1: node count and prefix occupancy.
    let diag: Vec<(i128, VarId)> = (0..n).map(|v| (1, vars.a(v, v))).collect();
    model.add_constraint(&diag, Sense::Ge, n0 as i128, format!("{prefix}CS1_sum"))?;
    for v in 0..n.saturating_sub(1) {
        model.add_constraint(
            &[(1, vars.a(v, v)), (-1, vars.a(v + 1, v + 1))],
            Sense::Ge,
            0,
            format!("{prefix}CS1_mono_{v}"),
        )?;
    }

    // CS2: edges need both endpoints; gamma needs the edge.
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            model.add_constraint(
                &[(2, vars.a(u, v)), (-1, vars.a(u, u)), (-1, vars.a(v, v))],
                Sense::Le,
                0,
                format!("{prefix}CS2a_{u}_{v}"),
            )?;
            model.add_constraint(
                &[(1, vars.a(u, v)), (-1, vars.gamma(u, v))],
                Sense::Ge,
                0,
                format!("{prefix}CS2b_{u}_{v}"),
            )?;
        }
    }

    // CS3: the source has no shortest-path parent; every other existing node
    // has at least one.
    let col0: Vec<(i128, VarId)> = (0..n).map(|u| (1, vars.gamma(u, 0))).collect();
    model.add_constraint(&col0, Sense::Eq, 0, format!("{prefix}CS3a"))?;
    for v in 1..n {
        model.add_constraint(
            &[(1, vars.gamma(v, v))],
            Sense::Eq,
            0,
            format!("{prefix}CS3b_{v}"),
        )?;
        let col: Vec<(i128, VarId)> = (0..n).map(|u| (1, vars.gamma(u, v))).collect();
        let mut lo = col.clone();
        lo.push((-1, vars.a(v, v)));
        model.add_constraint(&lo, Sense::Ge, 0, format!("{prefix}CS3c_{v}"))?;
        let mut hi = col;
        hi.push((-(ni - 1), vars.a(v, v)));
        model.add_constraint(&hi, Sense::Le, 0, format!("{prefix}CS3d_{v}"))?;
    }

    // CS4: source distance 0; existing nodes in [1, n-1]; missing nodes at n.
    model.add_constraint(&[(1, vars.d_src(0))], Sense::Eq, 0, format!("{prefix}CS4a"))?;
    for v in 1..n {
        model.add_constraint(
            &[(1, vars.d_src(v)), (ni - 1, vars.a(v, v))],
            Sense::Ge,
            ni,
            format!("{prefix}CS4b_{v}"),
        )?;
        model.add_constraint(
            &[(1, vars.d_src(v)), (1, vars.a(v, v))],
            Sense::Le,
            ni,
            format!("{prefix}CS4c_{v}"),
        )?;
    }

    // CS5: distances relax along edges, tight exactly on gamma parents.
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            model.add_constraint(
                &[
                    (1, vars.d_src(v)),
                    (-1, vars.d_src(u)),
                    (ni, vars.a(u, v)),
                    (-1, vars.gamma(u, v)),
                ],
                Sense::Le,
                ni,
                format!("{prefix}CS5a_{u}_{v}"),
            )?;
            model.add_constraint(
                &[
                    (1, vars.d_src(u)),
                    (-1, vars.d_src(v)),
                    (ni + 1, vars.gamma(u, v)),
                ],
                Sense::Le,
                ni,
                format!("{prefix}CS5b_{u}_{v}"),
            )?;
        }
    }

    Ok(vars)
}

/// Adjacency-only copy (A variables, no conditions): the linking constraints
/// define the entries in terms of another copy.
fn emit_adjacency(model: &mut Model, prefix: &str, n: usize) -> Result<AdjacencyVars, EncodeError> {
    let mut a = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            a.push(model.add_binary(format!("{prefix}A_{u}_{v}"))?);
        }
    }
    Ok(AdjacencyVars { n, a })
}

/// Appends one restriction's constraint family to the model, in place.
pub fn apply_restriction(
    model: &mut Model,
    vars: &EncodingVars,
    restriction: Restriction,
    prefix: &str,
) -> Result<(), EncodeError> {
    let n = vars.n();
    match restriction {
        Restriction::Undirected => {
            for u in 0..n {
                for v in u + 1..n {
                    model.add_constraint(
                        &[(1, vars.a(u, v)), (-1, vars.a(v, u))],
                        Sense::Eq,
                        0,
                        format!("{prefix}UND_A_{u}_{v}"),
                    )?;
                }
            }
            // The symmetric copies of r, d, delta are redundant but tighten
            // the continuous relaxation; emit them when available.
            if let EncodingVars::General(g) = vars {
                for u in 0..n {
                    for v in u + 1..n {
                        model.add_constraint(
                            &[(1, g.r(u, v)), (-1, g.r(v, u))],
                            Sense::Eq,
                            0,
                            format!("{prefix}UND_r_{u}_{v}"),
                        )?;
                        model.add_constraint(
                            &[(1, g.d(u, v)), (-1, g.d(v, u))],
                            Sense::Eq,
                            0,
                            format!("{prefix}UND_d_{u}_{v}"),
                        )?;
                        for w in 0..n {
                            model.add_constraint(
                                &[(1, g.delta(u, v, w)), (-1, g.delta(v, u, w))],
                                Sense::Eq,
                                0,
                                format!("{prefix}UND_delta_{u}_{v}_{w}"),
                            )?;
                        }
                    }
                }
            }
        }
        Restriction::ConnectivityReach => {
            let g = vars.as_general().ok_or(EncodeError::Capability {
                restriction: "connectivity-reach",
                needed: "reachability",
            })?;
            for u in 0..n {
                for v in 0..n {
                    if u != v {
                        model.add_constraint(
                            &[(1, g.r(u, v)), (-1, g.a(u, u)), (-1, g.a(v, v))],
                            Sense::Ge,
                            -1,
                            format!("{prefix}CONN_{u}_{v}"),
                        )?;
                    }
                }
            }
        }
        Restriction::Dag => {
            let g = vars.as_general().ok_or(EncodeError::Capability {
                restriction: "dag",
                needed: "reachability",
            })?;
            for u in 0..n {
                for v in u + 1..n {
                    model.add_constraint(
                        &[(1, g.r(u, v)), (1, g.r(v, u))],
                        Sense::Le,
                        1,
                        format!("{prefix}DAG_{u}_{v}"),
                    )?;
                }
            }
        }
        Restriction::StDag => {
            // Two existing zero-in-degree (or zero-out-degree) nodes cannot
            // coexist. The row is symmetric in u and v, so one unordered
            // copy suffices.
            for u in 0..n {
                for v in u + 1..n {
                    for (dir, tag) in [(true, "IN"), (false, "OUT")] {
                        let mut terms: Vec<(i128, VarId)> = Vec::new();
                        for w in 0..n {
                            if w != u {
                                terms.push((1, if dir { vars.a(w, u) } else { vars.a(u, w) }));
                            }
                            if w != v {
                                terms.push((1, if dir { vars.a(w, v) } else { vars.a(v, w) }));
                            }
                        }
                        terms.push((-1, vars.a(u, u)));
                        terms.push((-1, vars.a(v, v)));
                        model.add_constraint(
                            &terms,
                            Sense::Ge,
                            -1,
                            format!("{prefix}STDAG_{tag}_{u}_{v}"),
                        )?;
                    }
                }
            }
        }
        Restriction::SmallerIndexConnectivity => {
            for v in 1..n {
                let mut terms: Vec<(i128, VarId)> = (0..v).map(|u| (1, vars.a(u, v))).collect();
                terms.push((-1, vars.a(v, v)));
                model.add_constraint(&terms, Sense::Ge, 0, format!("{prefix}SIC_{v}"))?;
            }
        }
    }
    Ok(())
}

/// Ties an underlying copy's adjacency to the original's:
/// `A_U(v,v) = A(v,v)` and `A_U(u,v) = max(A(u,v), A(v,u))`.
pub fn link_underlying(
    model: &mut Model,
    orig: &EncodingVars,
    under: &EncodingVars,
) -> Result<(), EncodeError> {
    let n = orig.n();
    if under.n() != n {
        return Err(EncodeError::SizeMismatch(n, under.n()));
    }
    for v in 0..n {
        model.add_constraint(
            &[(1, under.a(v, v)), (-1, orig.a(v, v))],
            Sense::Eq,
            0,
            format!("LINKU_diag_{v}"),
        )?;
    }
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            model.add_constraint(
                &[(1, orig.a(u, v)), (1, orig.a(v, u)), (-2, under.a(u, v))],
                Sense::Le,
                0,
                format!("LINKU_lo_{u}_{v}"),
            )?;
            model.add_constraint(
                &[(2, under.a(u, v)), (-2, orig.a(u, v)), (-2, orig.a(v, u))],
                Sense::Le,
                0,
                format!("LINKU_hi_{u}_{v}"),
            )?;
        }
    }
    Ok(())
}

/// Ties a transpose copy's adjacency to the original's: `A_T(u,v) = A(v,u)`.
/// The diagonal case keeps the two copies' node existence equal.
pub fn link_transpose(
    model: &mut Model,
    orig: &EncodingVars,
    trans: &EncodingVars,
) -> Result<(), EncodeError> {
    let n = orig.n();
    if trans.n() != n {
        return Err(EncodeError::SizeMismatch(n, trans.n()));
    }
    for u in 0..n {
        for v in 0..n {
            model.add_constraint(
                &[(1, trans.a(u, v)), (-1, orig.a(v, u))],
                Sense::Eq,
                0,
                format!("LINKT_{u}_{v}"),
            )?;
        }
    }
    Ok(())
}

/// A compiled space: the model plus the variable tables of every graph copy.
#[derive(Debug, Clone)]
pub struct SpaceModel {
    spec: SpaceSpec,
    model: Model,
    primary: EncodingVars,
    underlying: Option<EncodingVars>,
    transpose: Option<EncodingVars>,
}

/// Compiles a space description into one model. Composition order is fixed
/// (bases, then restrictions, then links, then symmetry), so the same spec
/// always yields byte-identical exports.
pub fn build_space(spec: &SpaceSpec) -> Result<SpaceModel, EncodeError> {
    check_dims(spec.n0, spec.n)?;
    let flavor = spec.effective_flavor();
    let (n0, n) = (spec.n0, spec.n);
    let mut model = Model::new();

    let reject = |cell: &str| -> EncodeError {
        EncodeError::Spec(format!(
            "the simplified encoding does not realize the {cell} space; use the general flavor"
        ))
    };

    let mut underlying = None;
    let mut transpose = None;
    let primary = match (spec.family, flavor) {
        (SpaceFamily::ConnectedUndirected, Flavor::General) => {
            let p = EncodingVars::General(emit_general(&mut model, "", n0, n)?);
            apply_restriction(&mut model, &p, Restriction::Undirected, "")?;
            apply_restriction(&mut model, &p, Restriction::ConnectivityReach, "")?;
            p
        }
        (SpaceFamily::ConnectedUndirected, Flavor::Simplified) => {
            // Reach-from-0 over a symmetric adjacency is exactly
            // connectivity.
            let p = EncodingVars::Simplified(emit_simplified(&mut model, "", n0, n)?);
            apply_restriction(&mut model, &p, Restriction::Undirected, "")?;
            p
        }
        (SpaceFamily::StronglyConnected, Flavor::General) => {
            let p = EncodingVars::General(emit_general(&mut model, "", n0, n)?);
            apply_restriction(&mut model, &p, Restriction::ConnectivityReach, "")?;
            p
        }
        (SpaceFamily::StronglyConnected, Flavor::Simplified) => {
            // Reach-from-0 on the graph and on its transpose.
            let p = EncodingVars::Simplified(emit_simplified(&mut model, "", n0, n)?);
            let t = EncodingVars::Simplified(emit_simplified(&mut model, "T_", n0, n)?);
            link_transpose(&mut model, &p, &t)?;
            transpose = Some(t);
            p
        }
        (SpaceFamily::WeaklyConnected, flavor) => {
            let p = EncodingVars::General(emit_general(&mut model, "", n0, n)?);
            let u = match flavor {
                Flavor::General => {
                    let u = EncodingVars::General(emit_general(&mut model, "U_", n0, n)?);
                    apply_restriction(&mut model, &u, Restriction::ConnectivityReach, "U_")?;
                    u
                }
                Flavor::Simplified => {
                    EncodingVars::Simplified(emit_simplified(&mut model, "U_", n0, n)?)
                }
            };
            link_underlying(&mut model, &p, &u)?;
            underlying = Some(u);
            p
        }
        (SpaceFamily::Dag, Flavor::General) => {
            let p = EncodingVars::General(emit_general(&mut model, "", n0, n)?);
            apply_restriction(&mut model, &p, Restriction::Dag, "")?;
            p
        }
        (SpaceFamily::Dag, Flavor::Simplified) => return Err(reject("dag")),
        (SpaceFamily::WeaklyConnectedDag, flavor) => {
            let p = EncodingVars::General(emit_general(&mut model, "", n0, n)?);
            apply_restriction(&mut model, &p, Restriction::Dag, "")?;
            let u = match flavor {
                Flavor::General => {
                    let u = EncodingVars::General(emit_general(&mut model, "U_", n0, n)?);
                    apply_restriction(&mut model, &u, Restriction::ConnectivityReach, "U_")?;
                    u
                }
                Flavor::Simplified => {
                    EncodingVars::Simplified(emit_simplified(&mut model, "U_", n0, n)?)
                }
            };
            link_underlying(&mut model, &p, &u)?;
            underlying = Some(u);
            p
        }
        (SpaceFamily::StDag, Flavor::General) => {
            let p = EncodingVars::General(emit_general(&mut model, "", n0, n)?);
            apply_restriction(&mut model, &p, Restriction::Dag, "")?;
            apply_restriction(&mut model, &p, Restriction::StDag, "")?;
            p
        }
        (SpaceFamily::StDag, Flavor::Simplified) => return Err(reject("st-dag")),
        (SpaceFamily::AllDirected, Flavor::General) => {
            EncodingVars::General(emit_general(&mut model, "", n0, n)?)
        }
        (SpaceFamily::AllDirected, Flavor::Simplified) => return Err(reject("all-directed")),
        (SpaceFamily::AllUndirected, Flavor::General) => {
            let p = EncodingVars::General(emit_general(&mut model, "", n0, n)?);
            apply_restriction(&mut model, &p, Restriction::Undirected, "")?;
            p
        }
        (SpaceFamily::AllUndirected, Flavor::Simplified) => return Err(reject("all-undirected")),
    };

    // A scheme over underlying adjacency may need its own copy when the
    // recipe did not already build one.
    if spec.symmetry == SymmetryScheme::DirectedUnderlyingLex && underlying.is_none() {
        let u = EncodingVars::Adjacency(emit_adjacency(&mut model, "U_", n)?);
        link_underlying(&mut model, &primary, &u)?;
        underlying = Some(u);
    }

    let mut space = SpaceModel {
        spec: *spec,
        model,
        primary,
        underlying,
        transpose,
    };
    emit_for_space(&mut space)?;
    Ok(space)
}

impl SpaceModel {
    pub fn spec(&self) -> &SpaceSpec {
        &self.spec
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub(crate) fn model_mut(&mut self) -> &mut Model {
        &mut self.model
    }

    pub fn primary(&self) -> &EncodingVars {
        &self.primary
    }

    pub fn underlying(&self) -> Option<&EncodingVars> {
        self.underlying.as_ref()
    }

    pub fn transpose(&self) -> Option<&EncodingVars> {
        self.transpose.as_ref()
    }

    /// Decodes a feasible assignment into the graph it denotes, reading the
    /// primary adjacency block. Infeasible assignments are refused.
    pub fn solution_to_graph(&self, assignment: &Assignment) -> Result<Graph, EncodeError> {
        let report = self.model.evaluate(assignment)?;
        if !report.is_feasible() {
            return Err(EncodeError::Infeasible(report));
        }
        self.decode_unchecked(assignment)
    }

    /// Decoding without the feasibility re-check, for assignments the caller
    /// has already certified.
    pub(crate) fn decode_unchecked(&self, assignment: &Assignment) -> Result<Graph, EncodeError> {
        let n = self.spec.n;
        let directed = self.spec.family.directed();
        let n_exist = (0..n)
            .filter(|&v| assignment.value(self.primary.a(v, v)) == 1)
            .count();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u != v
                    && (directed || u < v)
                    && assignment.value(self.primary.a(u, v)) == 1
                {
                    edges.push((u, v));
                }
            }
        }
        Ok(Graph::from_edges(n, n_exist, &edges, directed)?)
    }

    /// Encodes a graph as the unique assignment its path tables force,
    /// filling every copy (primary, underlying, transpose).
    pub fn graph_to_solution(&self, g: &Graph) -> Result<Assignment, EncodeError> {
        if g.n_slots() != self.spec.n {
            return Err(EncodeError::SizeMismatch(self.spec.n, g.n_slots()));
        }
        if g.directed() != self.spec.family.directed() {
            return Err(EncodeError::Spec(format!(
                "family {} expects directed={}, graph has directed={}",
                self.spec.family,
                self.spec.family.directed(),
                g.directed()
            )));
        }
        let mut values = vec![0i64; self.model.num_variables()];
        fill_block(&mut values, &self.primary, g);
        if let Some(under) = &self.underlying {
            fill_block(&mut values, under, &g.underlying());
        }
        if let Some(trans) = &self.transpose {
            fill_block(&mut values, trans, &g.transpose());
        }
        Ok(Assignment(values))
    }
}

fn fill_block(values: &mut [i64], vars: &EncodingVars, g: &Graph) {
    let n = vars.n();
    let fill_adjacency = |values: &mut [i64]| {
        for u in 0..n {
            for v in 0..n {
                let id = vars.a(u, v);
                values[id.index()] = if u == v {
                    g.exists(v) as i64
                } else {
                    g.has_edge(u, v) as i64
                };
            }
        }
    };
    match vars {
        EncodingVars::Adjacency(_) => fill_adjacency(values),
        EncodingVars::General(gv) => {
            fill_adjacency(values);
            let t = g.path_tables();
            for u in 0..n {
                for v in 0..n {
                    values[gv.r(u, v).index()] = t.reach(u, v) as i64;
                    values[gv.d(u, v).index()] = t.dist(u, v) as i64;
                    for w in 0..n {
                        values[gv.delta(u, v, w).index()] = t.on_shortest_path(u, v, w) as i64;
                    }
                }
            }
        }
        EncodingVars::Simplified(sv) => {
            fill_adjacency(values);
            let t = g.path_tables();
            for v in 0..n {
                values[sv.d_src(v).index()] = t.dist_from_source(v) as i64;
                for u in 0..n {
                    values[sv.gamma(u, v).index()] = t.on_source_path(u, v) as i64;
                }
            }
        }
    }
}
