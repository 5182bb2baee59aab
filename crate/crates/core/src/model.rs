//! Integer-linear model representation with exact integer coefficients.
//!
//! Variables are binary or bounded-integer; constraints are linear with
//! `i128` coefficients, which keeps the power-of-two symmetry coefficients
//! (up to `2^(2n-1)`) exact at every supported size. Insertion order is the
//! export order, so a model always serializes to the same bytes.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("variable name {0:?} already declared")]
    DuplicateName(String),
    #[error("inverted bounds for {name:?}: [{lower}, {upper}]")]
    InvertedBounds { name: String, lower: i64, upper: i64 },
    #[error("binary variable {0:?} must have bounds [0, 1]")]
    NonBinaryBounds(String),
    #[error("constraint {tag:?} references undeclared variable id {id}")]
    UnknownVariable { tag: String, id: usize },
    #[error("assignment covers {got} of {expected} variables")]
    IncompleteAssignment { got: usize, expected: usize },
}

/// Handle to a declared variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub(crate) u32);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Binary,
    Integer,
}

#[derive(Debug, Clone)]
pub struct Variable {
    pub id: VarId,
    pub name: String,
    pub kind: VarKind,
    pub lower: i64,
    pub upper: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

impl Sense {
    fn holds(self, lhs: i128, rhs: i128) -> bool {
        match self {
            Sense::Le => lhs <= rhs,
            Sense::Eq => lhs == rhs,
            Sense::Ge => lhs >= rhs,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        }
    }
}

#[derive(Debug, Clone)]
pub struct LinearConstraint {
    pub terms: Vec<(i128, VarId)>,
    pub sense: Sense,
    pub rhs: i128,
    pub tag: String,
}

/// A frozen-order system of variables and linear constraints.
#[derive(Debug, Clone, Default)]
pub struct Model {
    variables: Vec<Variable>,
    constraints: Vec<LinearConstraint>,
    names: HashMap<String, VarId>,
}

/// Total assignment of integer values, indexed by [`VarId`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment(pub Vec<i64>);

impl Assignment {
    pub fn value(&self, id: VarId) -> i64 {
        self.0[id.index()]
    }
}

/// One violated constraint, reported with its tag so failures map back to
/// the condition that produced the row.
#[derive(Debug, Clone)]
pub struct Violation {
    pub constraint: usize,
    pub tag: String,
    pub lhs: i128,
    pub sense: Sense,
    pub rhs: i128,
}

#[derive(Debug, Clone)]
pub struct BoundsViolation {
    pub var: VarId,
    pub name: String,
    pub value: i64,
    pub lower: i64,
    pub upper: i64,
}

/// Outcome of checking a total assignment against a model.
#[derive(Debug, Clone, Default)]
pub struct EvaluationReport {
    pub violations: Vec<Violation>,
    pub bounds_violations: Vec<BoundsViolation>,
}

impl EvaluationReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty() && self.bounds_violations.is_empty()
    }
}

/// Structural problems found by [`Model::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelIssue {
    /// A constraint with no terms whose constant comparison is false.
    TriviallyInfeasible { constraint: usize, tag: String },
}

impl Model {
    pub fn new() -> Self {
        Model::default()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.names.get(name).copied()
    }

    pub fn add_variable(
        &mut self,
        name: impl Into<String>,
        kind: VarKind,
        lower: i64,
        upper: i64,
    ) -> Result<VarId, ModelError> {
        let name = name.into();
        if self.names.contains_key(&name) {
            return Err(ModelError::DuplicateName(name));
        }
        if lower > upper {
            return Err(ModelError::InvertedBounds { name, lower, upper });
        }
        if kind == VarKind::Binary && (lower, upper) != (0, 1) {
            return Err(ModelError::NonBinaryBounds(name));
        }
        let id = VarId(self.variables.len() as u32);
        self.names.insert(name.clone(), id);
        self.variables.push(Variable {
            id,
            name,
            kind,
            lower,
            upper,
        });
        Ok(id)
    }

    pub fn add_binary(&mut self, name: impl Into<String>) -> Result<VarId, ModelError> {
        self.add_variable(name, VarKind::Binary, 0, 1)
    }

    /// Appends a constraint and returns its index. Terms on the same
    /// variable are merged; zero coefficients are dropped.
    pub fn add_constraint(
        &mut self,
        terms: &[(i128, VarId)],
        sense: Sense,
        rhs: i128,
        tag: impl Into<String>,
    ) -> Result<usize, ModelError> {
        let tag = tag.into();
        let mut merged: Vec<(i128, VarId)> = Vec::with_capacity(terms.len());
        for &(coeff, id) in terms {
            if id.index() >= self.variables.len() {
                return Err(ModelError::UnknownVariable { tag, id: id.index() });
            }
            match merged.iter_mut().find(|(_, v)| *v == id) {
                Some(entry) => entry.0 += coeff,
                None => merged.push((coeff, id)),
            }
        }
        merged.retain(|&(coeff, _)| coeff != 0);
        let index = self.constraints.len();
        self.constraints.push(LinearConstraint {
            terms: merged,
            sense,
            rhs,
            tag,
        });
        Ok(index)
    }

    /// Checks a total assignment, reporting every violated constraint (with
    /// its tag) and every out-of-bounds value.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<EvaluationReport, ModelError> {
        if assignment.0.len() != self.variables.len() {
            return Err(ModelError::IncompleteAssignment {
                got: assignment.0.len(),
                expected: self.variables.len(),
            });
        }
        let mut report = EvaluationReport::default();
        for var in &self.variables {
            let value = assignment.value(var.id);
            if value < var.lower || value > var.upper {
                report.bounds_violations.push(BoundsViolation {
                    var: var.id,
                    name: var.name.clone(),
                    value,
                    lower: var.lower,
                    upper: var.upper,
                });
            }
        }
        for (index, c) in self.constraints.iter().enumerate() {
            let lhs: i128 = c
                .terms
                .iter()
                .map(|&(coeff, id)| coeff * i128::from(assignment.value(id)))
                .sum();
            if !c.sense.holds(lhs, c.rhs) {
                report.violations.push(Violation {
                    constraint: index,
                    tag: c.tag.clone(),
                    lhs,
                    sense: c.sense,
                    rhs: c.rhs,
                });
            }
        }
        Ok(report)
    }

    /// Flags structurally broken rows (currently: empty-term constraints
    /// whose constant comparison cannot hold).
    pub fn validate(&self) -> Vec<ModelIssue> {
        let mut issues = Vec::new();
        for (index, c) in self.constraints.iter().enumerate() {
            if c.terms.is_empty() && !c.sense.holds(0, c.rhs) {
                issues.push(ModelIssue::TriviallyInfeasible {
                    constraint: index,
                    tag: c.tag.clone(),
                });
            }
        }
        issues
    }

    /// Renders the model as LP-format text: a zero objective, tagged rows,
    /// bounds for integer variables, then `Binaries`/`Generals` sections.
    /// Byte output is deterministic for a given model.
    pub fn export_lp(&self) -> String {
        let mut out = String::new();
        out.push_str("Minimize\n obj: 0\nSubject To\n");
        let mut used_names: HashMap<&str, usize> = HashMap::new();
        for c in &self.constraints {
            let row_name = match used_names.get_mut(c.tag.as_str()) {
                Some(count) => {
                    *count += 1;
                    format!("{}_{}", c.tag, count)
                }
                None => {
                    used_names.insert(&c.tag, 1);
                    c.tag.clone()
                }
            };
            let mut line = format!(" {}:", row_name);
            if c.terms.is_empty() {
                line.push_str(" 0");
            }
            for (i, &(coeff, id)) in c.terms.iter().enumerate() {
                let name = &self.variables[id.index()].name;
                let magnitude = coeff.unsigned_abs();
                let sign = if coeff < 0 {
                    " -"
                } else if i == 0 {
                    ""
                } else {
                    " +"
                };
                if magnitude == 1 {
                    write!(line, "{} {}", sign, name).unwrap();
                } else {
                    write!(line, "{} {} {}", sign, magnitude, name).unwrap();
                }
                // LP readers dislike very long records; fold conservatively.
                if line.len() > 200 && i + 1 < c.terms.len() {
                    out.push_str(&line);
                    out.push('\n');
                    line = String::from("   ");
                }
            }
            write!(line, " {} {}", c.sense.symbol(), c.rhs).unwrap();
            out.push_str(&line);
            out.push('\n');
        }
        out.push_str("Bounds\n");
        for var in &self.variables {
            if var.kind == VarKind::Integer {
                writeln!(out, " {} <= {} <= {}", var.lower, var.name, var.upper).unwrap();
            }
        }
        let binaries: Vec<&str> = self
            .variables
            .iter()
            .filter(|v| v.kind == VarKind::Binary)
            .map(|v| v.name.as_str())
            .collect();
        let generals: Vec<&str> = self
            .variables
            .iter()
            .filter(|v| v.kind == VarKind::Integer)
            .map(|v| v.name.as_str())
            .collect();
        for (section, names) in [("Binaries", binaries), ("Generals", generals)] {
            out.push_str(section);
            out.push('\n');
            let mut line = String::new();
            for name in names {
                if line.len() + name.len() + 1 > 200 {
                    out.push_str(&line);
                    out.push('\n');
                    line.clear();
                }
                line.push(' ');
                line.push_str(name);
            }
            if !line.is_empty() {
                out.push_str(&line);
                out.push('\n');
            }
        }
        out.push_str("End\n");
        out
    }
}
