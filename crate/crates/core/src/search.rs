//! Exhaustive feasible-solution enumeration: depth-first search over the
//! integer domains with bounds-consistency propagation on the linear
//! constraints.
//!
//! The search visits every feasible total assignment exactly once. There is
//! no learning and no restarts; exact counting needs the whole tree anyway.
//! Propagation only ever *narrows* domains using interval reasoning, so it
//! can never lose a feasible completion, and every emitted solution is
//! re-validated against the full model as a certificate.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::encodings::{build_space, EncodeError, SpaceSpec};
use crate::graph::{enumerate_graphs, GraphError};
use crate::model::{Assignment, Model, ModelError, Sense, VarId};
use crate::symmetry::{check_indexing, SymmetryError};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("solution limit must be positive")]
    ZeroSolutionLimit,
    #[error("search produced an assignment the model rejects (tag {0}); this is a bug")]
    BadCertificate(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

/// Order in which unfixed variables are branched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BranchOrder {
    /// Model declaration order.
    Declaration,
    /// All adjacency variables first (any copy), then the rest in
    /// declaration order. The auxiliary variables are functions of the
    /// adjacency block, so propagation resolves most of them once the
    /// adjacency is decided.
    #[default]
    AdjacencyFirst,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Stop after this many solutions (the pool-style cap).
    pub solution_limit: u64,
    pub time_limit: Option<Duration>,
    pub branch_order: BranchOrder,
    /// Count without materializing assignments.
    pub count_only: bool,
    /// Worker threads; 1 keeps the deterministic sequential order.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            solution_limit: 1_000_000,
            time_limit: None,
            branch_order: BranchOrder::default(),
            count_only: false,
            jobs: 1,
        }
    }
}

impl SearchOptions {
    pub fn counting() -> Self {
        SearchOptions {
            count_only: true,
            ..SearchOptions::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Complete,
    HitSolutionLimit,
    HitTimeLimit,
}

impl SearchStatus {
    pub fn is_complete(self) -> bool {
        self == SearchStatus::Complete
    }
}

/// A feasible total assignment, re-checked against the model on emission.
#[derive(Debug, Clone)]
pub struct Solution {
    pub assignment: Assignment,
}

#[derive(Debug)]
pub struct SearchResult {
    pub count: u64,
    /// Empty when counting only. Sequential search yields deterministic
    /// order; parallel search does not.
    pub solutions: Vec<Solution>,
    pub status: SearchStatus,
}

/// Per-variable interval domains.
#[derive(Debug, Clone)]
pub struct DomainStore {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl DomainStore {
    pub fn from_model(model: &Model) -> Self {
        DomainStore {
            lo: model.variables().iter().map(|v| v.lower).collect(),
            hi: model.variables().iter().map(|v| v.upper).collect(),
        }
    }

    pub fn lower(&self, v: VarId) -> i64 {
        self.lo[v.index()]
    }

    pub fn upper(&self, v: VarId) -> i64 {
        self.hi[v.index()]
    }

    pub fn is_fixed(&self, v: VarId) -> bool {
        self.lo[v.index()] == self.hi[v.index()]
    }

    /// Narrows a domain directly (typically to assert a partial assignment).
    pub fn assign(&mut self, v: VarId, value: i64) {
        self.lo[v.index()] = value;
        self.hi[v.index()] = value;
    }
}

/// Result of running propagation to fixpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropagationOutcome {
    /// Domains are bounds-consistent; possibly narrower than on entry.
    Stable,
    /// Some domain emptied; the reported constraint cannot be satisfied.
    Conflict { constraint: usize, tag: String },
}

/// Applies `fixed`, then tightens every domain to bounds consistency.
/// A conflict is a normal return, not an error.
pub fn propagate(
    model: &Model,
    fixed: &[(VarId, i64)],
    domains: &mut DomainStore,
) -> PropagationOutcome {
    let mut engine = Engine::new(model);
    engine.lo.clone_from(&domains.lo);
    engine.hi.clone_from(&domains.hi);
    for &(v, value) in fixed {
        if value < engine.lo[v.index()] || value > engine.hi[v.index()] {
            return PropagationOutcome::Conflict {
                constraint: usize::MAX,
                tag: format!("fix {} = {value}", model.variables()[v.index()].name),
            };
        }
        engine.lo[v.index()] = value;
        engine.hi[v.index()] = value;
    }
    match engine.propagate_all() {
        Ok(()) => {
            domains.lo.clone_from(&engine.lo);
            domains.hi.clone_from(&engine.hi);
            PropagationOutcome::Stable
        }
        Err(c) => PropagationOutcome::Conflict {
            constraint: c,
            tag: model.constraints()[c].tag.clone(),
        },
    }
}

/// Visits every feasible total assignment exactly once.
pub fn enumerate_feasible(
    model: &Model,
    options: &SearchOptions,
) -> Result<SearchResult, SearchError> {
    if options.solution_limit == 0 {
        return Err(SearchError::ZeroSolutionLimit);
    }
    let order = branch_order(model, options.branch_order);
    let deadline = options.time_limit.map(|limit| Instant::now() + limit);

    if options.jobs > 1 {
        return enumerate_parallel(model, options, &order, deadline);
    }

    let mut engine = Engine::new(model);
    let mut out = Collector {
        model,
        count: 0,
        solutions: Vec::new(),
        status: SearchStatus::Complete,
        limit: options.solution_limit,
        count_only: options.count_only,
        deadline,
        tick: 0,
        stop_flag: None,
        shared_count: None,
    };
    if engine.propagate_all().is_ok() {
        engine.dfs(&order, 0, &mut out)?;
    }
    Ok(SearchResult {
        count: out.count,
        solutions: out.solutions,
        status: out.status,
    })
}

/// Root splitting: fix the leading branch variables to every combination and
/// farm the disjoint subtrees out to worker threads.
fn enumerate_parallel(
    model: &Model,
    options: &SearchOptions,
    order: &[u32],
    deadline: Option<Instant>,
) -> Result<SearchResult, SearchError> {
    let mut root = Engine::new(model);
    if root.propagate_all().is_err() {
        return Ok(SearchResult {
            count: 0,
            solutions: Vec::new(),
            status: SearchStatus::Complete,
        });
    }

    // Choose a prefix of branch variables whose assignments give a few
    // subproblems per worker.
    let target = options.jobs * 8;
    let mut prefix = Vec::new();
    let mut combinations: usize = 1;
    for &v in order {
        if combinations >= target || prefix.len() >= 16 {
            break;
        }
        let width = (root.hi[v as usize] - root.lo[v as usize] + 1) as usize;
        if width > 1 {
            combinations = combinations.saturating_mul(width);
            prefix.push(v);
        }
    }

    let mut tasks: Vec<Vec<(u32, i64)>> = vec![Vec::new()];
    for &v in &prefix {
        let mut next = Vec::new();
        for task in &tasks {
            for value in root.lo[v as usize]..=root.hi[v as usize] {
                let mut t = task.clone();
                t.push((v, value));
                next.push(t);
            }
        }
        tasks = next;
    }

    let queue = Mutex::new(VecDeque::from(tasks));
    let total = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let hit_limit = AtomicBool::new(false);
    let hit_time = AtomicBool::new(false);
    let solutions = Mutex::new(Vec::new());
    let failure: Mutex<Option<SearchError>> = Mutex::new(None);

    std::thread::scope(|scope| {
        for _ in 0..options.jobs {
            scope.spawn(|| {
                loop {
                    if stop.load(AtomicOrdering::Relaxed) {
                        return;
                    }
                    let task = match queue.lock().unwrap().pop_front() {
                        Some(t) => t,
                        None => return,
                    };
                    let mut engine = Engine::new(model);
                    let mut feasible = engine.propagate_all().is_ok();
                    if feasible {
                        for &(v, value) in &task {
                            if value < engine.lo[v as usize]
                                || value > engine.hi[v as usize]
                                || engine.fix(v, value).is_err()
                                || engine.flush().is_err()
                            {
                                engine.clear_queue();
                                feasible = false;
                                break;
                            }
                        }
                    }
                    if !feasible {
                        continue;
                    }
                    let mut out = Collector {
                        model,
                        count: 0,
                        solutions: Vec::new(),
                        status: SearchStatus::Complete,
                        limit: options.solution_limit,
                        count_only: options.count_only,
                        deadline,
                        tick: 0,
                        stop_flag: Some(&stop),
                        shared_count: Some(&total),
                    };
                    match engine.dfs(order, 0, &mut out) {
                        Ok(()) => {}
                        Err(e) => {
                            *failure.lock().unwrap() = Some(e);
                            stop.store(true, AtomicOrdering::Relaxed);
                            return;
                        }
                    }
                    match out.status {
                        SearchStatus::HitSolutionLimit => {
                            hit_limit.store(true, AtomicOrdering::Relaxed);
                            stop.store(true, AtomicOrdering::Relaxed);
                        }
                        SearchStatus::HitTimeLimit => {
                            hit_time.store(true, AtomicOrdering::Relaxed);
                            stop.store(true, AtomicOrdering::Relaxed);
                        }
                        SearchStatus::Complete => {}
                    }
                    if !options.count_only {
                        solutions.lock().unwrap().append(&mut out.solutions);
                    }
                }
            });
        }
    });

    if let Some(e) = failure.into_inner().unwrap() {
        return Err(e);
    }
    let status = if hit_limit.into_inner() {
        SearchStatus::HitSolutionLimit
    } else if hit_time.into_inner() {
        SearchStatus::HitTimeLimit
    } else {
        SearchStatus::Complete
    };
    Ok(SearchResult {
        count: total.into_inner(),
        solutions: solutions.into_inner().unwrap(),
        status,
    })
}

fn branch_order(model: &Model, order: BranchOrder) -> Vec<u32> {
    let ids = || (0..model.num_variables() as u32).collect::<Vec<u32>>();
    match order {
        BranchOrder::Declaration => ids(),
        BranchOrder::AdjacencyFirst => {
            let is_adjacency = |idx: u32| {
                let name = model.variables()[idx as usize].name.as_str();
                let stripped = name
                    .strip_prefix("U_")
                    .or_else(|| name.strip_prefix("T_"))
                    .unwrap_or(name);
                stripped.starts_with("A_")
            };
            let mut order = ids();
            order.sort_by_key(|&idx| !is_adjacency(idx));
            order
        }
    }
}

struct Collector<'a> {
    model: &'a Model,
    count: u64,
    solutions: Vec<Solution>,
    status: SearchStatus,
    limit: u64,
    count_only: bool,
    deadline: Option<Instant>,
    tick: u32,
    stop_flag: Option<&'a AtomicBool>,
    shared_count: Option<&'a AtomicU64>,
}

impl Collector<'_> {
    /// True means stop searching.
    fn emit(&mut self, lo: &[i64]) -> Result<bool, SearchError> {
        let assignment = Assignment(lo.to_vec());
        let report = self.model.evaluate(&assignment)?;
        if !report.is_feasible() {
            let tag = report
                .violations
                .first()
                .map(|v| v.tag.clone())
                .unwrap_or_else(|| "bounds".into());
            return Err(SearchError::BadCertificate(tag));
        }
        let reached_limit = match self.shared_count {
            Some(total) => {
                let prev = total.fetch_add(1, AtomicOrdering::Relaxed);
                if prev >= self.limit {
                    // Another worker already filled the pool; drop this one.
                    total.fetch_sub(1, AtomicOrdering::Relaxed);
                    self.status = SearchStatus::HitSolutionLimit;
                    return Ok(true);
                }
                prev + 1 >= self.limit
            }
            None => self.count + 1 >= self.limit,
        };
        self.count += 1;
        if !self.count_only {
            self.solutions.push(Solution { assignment });
        }
        if reached_limit {
            self.status = SearchStatus::HitSolutionLimit;
            return Ok(true);
        }
        Ok(false)
    }

    /// Periodic deadline / cross-thread stop check.
    fn should_stop(&mut self) -> bool {
        self.tick = self.tick.wrapping_add(1);
        if self.tick & 0x3ff != 0 {
            return false;
        }
        if let Some(flag) = self.stop_flag {
            if flag.load(AtomicOrdering::Relaxed) {
                // Another worker's outcome decides the status.
                return true;
            }
        }
        if let Some(deadline) = self.deadline {
            if Instant::now() >= deadline {
                self.status = SearchStatus::HitTimeLimit;
                return true;
            }
        }
        false
    }
}

/// The propagation engine: interval domains, a constraint queue, and a trail
/// for chronological backtracking.
struct Engine<'a> {
    model: &'a Model,
    /// var -> indices of constraints mentioning it
    watchers: Vec<Vec<u32>>,
    lo: Vec<i64>,
    hi: Vec<i64>,
    queue: VecDeque<u32>,
    queued: Vec<bool>,
    trail: Vec<(u32, i64, i64)>,
}

impl<'a> Engine<'a> {
    fn new(model: &'a Model) -> Self {
        let mut watchers = vec![Vec::new(); model.num_variables()];
        for (c_idx, c) in model.constraints().iter().enumerate() {
            for &(_, v) in &c.terms {
                watchers[v.index()].push(c_idx as u32);
            }
        }
        Engine {
            model,
            watchers,
            lo: model.variables().iter().map(|v| v.lower).collect(),
            hi: model.variables().iter().map(|v| v.upper).collect(),
            queue: VecDeque::new(),
            queued: vec![false; model.constraints().len()],
            trail: Vec::new(),
        }
    }

    fn narrow(&mut self, v: u32, new_lo: i64, new_hi: i64) -> Result<bool, u32> {
        let (old_lo, old_hi) = (self.lo[v as usize], self.hi[v as usize]);
        let lo = new_lo.max(old_lo);
        let hi = new_hi.min(old_hi);
        if lo == old_lo && hi == old_hi {
            return Ok(false);
        }
        self.trail.push((v, old_lo, old_hi));
        self.lo[v as usize] = lo;
        self.hi[v as usize] = hi;
        if lo > hi {
            return Err(v);
        }
        for i in 0..self.watchers[v as usize].len() {
            let c = self.watchers[v as usize][i];
            if !self.queued[c as usize] {
                self.queued[c as usize] = true;
                self.queue.push_back(c);
            }
        }
        Ok(true)
    }

    fn fix(&mut self, v: u32, value: i64) -> Result<(), u32> {
        self.narrow(v, value, value).map(|_| ())
    }

    /// Seeds the queue with every constraint and runs to fixpoint.
    fn propagate_all(&mut self) -> Result<(), usize> {
        for c in 0..self.model.constraints().len() as u32 {
            if !self.queued[c as usize] {
                self.queued[c as usize] = true;
                self.queue.push_back(c);
            }
        }
        self.flush()
    }

    /// Runs the queue to fixpoint. On conflict, returns the offending
    /// constraint and leaves the queue clean.
    fn flush(&mut self) -> Result<(), usize> {
        while let Some(c_idx) = self.queue.pop_front() {
            self.queued[c_idx as usize] = false;
            if let Err(()) = self.revise(c_idx) {
                self.clear_queue();
                return Err(c_idx as usize);
            }
        }
        Ok(())
    }

    fn clear_queue(&mut self) {
        while let Some(c) = self.queue.pop_front() {
            self.queued[c as usize] = false;
        }
    }

    /// Bounds consistency on one constraint: tighten each variable using the
    /// extreme activity of the remaining terms.
    fn revise(&mut self, c_idx: u32) -> Result<(), ()> {
        let model: &'a Model = self.model;
        let c = &model.constraints()[c_idx as usize];
        let (sense, rhs) = (c.sense, c.rhs);

        let mut min_act: i128 = 0;
        let mut max_act: i128 = 0;
        for &(coeff, v) in &c.terms {
            let (lo, hi) = (self.lo[v.index()] as i128, self.hi[v.index()] as i128);
            if coeff >= 0 {
                min_act += coeff * lo;
                max_act += coeff * hi;
            } else {
                min_act += coeff * hi;
                max_act += coeff * lo;
            }
        }
        let check_upper = sense != Sense::Ge; // lhs <= rhs must be attainable
        let check_lower = sense != Sense::Le; // lhs >= rhs must be attainable
        if check_upper && min_act > rhs {
            return Err(());
        }
        if check_lower && max_act < rhs {
            return Err(());
        }

        for &(coeff, v) in &c.terms {
            let idx = v.index();
            let (lo, hi) = (self.lo[idx] as i128, self.hi[idx] as i128);
            let (term_min, term_max) = if coeff >= 0 {
                (coeff * lo, coeff * hi)
            } else {
                (coeff * hi, coeff * lo)
            };
            let mut new_lo = lo;
            let mut new_hi = hi;
            if check_upper {
                // coeff * x <= rhs - (min_act - term_min)
                let slack = rhs - (min_act - term_min);
                if coeff > 0 {
                    new_hi = new_hi.min(div_floor(slack, coeff));
                } else if coeff < 0 {
                    new_lo = new_lo.max(div_ceil(slack, coeff));
                }
            }
            if check_lower {
                // coeff * x >= rhs - (max_act - term_max)
                let need = rhs - (max_act - term_max);
                if coeff > 0 {
                    new_lo = new_lo.max(div_ceil(need, coeff));
                } else if coeff < 0 {
                    new_hi = new_hi.min(div_floor(need, coeff));
                }
            }
            if new_lo > lo || new_hi < hi {
                let clamped_lo = new_lo.max(i64::MIN as i128) as i64;
                let clamped_hi = new_hi.min(i64::MAX as i128) as i64;
                match self.narrow(v.0, clamped_lo, clamped_hi) {
                    Ok(_) => {}
                    Err(_) => return Err(()),
                }
            }
        }
        Ok(())
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (v, lo, hi) = self.trail.pop().expect("trail entries above the mark");
            self.lo[v as usize] = lo;
            self.hi[v as usize] = hi;
        }
    }

    fn dfs(&mut self, order: &[u32], from: usize, out: &mut Collector) -> Result<(), SearchError> {
        if out.should_stop() {
            return Ok(());
        }
        // Find the next unfixed variable.
        let mut pos = from;
        while pos < order.len() {
            let v = order[pos] as usize;
            if self.lo[v] != self.hi[v] {
                break;
            }
            pos += 1;
        }
        if pos == order.len() {
            // All fixed: a leaf. `emit` flips the status when a limit hits,
            // which unwinds the recursion.
            out.emit(&self.lo)?;
            return Ok(());
        }
        let v = order[pos];
        let (lo, hi) = (self.lo[v as usize], self.hi[v as usize]);
        for value in lo..=hi {
            if out.status != SearchStatus::Complete {
                return Ok(());
            }
            if out.should_stop() {
                return Ok(());
            }
            let mark = self.trail.len();
            let feasible = match self.fix(v, value) {
                Ok(()) => self.flush().is_ok(),
                Err(_) => {
                    self.clear_queue();
                    false
                }
            };
            if feasible {
                self.dfs(order, pos + 1, out)?;
            }
            self.undo_to(mark);
        }
        Ok(())
    }
}

fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    let r = a % b;
    if r != 0 && (r < 0) != (b < 0) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    let q = a / b;
    let r = a % b;
    if r != 0 && (r < 0) == (b < 0) {
        q + 1
    } else {
        q
    }
}

/// Dual-route counting: the model count and the brute-force graph count for
/// the same space, which must agree when the search completes.
#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub spec: SpaceSpec,
    pub model_count: u64,
    pub oracle_count: u64,
    pub status: SearchStatus,
}

impl EquivalenceReport {
    pub fn matches(&self) -> bool {
        self.status.is_complete() && self.model_count == self.oracle_count
    }
}

/// Counts the space's feasible solutions and, independently, its members by
/// brute-force enumeration (filtered by the scheme's indexing predicate when
/// one is set).
pub fn count_equivalence(
    spec: &SpaceSpec,
    options: &SearchOptions,
) -> Result<EquivalenceReport, SearchError> {
    let space = build_space(spec)?;
    let mut opts = options.clone();
    opts.count_only = true;
    let result = enumerate_feasible(space.model(), &opts)?;

    let mut oracle_count = 0u64;
    for g in enumerate_graphs(spec.family, spec.n0, spec.n)? {
        if check_indexing(&g, spec.symmetry)? {
            oracle_count += 1;
        }
    }
    Ok(EquivalenceReport {
        spec: *spec,
        model_count: result.count,
        oracle_count,
        status: result.status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::{encode_general, Flavor};
    use crate::graph::SpaceFamily;
    use crate::model::VarKind;

    fn count(spec: &SpaceSpec) -> u64 {
        let space = build_space(spec).unwrap();
        enumerate_feasible(space.model(), &SearchOptions::counting())
            .unwrap()
            .count
    }

    #[test]
    fn general_encoding_counts_all_digraphs() {
        assert_eq!(count(&SpaceSpec::new(SpaceFamily::AllDirected, 3, 3)), 64);
        assert_eq!(count(&SpaceSpec::new(SpaceFamily::AllDirected, 1, 2)), 5);
    }

    #[test]
    fn trivially_infeasible_model_counts_zero() {
        let mut m = Model::new();
        m.add_constraint(&[], Sense::Ge, 1, "absurd").unwrap();
        let result = enumerate_feasible(&m, &SearchOptions::default()).unwrap();
        assert_eq!(result.count, 0);
        assert!(result.status.is_complete());
    }

    #[test]
    fn propagate_pins_distance_when_edge_is_fixed() {
        let (model, vars) = encode_general(3, 3).unwrap();
        let gv = vars.as_general().unwrap();
        let mut domains = DomainStore::from_model(&model);
        let outcome = propagate(&model, &[(gv.a(0, 1), 1)], &mut domains);
        assert_eq!(outcome, PropagationOutcome::Stable);
        assert_eq!(domains.lower(gv.d(0, 1)), 1);
        assert_eq!(domains.upper(gv.d(0, 1)), 1);
        assert_eq!(domains.lower(gv.r(0, 1)), 1);
    }

    #[test]
    fn propagate_initializes_nonexistent_nodes() {
        let (model, vars) = encode_general(1, 3).unwrap();
        let gv = vars.as_general().unwrap();
        let mut domains = DomainStore::from_model(&model);
        let outcome = propagate(&model, &[(gv.a(1, 1), 0)], &mut domains);
        assert_eq!(outcome, PropagationOutcome::Stable);
        for v in [1, 2] {
            assert_eq!(domains.upper(gv.r(0, v)), 0);
            assert_eq!(domains.lower(gv.d(0, v)), 3);
            assert_eq!(domains.upper(gv.r(v, 0)), 0);
        }
        // Prefix occupancy forces the higher diagonal to zero too.
        assert_eq!(domains.upper(gv.a(2, 2)), 0);
    }

    #[test]
    fn propagate_without_fixing_anything_is_stable() {
        let (model, _) = encode_general(2, 3).unwrap();
        let mut domains = DomainStore::from_model(&model);
        assert_eq!(propagate(&model, &[], &mut domains), PropagationOutcome::Stable);
    }

    #[test]
    fn branch_orders_agree_on_counts() {
        for family in [SpaceFamily::ConnectedUndirected, SpaceFamily::StDag] {
            let spec = SpaceSpec::new(family, 3, 3);
            let space = build_space(&spec).unwrap();
            let mut counts = Vec::new();
            for order in [BranchOrder::Declaration, BranchOrder::AdjacencyFirst] {
                let opts = SearchOptions {
                    branch_order: order,
                    ..SearchOptions::counting()
                };
                counts.push(enumerate_feasible(space.model(), &opts).unwrap().count);
            }
            assert_eq!(counts[0], counts[1]);
        }
    }

    #[test]
    fn solution_limit_is_respected() {
        let spec = SpaceSpec::new(SpaceFamily::AllDirected, 3, 3);
        let space = build_space(&spec).unwrap();
        let opts = SearchOptions {
            solution_limit: 10,
            ..SearchOptions::default()
        };
        let result = enumerate_feasible(space.model(), &opts).unwrap();
        assert_eq!(result.count, 10);
        assert_eq!(result.status, SearchStatus::HitSolutionLimit);
        assert_eq!(result.solutions.len(), 10);
    }

    #[test]
    fn emitted_solutions_decode_to_distinct_family_members() {
        let spec = SpaceSpec::new(SpaceFamily::ConnectedUndirected, 3, 3);
        let space = build_space(&spec).unwrap();
        let result = enumerate_feasible(space.model(), &SearchOptions::default()).unwrap();
        assert_eq!(result.count, 4);
        let mut seen = std::collections::HashSet::new();
        for sol in &result.solutions {
            let g = space.solution_to_graph(&sol.assignment).unwrap();
            assert!(SpaceFamily::ConnectedUndirected.contains(&g).unwrap());
            assert!(seen.insert(g.edges()));
        }
    }

    #[test]
    fn propagation_matches_propagation_free_search_on_small_models() {
        // Exhaustive assignment walk over a model small enough to brute
        // force: the general encoding over two slots (20 variables).
        let (model, _) = encode_general(1, 2).unwrap();
        let n = model.num_variables();
        let mut brute = 0u64;
        let widths: Vec<i64> = model.variables().iter().map(|v| v.upper - v.lower + 1).collect();
        let total: i64 = widths.iter().product();
        for code in 0..total {
            let mut rem = code;
            let mut values = Vec::with_capacity(n);
            for (var, w) in model.variables().iter().zip(&widths) {
                values.push(var.lower + rem % w);
                rem /= w;
            }
            if model.evaluate(&Assignment(values)).unwrap().is_feasible() {
                brute += 1;
            }
        }
        let searched = enumerate_feasible(&model, &SearchOptions::counting()).unwrap();
        assert_eq!(brute, searched.count);
        assert_eq!(brute, 5);
    }

    #[test]
    fn parallel_counts_match_sequential() {
        let spec = SpaceSpec::new(SpaceFamily::StDag, 4, 4).with_flavor(Flavor::General);
        let space = build_space(&spec).unwrap();
        let sequential = enumerate_feasible(space.model(), &SearchOptions::counting())
            .unwrap()
            .count;
        let opts = SearchOptions {
            jobs: 4,
            ..SearchOptions::counting()
        };
        let parallel = enumerate_feasible(space.model(), &opts).unwrap().count;
        assert_eq!(sequential, parallel);
        assert_eq!(sequential, 216);
    }

    #[test]
    fn simplified_encoding_counts_reach_from_source() {
        // Feasible solutions of the bare simplified encoding are exactly the
        // digraphs where node 0 reaches every existing node.
        use crate::encodings::encode_simplified;
        for (n0, n) in [(3usize, 3usize), (1, 3)] {
            let (model, _) = encode_simplified(n0, n).unwrap();
            let searched = enumerate_feasible(&model, &SearchOptions::counting()).unwrap();
            let brute = crate::graph::enumerate_graphs(SpaceFamily::AllDirected, n0, n)
                .unwrap()
                .filter(|g| {
                    let t = g.path_tables();
                    (0..g.n_exist()).all(|v| t.reach(0, v))
                })
                .count() as u64;
            assert_eq!(searched.count, brute, "n0={n0} n={n}");
        }
    }

    #[test]
    fn smaller_index_connectivity_restriction() {
        use crate::encodings::{apply_restriction, Restriction};
        let spec = SpaceSpec::new(SpaceFamily::ConnectedUndirected, 3, 3)
            .with_flavor(Flavor::General);
        let mut space = build_space(&spec).unwrap();
        let primary = space.primary().clone();
        apply_restriction(
            space.model_mut(),
            &primary,
            Restriction::SmallerIndexConnectivity,
            "",
        )
        .unwrap();
        let restricted = enumerate_feasible(space.model(), &SearchOptions::counting())
            .unwrap()
            .count;
        let brute = crate::graph::enumerate_graphs(SpaceFamily::ConnectedUndirected, 3, 3)
            .unwrap()
            .filter(|g| (1..3).all(|v| (0..v).any(|u| g.has_edge(u, v))))
            .count() as u64;
        assert_eq!(restricted, brute);
        assert_eq!(restricted, 3);
    }

    #[test]
    fn count_equivalence_on_st_dags() {
        let spec = SpaceSpec::new(SpaceFamily::StDag, 4, 4);
        let report = count_equivalence(&spec, &SearchOptions::counting()).unwrap();
        assert_eq!(report.model_count, 216);
        assert_eq!(report.oracle_count, 216);
        assert!(report.matches());
    }

    #[test]
    fn general_flavor_agrees_with_simplified_on_connected_graphs() {
        for n in 3..=5usize {
            let general = count(
                &SpaceSpec::new(SpaceFamily::ConnectedUndirected, n, n)
                    .with_flavor(Flavor::General),
            );
            let simplified = count(&SpaceSpec::new(SpaceFamily::ConnectedUndirected, n, n));
            assert_eq!(general, simplified, "n={n}");
        }
        assert_eq!(
            count(
                &SpaceSpec::new(SpaceFamily::ConnectedUndirected, 5, 5)
                    .with_flavor(Flavor::General)
            ),
            728
        );
    }

    #[test]
    fn unbounded_like_domains_still_enumerate() {
        let mut m = Model::new();
        let x = m.add_variable("x", VarKind::Integer, -2, 2).unwrap();
        let y = m.add_variable("y", VarKind::Integer, 0, 4).unwrap();
        m.add_constraint(&[(1, x), (1, y)], Sense::Eq, 2, "sum").unwrap();
        let result = enumerate_feasible(&m, &SearchOptions::default()).unwrap();
        assert_eq!(result.count, 5); // x in [-2, 2], y = 2 - x
    }
}
