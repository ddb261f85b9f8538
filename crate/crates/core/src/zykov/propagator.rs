//! Zykov-tree reasoning attached to the CDCL solver.
//!
//! Variables `e_uv` say whether `u` and `v` share a color. A true `e_uv`
//! merges the bags of `u` and `v`, a false one adds an edge between them in
//! `H`. Transitivity is propagated from the bags: every implied literal is
//! justified by a three-literal clause over a pivot vertex. With a color
//! budget `k` active (its selector `s_k` false), clique and Mycielskian
//! bounds on `H` prune nodes that need more than `k` colors.

use std::collections::{BTreeSet, HashSet, VecDeque};

use log::trace;
use serde::Serialize;

use crate::bitset;
use crate::bounds::{
    greedy_clique, mnts_clique, mycielskian_bound, BoundWitness, Clique, MntsParams, VertexOrder,
};
use crate::graph::Graph;
use crate::sat::{ExternalPropagator, Lit, ModelCheck, Var};

use super::{EdgeVarMap, MergeState};

/// Witnesses with at most this many vertices are kept for offline checks.
pub const WITNESS_LOG_MAX_VERTICES: usize = 12;
const WITNESS_LOG_CAP: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DecisionStrategy {
    /// Leave decisions to the solver.
    Solver,
    /// Merge a vertex outside the current clique into a clique member.
    Clique,
}

#[derive(Clone, Debug)]
pub struct ZykovConfig {
    /// Clique bounds, prune clauses and positive pruning.
    pub pruning: bool,
    /// Tabu clique search when the greedy clique does not exceed `k`.
    pub mnts: bool,
    pub mycielskian: bool,
    pub positive_pruning: bool,
    pub dominated_hints: bool,
    pub decisions: DecisionStrategy,
    /// Vertex order for the greedy clique.
    pub order: VertexOrder,
    /// Clique of the input graph, offered first to the greedy clique.
    pub root_clique: Vec<usize>,
    pub seed: u64,
    pub check_invariants: bool,
}

impl ZykovConfig {
    pub fn new(n: usize) -> Self {
        ZykovConfig {
            pruning: true,
            mnts: true,
            mycielskian: true,
            positive_pruning: true,
            dominated_hints: true,
            decisions: DecisionStrategy::Solver,
            order: (0..n).collect(),
            root_clique: Vec::new(),
            seed: 0,
            check_invariants: false,
        }
    }

    /// Transitivity only: no bounds, no hints.
    pub fn transitivity_only(n: usize) -> Self {
        ZykovConfig {
            pruning: false,
            mnts: false,
            mycielskian: false,
            positive_pruning: false,
            dominated_hints: false,
            ..ZykovConfig::new(n)
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ZykovStats {
    pub merges: u64,
    pub separations: u64,
    pub transitivity_queued: u64,
    pub reasons: u64,
    pub checks: u64,
    pub clique_prunes: u64,
    pub mnts_calls: u64,
    pub mnts_prunes: u64,
    pub mycielski_calls: u64,
    pub mycielski_prunes: u64,
    pub positive_prunes: u64,
    pub dominated_hints: u64,
    pub clique_decisions: u64,
    pub model_refutations: u64,
    pub max_clique: usize,
    /// Invariant failures. All stay zero in a correct run.
    pub double_processing: u64,
    pub backtrack_mismatches: u64,
    pub prune_not_falsified: u64,
    pub witness_failures: u64,
    pub model_inconsistencies: u64,
}

impl ZykovStats {
    pub fn absorb(&mut self, other: &ZykovStats) {
        self.merges += other.merges;
        self.separations += other.separations;
        self.transitivity_queued += other.transitivity_queued;
        self.reasons += other.reasons;
        self.checks += other.checks;
        self.clique_prunes += other.clique_prunes;
        self.mnts_calls += other.mnts_calls;
        self.mnts_prunes += other.mnts_prunes;
        self.mycielski_calls += other.mycielski_calls;
        self.mycielski_prunes += other.mycielski_prunes;
        self.positive_prunes += other.positive_prunes;
        self.dominated_hints += other.dominated_hints;
        self.clique_decisions += other.clique_decisions;
        self.model_refutations += other.model_refutations;
        self.double_processing += other.double_processing;
        self.backtrack_mismatches += other.backtrack_mismatches;
        self.prune_not_falsified += other.prune_not_falsified;
        self.witness_failures += other.witness_failures;
        self.model_inconsistencies += other.model_inconsistencies;
        self.max_clique = self.max_clique.max(other.max_clique);
    }

    pub fn violations(&self) -> u64 {
        self.double_processing
            + self.backtrack_mismatches
            + self.prune_not_falsified
            + self.witness_failures
            + self.model_inconsistencies
    }
}

/// A bound witness kept for offline checking: the witness graph renumbered
/// to `0..n` and the bound it claims.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LoggedWitness {
    pub graph_edges: Vec<(usize, usize)>,
    pub num_vertices: usize,
    pub bound: usize,
}

impl LoggedWitness {
    pub fn graph(&self) -> Graph {
        Graph::from_edges(self.num_vertices, &self.graph_edges).expect("logged witness is simple")
    }
}

#[derive(Clone, Debug)]
enum Why {
    /// The propagated literal follows from two true literals; the second is
    /// absent when it is a constant (an edge of the input graph).
    Pair(Lit, Option<Lit>),
    Clause(Vec<Lit>),
}

#[derive(Clone, Copy, Debug)]
struct Budget {
    k: usize,
    selector: Var,
}

pub struct ZykovPropagator {
    cfg: ZykovConfig,
    map: EdgeVarMap,
    state: MergeState,
    level: usize,
    /// Per e-variable: 0 unknown, 1 merged, -1 separated.
    values: Vec<i8>,
    assigned: Vec<usize>,
    assigned_lim: Vec<usize>,
    queue: VecDeque<Lit>,
    queued: Vec<bool>,
    queued_log: Vec<(usize, usize)>,
    why: Vec<Option<Why>>,
    handed_out: bool,
    budget: Option<Budget>,
    budget_off_level: Option<usize>,
    dirty: bool,
    backtracked: bool,
    pending: Option<Vec<Lit>>,
    best_clique: Vec<usize>,
    mnts_counter: u64,
    grown: Vec<u64>,
    hint_pool: BTreeSet<(usize, usize)>,
    snapshots: Vec<u64>,
    witnesses: Vec<LoggedWitness>,
    witness_seen: HashSet<LoggedWitness>,
    stats: ZykovStats,
}

impl ZykovPropagator {
    /// `map` must be built on `g`.
    pub fn new(g: &Graph, map: EdgeVarMap, cfg: ZykovConfig) -> Self {
        let n = g.num_vertices();
        assert_eq!(map.num_vertices(), n);
        let m = map.len();
        let mut grown = vec![0u64; bitset::words_for(n)];
        for v in 0..n {
            bitset::set(&mut grown, v);
        }
        ZykovPropagator {
            cfg,
            state: MergeState::new(g),
            level: 0,
            values: vec![0; m],
            assigned: Vec::new(),
            assigned_lim: Vec::new(),
            queue: VecDeque::new(),
            queued: vec![false; m],
            queued_log: Vec::new(),
            why: vec![None; m],
            handed_out: false,
            budget: None,
            budget_off_level: None,
            dirty: true,
            backtracked: true,
            pending: None,
            best_clique: Vec::new(),
            mnts_counter: 0,
            grown,
            hint_pool: BTreeSet::new(),
            snapshots: Vec::new(),
            witnesses: Vec::new(),
            witness_seen: HashSet::new(),
            stats: ZykovStats::default(),
            map,
        }
    }

    pub fn map(&self) -> &EdgeVarMap {
        &self.map
    }

    pub fn state(&self) -> &MergeState {
        &self.state
    }

    pub fn stats(&self) -> &ZykovStats {
        &self.stats
    }

    pub fn config(&self) -> &ZykovConfig {
        &self.cfg
    }

    pub fn witnesses(&self) -> &[LoggedWitness] {
        &self.witnesses
    }

    /// Targets `k` colors; prune clauses carry `selector`, which the caller
    /// assumes false while solving for `k`. Call between solves.
    pub fn set_budget(&mut self, k: usize, selector: Var) {
        self.budget = Some(Budget { k, selector });
        self.budget_off_level = None;
        self.dirty = true;
    }

    pub fn clear_budget(&mut self) {
        self.budget = None;
        self.budget_off_level = None;
    }

    pub fn budget(&self) -> Option<usize> {
        self.budget.map(|b| b.k)
    }

    fn active_budget(&self) -> Option<Budget> {
        self.budget_off_level.and(self.budget)
    }

    fn value(&self, u: usize, v: usize) -> Option<bool> {
        match self.map.index(u, v) {
            None => Some(false),
            Some(i) => match self.values[i] {
                0 => None,
                x => Some(x > 0),
            },
        }
    }

    fn e_lit(&self, u: usize, v: usize, merged: bool) -> Option<Lit> {
        self.map.lit(u, v, merged)
    }

    fn queue_lit(&mut self, u: usize, v: usize, merged: bool, why: Why) {
        let Some(i) = self.map.index(u, v) else { return };
        let want = if merged { 1 } else { -1 };
        if self.values[i] == want || self.queued[i] {
            return;
        }
        self.queued[i] = true;
        self.queued_log.push((self.level, i));
        self.why[i] = Some(why);
        self.queue.push_back(Lit::new(self.map.var_of_index(i), merged));
        self.stats.transitivity_queued += 1;
    }

    fn mark_grown(&mut self, v: usize) {
        bitset::set(&mut self.grown, v);
    }

    /// `e_uv` became true with `u`, `v` in different bags.
    fn apply_merge(&mut self, u: usize, v: usize) {
        let (a, b) = (self.state.rep(u), self.state.rep(v));
        let e_uv = self.e_lit(u, v, true).expect("merged pair has a variable");
        let bag_a = self.state.bag(a).to_vec();
        let bag_b = self.state.bag(b).to_vec();
        for &x in &bag_a {
            if x != u {
                let p = self.e_lit(x, u, true).unwrap();
                self.queue_lit(x, v, true, Why::Pair(p, Some(e_uv)));
            }
        }
        for &x in &bag_a {
            let p = self.e_lit(x, v, true).unwrap();
            for &y in &bag_b {
                if y != v {
                    let q = self.e_lit(v, y, true).unwrap();
                    self.queue_lit(x, y, true, Why::Pair(p, Some(q)));
                }
            }
        }
        let (ra, rb) = (self.state.row(a).to_vec(), self.state.row(b).to_vec());
        let only_b: Vec<usize> = bitset::ones(&rb).filter(|&w| !bitset::test(&ra, w)).collect();
        let only_a: Vec<usize> = bitset::ones(&ra).filter(|&w| !bitset::test(&rb, w)).collect();
        for &w in &only_b {
            let bag_w = self.state.bag(w).to_vec();
            for &x in &bag_a {
                let p = self.e_lit(x, v, true).unwrap();
                for &y in &bag_w {
                    let q = self.e_lit(v, y, false);
                    self.queue_lit(x, y, false, Why::Pair(p, q));
                }
            }
        }
        for &w in &only_a {
            let bag_w = self.state.bag(w).to_vec();
            for &x in &bag_b {
                let p = self.e_lit(u, x, true).unwrap();
                for &y in &bag_w {
                    let q = self.e_lit(u, y, false);
                    self.queue_lit(x, y, false, Why::Pair(p, q));
                }
            }
        }
        let (keep, _) = self.state.merge(a, b, self.level);
        self.stats.merges += 1;
        self.mark_grown(keep);
        for w in only_a.into_iter().chain(only_b) {
            self.mark_grown(w);
        }
        trace!("merge {u} {v} -> bag {keep}");
    }

    /// `e_uv` became false with `u`, `v` in non-adjacent bags.
    fn apply_separation(&mut self, u: usize, v: usize) {
        let (a, b) = (self.state.rep(u), self.state.rep(v));
        let not_uv = self.e_lit(u, v, false).expect("separated pair has a variable");
        let bag_a = self.state.bag(a).to_vec();
        let bag_b = self.state.bag(b).to_vec();
        for &x in &bag_a {
            if x != u {
                let p = self.e_lit(x, u, true).unwrap();
                self.queue_lit(x, v, false, Why::Pair(p, Some(not_uv)));
            }
        }
        for &y in &bag_b {
            if y != v {
                let p = self.e_lit(v, y, true).unwrap();
                for &x in &bag_a {
                    let q = self.e_lit(x, v, false).unwrap();
                    self.queue_lit(x, y, false, Why::Pair(p, Some(q)));
                }
            }
        }
        self.state.add_edge(a, b, self.level);
        self.stats.separations += 1;
        self.mark_grown(a);
        self.mark_grown(b);
        trace!("separate {u} {v}");
    }

    fn process(&mut self, lit: Lit) {
        let var = lit.var();
        if let Some(b) = self.budget {
            if var == b.selector {
                if !lit.is_positive() {
                    self.budget_off_level = Some(self.level);
                    self.dirty = true;
                }
                return;
            }
        }
        let Some(i) = self.map.index_of(var) else { return };
        if self.values[i] != 0 {
            self.stats.double_processing += 1;
            return;
        }
        self.values[i] = if lit.is_positive() { 1 } else { -1 };
        self.assigned.push(i);
        self.dirty = true;
        let p = self.map.pairs()[i];
        let (a, b) = (self.state.rep(p.u), self.state.rep(p.v));
        if lit.is_positive() {
            // Merging adjacent bags: the opposite literal is already queued
            // and yields the conflict.
            if a != b && !self.state.adjacent(a, b) {
                self.apply_merge(p.u, p.v);
            }
        } else if a != b && !self.state.adjacent(a, b) {
            self.apply_separation(p.u, p.v);
        }
    }

    fn edge_lits(&self, edges: &[(usize, usize)], out: &mut Vec<Lit>) {
        for &(x, y) in edges {
            if let Some(l) = self.e_lit(x, y, true) {
                out.push(l);
            }
        }
    }

    fn emit_prune(&mut self, witness: &BoundWitness, budget: Budget) {
        let mut clause = Vec::with_capacity(witness.edges.len() + 1);
        self.edge_lits(&witness.edges, &mut clause);
        clause.push(budget.selector.pos());
        if self.cfg.check_invariants {
            self.audit_witness(witness);
            if clause.iter().any(|l| self.lit_value(*l) != Some(false)) {
                self.stats.prune_not_falsified += 1;
            }
        }
        trace!("prune k={} bound={} size={}", budget.k, witness.bound, witness.vertices.len());
        self.pending = Some(clause);
    }

    fn lit_value(&self, l: Lit) -> Option<bool> {
        if let Some(b) = self.budget {
            if l.var() == b.selector {
                return self.budget_off_level.map(|_| !l.is_positive());
            }
        }
        let p = self.map.pair(l.var())?;
        self.value(p.u, p.v).map(|x| x == l.is_positive())
    }

    fn audit_witness(&mut self, witness: &BoundWitness) {
        if !witness.verify(&self.state.view()) {
            self.stats.witness_failures += 1;
        }
        if witness.vertices.len() <= WITNESS_LOG_MAX_VERTICES && self.witnesses.len() < WITNESS_LOG_CAP {
            let g = witness.to_graph();
            let entry = LoggedWitness {
                graph_edges: g.edges().to_vec(),
                num_vertices: g.num_vertices(),
                bound: witness.bound,
            };
            if self.witness_seen.insert(entry.clone()) {
                self.witnesses.push(entry);
            }
        }
    }

    fn mapped_order(&self) -> (Vec<usize>, Vec<usize>) {
        let seed: Vec<usize> = self.cfg.root_clique.iter().map(|&v| self.state.rep(v)).collect();
        let order: Vec<usize> = self.cfg.order.iter().map(|&v| self.state.rep(v)).collect();
        (seed, order)
    }

    fn run_checks(&mut self) {
        self.dirty = false;
        let Some(budget) = self.active_budget() else { return };
        if !self.cfg.pruning {
            return;
        }
        self.stats.checks += 1;
        let k = budget.k;
        let (seed, order) = self.mapped_order();
        let view = self.state.view();
        let mut q = greedy_clique(&view, &order, &seed);
        let mut from_mnts = false;
        if q.len() <= k && self.cfg.mnts {
            self.stats.mnts_calls += 1;
            let m = mnts_clique(&view, MntsParams::NODE, self.cfg.seed.wrapping_add(self.mnts_counter));
            self.mnts_counter += 1;
            if m.len() > q.len() {
                q = m;
                from_mnts = true;
            }
        }
        self.stats.max_clique = self.stats.max_clique.max(q.len());
        let backtracked = std::mem::replace(&mut self.backtracked, false);
        if q.len() > k {
            let sub = Clique::new(q.vertices[..k + 1].to_vec());
            let w = BoundWitness::from_clique(&sub);
            if from_mnts {
                self.stats.mnts_prunes += 1;
            } else {
                self.stats.clique_prunes += 1;
            }
            self.emit_prune(&w, budget);
            return;
        }
        if q.len() == k && backtracked && self.cfg.mycielskian && k > 0 {
            self.stats.mycielski_calls += 1;
            let w = mycielskian_bound(&view, &BoundWitness::from_clique(&q), 1);
            if w.bound > k {
                self.stats.mycielski_prunes += 1;
                self.emit_prune(&w, budget);
                return;
            }
        }
        if q.len() == k && self.cfg.positive_pruning {
            self.positive_prune(&q.vertices, budget);
        }
        self.best_clique = q.vertices;
    }

    /// With a `k`-clique `Q` and budget `k`, a vertex missing exactly one
    /// member `u` of `Q` must share the color of `u`.
    fn positive_prune(&mut self, q: &[usize], budget: Budget) {
        let words = bitset::words_for(self.state.num_vertices());
        let mut qmask = vec![0u64; words];
        for &x in q {
            bitset::set(&mut qmask, x);
        }
        let mut base = Vec::new();
        for (i, &x) in q.iter().enumerate() {
            for &y in &q[i + 1..] {
                if let Some(l) = self.e_lit(x, y, true) {
                    base.push(l);
                }
            }
        }
        base.push(budget.selector.pos());
        let reps: Vec<usize> = self.state.representatives().collect();
        for v in reps {
            if bitset::test(&qmask, v) {
                continue;
            }
            let row = self.state.row(v);
            let mut missing = q.iter().copied().filter(|&x| !bitset::test(row, x));
            let (Some(u), None) = (missing.next(), missing.next()) else {
                continue;
            };
            let Some(e_uv) = self.e_lit(u, v, true) else { continue };
            let mut clause = vec![e_uv];
            clause.extend_from_slice(&base);
            for &x in q {
                if x != u {
                    if let Some(l) = self.e_lit(v, x, true) {
                        clause.push(l);
                    }
                }
            }
            self.stats.positive_prunes += 1;
            trace!("positive prune {u} {v}");
            self.queue_lit(u, v, true, Why::Clause(clause));
        }
    }

    fn dominated_hint(&mut self) -> Option<Lit> {
        let grown: Vec<usize> = bitset::ones(&self.grown).collect();
        self.grown.iter_mut().for_each(|w| *w = 0);
        let reps: Vec<usize> = self.state.representatives().collect();
        for v in grown {
            if !self.state.is_active(v) {
                continue;
            }
            for &u in &reps {
                if u == v || self.state.adjacent(u, v) {
                    continue;
                }
                let (ru, rv) = (self.state.row(u), self.state.row(v));
                if bitset::is_subset(ru, rv) || bitset::is_subset(rv, ru) {
                    self.hint_pool.insert((u.min(v), u.max(v)));
                }
            }
        }
        while let Some(&(a, b)) = self.hint_pool.first() {
            let valid = self.state.is_active(a)
                && self.state.is_active(b)
                && !self.state.adjacent(a, b)
                && self.value(a, b).is_none()
                && {
                    let (ra, rb) = (self.state.row(a), self.state.row(b));
                    bitset::is_subset(ra, rb) || bitset::is_subset(rb, ra)
                };
            if valid {
                self.stats.dominated_hints += 1;
                return self.e_lit(a, b, true);
            }
            self.hint_pool.pop_first();
        }
        None
    }

    fn clique_decision(&mut self) -> Option<Lit> {
        let (mut seed, order) = self.mapped_order();
        seed.splice(0..0, self.best_clique.iter().map(|&v| self.state.rep(v)));
        let view = self.state.view();
        let q = greedy_clique(&view, &order, &seed);
        let words = view.words();
        let mut qmask = vec![0u64; words];
        for &x in &q.vertices {
            bitset::set(&mut qmask, x);
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for v in view.vertices() {
            if bitset::test(&qmask, v) {
                continue;
            }
            let row = view.row(v);
            let seen = q.vertices.iter().filter(|&&x| bitset::test(row, x)).count();
            let Some(u) = q.vertices.iter().copied().filter(|&x| !bitset::test(row, x)).min() else {
                continue;
            };
            if best.is_none_or(|(s, _, _)| seen > s) {
                best = Some((seen, u, v));
            }
        }
        let (_, u, v) = best?;
        self.stats.clique_decisions += 1;
        self.e_lit(u, v, true)
    }

    /// Number of colors used by the current bags, if every pair is decided.
    pub fn current_classes(&self) -> Vec<usize> {
        (0..self.state.num_vertices()).map(|v| self.state.rep(v)).collect()
    }
}

impl ExternalPropagator for ZykovPropagator {
    fn notify_assign(&mut self, lits: &[Lit]) {
        self.handed_out = false;
        for &l in lits {
            self.process(l);
        }
    }

    fn notify_new_level(&mut self) {
        if self.cfg.check_invariants {
            let fp = self.fingerprint();
            self.snapshots.push(fp);
        }
        self.assigned_lim.push(self.assigned.len());
        self.level += 1;
    }

    fn notify_backtrack(&mut self, level: usize) {
        if level >= self.level {
            return;
        }
        self.state.undo_to(level);
        let keep = self.assigned_lim[level];
        for &i in &self.assigned[keep..] {
            self.values[i] = 0;
        }
        self.assigned.truncate(keep);
        self.assigned_lim.truncate(level);
        while let Some(&(l, i)) = self.queued_log.last() {
            if l <= level {
                break;
            }
            self.queued[i] = false;
            self.queued_log.pop();
        }
        self.queue.clear();
        self.handed_out = false;
        self.pending = None;
        if self.budget_off_level.is_some_and(|l| l > level) {
            self.budget_off_level = None;
        }
        self.level = level;
        self.dirty = true;
        self.backtracked = true;
        for r in self.state.representatives().collect::<Vec<_>>() {
            bitset::set(&mut self.grown, r);
        }
        self.hint_pool.clear();
        if self.cfg.check_invariants {
            let fp = self.fingerprint();
            if self.snapshots.get(level) != Some(&fp) {
                self.stats.backtrack_mismatches += 1;
            }
            self.snapshots.truncate(level);
        }
    }

    fn cb_propagate(&mut self) -> Option<Lit> {
        while let Some(l) = self.queue.pop_front() {
            let i = self.map.index_of(l.var()).unwrap();
            if self.values[i] == if l.is_positive() { 1 } else { -1 } {
                continue;
            }
            self.handed_out = true;
            return Some(l);
        }
        // Checks need every handed-out literal to be notified first.
        if self.handed_out || self.pending.is_some() || !self.dirty {
            return None;
        }
        self.run_checks();
        let l = self.queue.pop_front();
        if l.is_some() {
            self.handed_out = true;
        }
        l
    }

    fn cb_add_reason(&mut self, propagated: Lit) -> Vec<Lit> {
        self.stats.reasons += 1;
        let i = self.map.index_of(propagated.var()).expect("reason for a non-edge variable");
        match self.why[i].as_ref().expect("reason for a propagated literal") {
            Why::Pair(p, q) => {
                let mut c = vec![propagated, !*p];
                if let Some(q) = q {
                    c.push(!*q);
                }
                c
            }
            Why::Clause(c) => c.clone(),
        }
    }

    fn cb_decide(&mut self) -> Option<Lit> {
        if self.cfg.dominated_hints {
            if let Some(l) = self.dominated_hint() {
                return Some(l);
            }
        }
        if self.cfg.decisions == DecisionStrategy::Clique {
            return self.clique_decision();
        }
        None
    }

    fn cb_add_external(&mut self) -> Option<Vec<Lit>> {
        self.pending.take()
    }

    fn cb_check_found_model(&mut self, model: &[bool]) -> ModelCheck {
        let n = self.state.num_vertices();
        let consistent = self.map.pairs().iter().enumerate().all(|(i, p)| {
            let merged = model[self.map.var_of_index(i).index()];
            merged == (self.state.rep(p.u) == self.state.rep(p.v))
        }) && (0..n).all(|u| {
            (u + 1..n).all(|v| {
                let (a, b) = (self.state.rep(u), self.state.rep(v));
                a == b || self.state.adjacent(a, b)
            })
        });
        if !consistent {
            self.stats.model_inconsistencies += 1;
        }
        let Some(budget) = self.active_budget() else {
            return ModelCheck::Accept;
        };
        let reps: Vec<usize> = self.state.representatives().collect();
        if !self.cfg.pruning || reps.len() <= budget.k {
            return ModelCheck::Accept;
        }
        self.stats.model_refutations += 1;
        let q = &reps[..budget.k + 1];
        let mut clause = Vec::new();
        for (i, &x) in q.iter().enumerate() {
            for &y in &q[i + 1..] {
                if let Some(l) = self.e_lit(x, y, true) {
                    clause.push(l);
                }
            }
        }
        clause.push(budget.selector.pos());
        ModelCheck::Refute(vec![clause])
    }
}

impl ZykovPropagator {
    fn fingerprint(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.state.fingerprint().hash(&mut h);
        let mut a = self.assigned.clone();
        a.sort_unstable();
        a.hash(&mut h);
        h.finish()
    }
}
