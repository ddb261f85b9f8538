//! Conflict-driven clause learning with two watched literals, first-UIP
//! learning with recursive minimization, VSIDS-style activities (decay
//! 0.95) with phase saving, and Luby restarts (unit 64 conflicts).
//!
//! External propagations are assigned at the current decision level with a
//! placeholder reason; the reason clause is requested from the propagator
//! only when conflict analysis reaches the literal. Clauses coming from the
//! propagator during search are attached immediately: a falsified clause is
//! analyzed as a conflict after backtracking to its highest level, a unit
//! clause propagates at the current level.

use std::time::Instant;

use serde::Serialize;

use super::heap::VarHeap;
use super::{normalize_clause, Cnf, ExternalPropagator, Lit, ModelCheck, NoPropagator, Var};

const TRUE: i8 = 1;
const FALSE: i8 = -1;
const UNDEF: i8 = 0;

const VAR_DECAY: f64 = 0.95;
const CLAUSE_DECAY: f64 = 0.999;
const RESTART_UNIT: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SolveResult {
    Sat,
    Unsat,
    /// A conflict or time budget ran out.
    Unknown,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Limits {
    /// Maximum conflicts per `solve` call.
    pub conflicts: Option<u64>,
    pub deadline: Option<Instant>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolverStats {
    pub solves: u64,
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
    pub restarts: u64,
    pub learnt_clauses: u64,
    pub deleted_clauses: u64,
    pub external_propagations: u64,
    pub external_clauses: u64,
    pub reason_clauses: u64,
    pub external_decisions: u64,
    pub model_refutations: u64,
    /// Reason clauses with a non-false literal besides the propagated one,
    /// or with a literal assigned after it.
    pub reason_violations: u64,
    /// Clauses met during conflict analysis that were not falsified apart
    /// from the resolved literal (checked when contract checks are on).
    pub analysis_violations: u64,
    /// Clauses left unsatisfied by a reported model.
    pub model_violations: u64,
}

impl SolverStats {
    /// Adds the counters of another run.
    pub fn absorb(&mut self, other: &SolverStats) {
        self.solves += other.solves;
        self.decisions += other.decisions;
        self.conflicts += other.conflicts;
        self.propagations += other.propagations;
        self.restarts += other.restarts;
        self.learnt_clauses += other.learnt_clauses;
        self.deleted_clauses += other.deleted_clauses;
        self.external_propagations += other.external_propagations;
        self.external_clauses += other.external_clauses;
        self.reason_clauses += other.reason_clauses;
        self.external_decisions += other.external_decisions;
        self.model_refutations += other.model_refutations;
        self.reason_violations += other.reason_violations;
        self.analysis_violations += other.analysis_violations;
        self.model_violations += other.model_violations;
    }

    pub fn contract_violations(&self) -> u64 {
        self.reason_violations + self.analysis_violations + self.model_violations
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Reason {
    /// Decision, assumption, or root-level fact.
    Decision,
    Clause(u32),
    /// Propagated by the external propagator; reason not yet imported.
    External,
}

struct ClauseData {
    lits: Vec<Lit>,
    learnt: bool,
    deleted: bool,
    activity: f64,
}

#[derive(Clone, Copy)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

enum Added {
    Ok,
    Conflict(u32),
    Unsat,
}

#[inline]
fn lit_value(assigns: &[i8], l: Lit) -> i8 {
    let v = assigns[l.var().index()];
    if l.is_positive() {
        v
    } else {
        -v
    }
}

pub struct Solver<P: ExternalPropagator = NoPropagator> {
    prop: P,
    clauses: Vec<ClauseData>,
    learnts: Vec<u32>,
    num_original: usize,
    watches: Vec<Vec<Watcher>>,
    assigns: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<Reason>,
    trail_pos: Vec<u32>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    notified: usize,
    notify_buf: Vec<Lit>,
    observed: Vec<bool>,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    heap: VarHeap,
    phase: Vec<bool>,
    seen: Vec<bool>,
    analyze_stack: Vec<Lit>,
    analyze_clear: Vec<Lit>,
    assumptions: Vec<Lit>,
    core: Vec<Lit>,
    model: Vec<bool>,
    ok: bool,
    max_learnts: f64,
    limits: Limits,
    check_contracts: bool,
    stats: SolverStats,
}

impl Solver<NoPropagator> {
    pub fn new() -> Self {
        Solver::with_propagator(NoPropagator)
    }
}

impl Default for Solver<NoPropagator> {
    fn default() -> Self {
        Solver::new()
    }
}

impl<P: ExternalPropagator> Solver<P> {
    pub fn with_propagator(prop: P) -> Self {
        Solver {
            prop,
            clauses: Vec::new(),
            learnts: Vec::new(),
            num_original: 0,
            watches: Vec::new(),
            assigns: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            trail_pos: Vec::new(),
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            notified: 0,
            notify_buf: Vec::new(),
            observed: Vec::new(),
            activity: Vec::new(),
            var_inc: 1.0,
            cla_inc: 1.0,
            heap: VarHeap::new(),
            phase: Vec::new(),
            seen: Vec::new(),
            analyze_stack: Vec::new(),
            analyze_clear: Vec::new(),
            assumptions: Vec::new(),
            core: Vec::new(),
            model: Vec::new(),
            ok: true,
            max_learnts: 0.0,
            limits: Limits::default(),
            check_contracts: false,
            stats: SolverStats::default(),
        }
    }

    pub fn propagator(&self) -> &P {
        &self.prop
    }

    pub fn propagator_mut(&mut self) -> &mut P {
        &mut self.prop
    }

    pub fn into_propagator(self) -> P {
        self.prop
    }

    pub fn stats(&self) -> &SolverStats {
        &self.stats
    }

    pub fn set_limits(&mut self, limits: Limits) {
        self.limits = limits;
    }

    /// Enables the per-clause antecedent check during conflict analysis.
    pub fn set_check_contracts(&mut self, on: bool) {
        self.check_contracts = on;
    }

    pub fn num_vars(&self) -> usize {
        self.assigns.len()
    }

    pub fn new_var(&mut self) -> Var {
        let v = self.assigns.len();
        self.assigns.push(UNDEF);
        self.level.push(0);
        self.reason.push(Reason::Decision);
        self.trail_pos.push(0);
        self.observed.push(false);
        self.activity.push(0.0);
        self.phase.push(false);
        self.seen.push(false);
        self.watches.push(Vec::new());
        self.watches.push(Vec::new());
        self.heap.grow(v + 1);
        self.heap.insert(v, &self.activity);
        Var::new(v)
    }

    /// Routes assignments of `var` to the propagator. Call before the
    /// variable is first assigned.
    pub fn observe(&mut self, var: Var) {
        debug_assert_eq!(self.assigns[var.index()], UNDEF);
        self.observed[var.index()] = true;
    }

    /// `false` once the clause set is known to be unsatisfiable.
    pub fn is_ok(&self) -> bool {
        self.ok
    }

    /// Value fixed at the root level, if any.
    pub fn fixed_value(&self, lit: Lit) -> Option<bool> {
        let v = lit.var().index();
        if self.assigns[v] != UNDEF && self.level[v] == 0 {
            Some(lit_value(&self.assigns, lit) == TRUE)
        } else {
            None
        }
    }

    /// Model of the last satisfiable `solve`, indexed by variable.
    pub fn model(&self) -> &[bool] {
        &self.model
    }

    pub fn model_value(&self, lit: Lit) -> bool {
        self.model[lit.var().index()] == lit.is_positive()
    }

    /// Failed assumptions of the last unsatisfiable `solve`: a subset of the
    /// assumptions that is jointly inconsistent with the clauses. Empty if
    /// the clauses alone are unsatisfiable.
    pub fn core(&self) -> &[Lit] {
        &self.core
    }

    /// Adds a clause permanently. Returns `false` if the formula became
    /// unsatisfiable.
    pub fn add_clause(&mut self, lits: &[Lit]) -> bool {
        if !self.ok {
            return false;
        }
        self.backtrack(0);
        let mut c = lits.to_vec();
        assert!(
            c.iter().all(|l| l.var().index() < self.num_vars()),
            "clause mentions an unknown variable"
        );
        if !normalize_clause(&mut c) {
            return true;
        }
        if c.iter().any(|&l| self.value(l) == TRUE) {
            return true;
        }
        c.retain(|&l| self.value(l) != FALSE);
        match c.len() {
            0 => {
                self.ok = false;
            }
            1 => {
                self.assign(c[0], Reason::Decision);
                self.ok = self.bcp().is_none();
            }
            _ => {
                self.num_original += 1;
                self.attach(c, false);
            }
        }
        self.ok
    }

    /// Irredundant clauses plus root-level units, as a standalone formula.
    pub fn to_cnf(&self) -> Cnf {
        let mut cnf = Cnf {
            num_vars: self.num_vars(),
            ..Cnf::default()
        };
        let root = self.trail_lim.first().copied().unwrap_or(self.trail.len());
        for &l in &self.trail[..root] {
            cnf.clauses.push(vec![l]);
        }
        for c in &self.clauses {
            if !c.learnt && !c.deleted {
                cnf.clauses.push(c.lits.clone());
            }
        }
        if !self.ok {
            cnf.clauses.push(Vec::new());
        }
        cnf
    }

    pub fn solve(&mut self, assumptions: &[Lit]) -> SolveResult {
        self.stats.solves += 1;
        self.model.clear();
        self.core.clear();
        if !self.ok {
            return SolveResult::Unsat;
        }
        self.backtrack(0);
        if self.max_learnts == 0.0 {
            self.max_learnts = (self.num_original as f64 / 3.0).max(4000.0);
        }
        self.assumptions = assumptions.to_vec();
        let result = self.search();
        self.backtrack(0);
        result
    }

    #[inline]
    fn value(&self, l: Lit) -> i8 {
        lit_value(&self.assigns, l)
    }

    #[inline]
    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    #[inline]
    fn lit_level(&self, l: Lit) -> u32 {
        self.level[l.var().index()]
    }

    fn assign(&mut self, lit: Lit, reason: Reason) {
        let v = lit.var().index();
        debug_assert_eq!(self.assigns[v], UNDEF);
        self.assigns[v] = if lit.is_positive() { TRUE } else { FALSE };
        self.level[v] = self.decision_level() as u32;
        self.reason[v] = reason;
        self.trail_pos[v] = self.trail.len() as u32;
        self.trail.push(lit);
    }

    fn new_decision_level(&mut self) {
        self.trail_lim.push(self.trail.len());
        self.prop.notify_new_level();
    }

    fn backtrack(&mut self, level: usize) {
        if self.decision_level() <= level {
            return;
        }
        let start = self.trail_lim[level];
        for i in (start..self.trail.len()).rev() {
            let l = self.trail[i];
            let v = l.var().index();
            self.assigns[v] = UNDEF;
            self.reason[v] = Reason::Decision;
            self.phase[v] = l.is_positive();
            self.heap.insert(v, &self.activity);
        }
        self.trail.truncate(start);
        self.trail_lim.truncate(level);
        self.qhead = self.qhead.min(start);
        self.notified = self.notified.min(start);
        self.prop.notify_backtrack(level);
    }

    fn attach(&mut self, lits: Vec<Lit>, learnt: bool) -> u32 {
        let cref = u32::try_from(self.clauses.len()).expect("clause arena overflow");
        if lits.len() >= 2 {
            self.watches[lits[0].code()].push(Watcher {
                cref,
                blocker: lits[1],
            });
            self.watches[lits[1].code()].push(Watcher {
                cref,
                blocker: lits[0],
            });
        }
        self.clauses.push(ClauseData {
            lits,
            learnt,
            deleted: false,
            activity: 0.0,
        });
        if learnt {
            self.learnts.push(cref);
        }
        cref
    }

    /// Moves the two most useful watch candidates to the front: true before
    /// unassigned before false, later levels first among false literals.
    fn order_watches(&self, lits: &mut [Lit]) {
        let key = |l: Lit| -> (i8, u32) {
            match self.value(l) {
                TRUE => (2, u32::MAX - self.lit_level(l)),
                UNDEF => (1, 0),
                _ => (0, self.lit_level(l)),
            }
        };
        for slot in 0..lits.len().min(2) {
            let best = (slot..lits.len())
                .max_by_key(|&i| (key(lits[i]), std::cmp::Reverse(i)))
                .unwrap();
            lits.swap(slot, best);
        }
    }

    fn bcp(&mut self) -> Option<u32> {
        let mut confl = None;
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[false_lit.code()]);
            let (mut i, mut j) = (0, 0);
            'watchers: while i < ws.len() {
                let w = ws[i];
                i += 1;
                if lit_value(&self.assigns, w.blocker) == TRUE {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let clause = &mut self.clauses[w.cref as usize];
                if clause.deleted {
                    continue;
                }
                let lits = &mut clause.lits;
                if lits[0] == false_lit {
                    lits.swap(0, 1);
                }
                let first = lits[0];
                let nw = Watcher {
                    cref: w.cref,
                    blocker: first,
                };
                if first != w.blocker && lit_value(&self.assigns, first) == TRUE {
                    ws[j] = nw;
                    j += 1;
                    continue;
                }
                for k in 2..lits.len() {
                    if lit_value(&self.assigns, lits[k]) != FALSE {
                        lits.swap(1, k);
                        self.watches[lits[1].code()].push(nw);
                        continue 'watchers;
                    }
                }
                ws[j] = nw;
                j += 1;
                if lit_value(&self.assigns, first) == FALSE {
                    confl = Some(w.cref);
                    self.qhead = self.trail.len();
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.assign(first, Reason::Clause(w.cref));
                }
            }
            ws.truncate(j);
            self.watches[false_lit.code()] = ws;
            if confl.is_some() {
                break;
            }
        }
        confl
    }

    fn notify_propagator(&mut self) {
        if self.notified >= self.trail.len() {
            return;
        }
        let mut buf = std::mem::take(&mut self.notify_buf);
        buf.clear();
        buf.extend(
            self.trail[self.notified..]
                .iter()
                .copied()
                .filter(|l| self.observed[l.var().index()]),
        );
        self.notified = self.trail.len();
        if !buf.is_empty() {
            self.prop.notify_assign(&buf);
        }
        self.notify_buf = buf;
    }

    /// Unit propagation interleaved with external propagation until both
    /// reach a fixpoint. Returns a falsified clause on conflict.
    fn propagate_full(&mut self) -> Option<u32> {
        loop {
            if let Some(c) = self.bcp() {
                return Some(c);
            }
            self.notify_propagator();
            let mut progressed = false;
            while let Some(lit) = self.prop.cb_propagate() {
                assert!(
                    lit.var().index() < self.num_vars(),
                    "propagator returned unknown variable"
                );
                match self.value(lit) {
                    TRUE => {}
                    UNDEF => {
                        self.assign(lit, Reason::External);
                        self.stats.external_propagations += 1;
                        progressed = true;
                    }
                    _ => return Some(self.import_reason(lit)),
                }
            }
            if !progressed {
                return None;
            }
        }
    }

    /// Fetches and attaches the reason clause of an external propagation.
    /// If `lit` is currently false the clause is a conflict.
    fn import_reason(&mut self, lit: Lit) -> u32 {
        let mut lits = self.prop.cb_add_reason(lit);
        self.stats.reason_clauses += 1;
        assert!(
            normalize_clause(&mut lits) && lits.contains(&lit),
            "reason clause for {lit:?} must contain it and not be tautological"
        );
        let implied = self.value(lit) == TRUE;
        let pos = self.trail_pos[lit.var().index()];
        let bad = lits.iter().any(|&q| {
            q != lit
                && (self.value(q) != FALSE
                    || (implied && self.trail_pos[q.var().index()] > pos))
        });
        if bad {
            self.stats.reason_violations += 1;
            log::error!("reason clause {lits:?} for {lit:?} is not falsified");
        }
        if implied {
            let i = lits.iter().position(|&q| q == lit).unwrap();
            lits.swap(0, i);
            let rest = &mut lits[1..];
            if let Some(best) = (0..rest.len()).max_by_key(|&i| self.lit_level(rest[i])) {
                rest.swap(0, best);
            }
        } else {
            self.order_watches(&mut lits);
        }
        let cref = self.attach(lits, true);
        if implied {
            self.reason[lit.var().index()] = Reason::Clause(cref);
        }
        cref
    }

    fn add_clause_in_search(&mut self, mut lits: Vec<Lit>) -> Added {
        if !normalize_clause(&mut lits) {
            return Added::Ok;
        }
        if lits
            .iter()
            .any(|&l| self.value(l) == TRUE && self.lit_level(l) == 0)
        {
            return Added::Ok;
        }
        lits.retain(|&l| !(self.value(l) == FALSE && self.lit_level(l) == 0));
        match lits.len() {
            0 => {
                self.ok = false;
                Added::Unsat
            }
            1 => {
                self.backtrack(0);
                match self.value(lits[0]) {
                    FALSE => {
                        self.ok = false;
                        Added::Unsat
                    }
                    TRUE => Added::Ok,
                    _ => {
                        self.assign(lits[0], Reason::Decision);
                        Added::Ok
                    }
                }
            }
            _ => {
                self.order_watches(&mut lits);
                let (v0, v1) = (self.value(lits[0]), self.value(lits[1]));
                let first = lits[0];
                let cref = self.attach(lits, true);
                if v0 == FALSE {
                    Added::Conflict(cref)
                } else if v0 == UNDEF && v1 == FALSE {
                    self.assign(first, Reason::Clause(cref));
                    Added::Ok
                } else {
                    Added::Ok
                }
            }
        }
    }

    /// Learns from a falsified clause and backjumps. `false` means the
    /// formula is unsatisfiable.
    fn resolve_conflict(&mut self, confl: u32) -> bool {
        self.stats.conflicts += 1;
        let max_level = self.clauses[confl as usize]
            .lits
            .iter()
            .map(|&l| self.lit_level(l))
            .max()
            .unwrap_or(0) as usize;
        if max_level == 0 {
            self.ok = false;
            return false;
        }
        if max_level < self.decision_level() {
            self.backtrack(max_level);
        }
        let (learnt, bt) = self.analyze(confl);
        self.backtrack(bt);
        if learnt.len() == 1 {
            self.assign(learnt[0], Reason::Decision);
        } else {
            let first = learnt[0];
            let cref = self.attach(learnt, true);
            self.stats.learnt_clauses += 1;
            self.bump_clause(cref);
            self.assign(first, Reason::Clause(cref));
        }
        self.var_inc /= VAR_DECAY;
        self.cla_inc /= CLAUSE_DECAY;
        true
    }

    fn check_antecedent(&mut self, cref: u32, implied: Option<Lit>) {
        let ok = self.clauses[cref as usize].lits.iter().all(|&q| {
            if Some(q) == implied {
                self.value(q) == TRUE
            } else {
                self.value(q) == FALSE
            }
        });
        if !ok {
            self.stats.analysis_violations += 1;
        }
    }

    fn analyze(&mut self, confl: u32) -> (Vec<Lit>, usize) {
        let dl = self.decision_level() as u32;
        let mut learnt = vec![Var::new(0).pos()];
        let mut path_c = 0usize;
        let mut p: Option<Lit> = None;
        let mut idx = self.trail.len();
        let mut confl = confl;
        loop {
            if self.check_contracts {
                self.check_antecedent(confl, p);
            }
            if self.clauses[confl as usize].learnt {
                self.bump_clause(confl);
            }
            let len = self.clauses[confl as usize].lits.len();
            for k in 0..len {
                let q = self.clauses[confl as usize].lits[k];
                if Some(q) == p {
                    continue;
                }
                let v = q.var().index();
                if !self.seen[v] && self.level[v] > 0 {
                    self.bump_var(v);
                    self.seen[v] = true;
                    if self.level[v] >= dl {
                        path_c += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[self.trail[idx].var().index()] {
                    break;
                }
            }
            let pl = self.trail[idx];
            self.seen[pl.var().index()] = false;
            path_c -= 1;
            p = Some(pl);
            if path_c == 0 {
                break;
            }
            confl = match self.reason[pl.var().index()] {
                Reason::Clause(c) => c,
                Reason::External => self.import_reason(pl),
                Reason::Decision => unreachable!("decision reached with open paths"),
            };
        }
        learnt[0] = !p.expect("conflict analysis found no literal");

        self.analyze_clear.clear();
        self.analyze_clear.extend_from_slice(&learnt);
        let abstract_levels = learnt[1..]
            .iter()
            .fold(0u32, |acc, l| acc | 1 << (self.lit_level(*l) & 31));
        let mut j = 1;
        for i in 1..learnt.len() {
            let l = learnt[i];
            let keep = match self.reason[l.var().index()] {
                Reason::Clause(_) => !self.lit_redundant(l, abstract_levels),
                _ => true,
            };
            if keep {
                learnt[j] = l;
                j += 1;
            }
        }
        learnt.truncate(j);

        let bt = if learnt.len() == 1 {
            0
        } else {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.lit_level(learnt[i]) > self.lit_level(learnt[max_i]) {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            self.lit_level(learnt[1]) as usize
        };
        for i in 0..self.analyze_clear.len() {
            let v = self.analyze_clear[i].var().index();
            self.seen[v] = false;
        }
        (learnt, bt)
    }

    fn lit_redundant(&mut self, p: Lit, abstract_levels: u32) -> bool {
        self.analyze_stack.clear();
        self.analyze_stack.push(p);
        let top = self.analyze_clear.len();
        while let Some(q) = self.analyze_stack.pop() {
            let Reason::Clause(c) = self.reason[q.var().index()] else {
                unreachable!()
            };
            let len = self.clauses[c as usize].lits.len();
            for k in 0..len {
                let l = self.clauses[c as usize].lits[k];
                if l.var() == q.var() {
                    continue;
                }
                let v = l.var().index();
                if self.seen[v] || self.level[v] == 0 {
                    continue;
                }
                let expandable = matches!(self.reason[v], Reason::Clause(_))
                    && (1u32 << (self.level[v] & 31)) & abstract_levels != 0;
                if expandable {
                    self.seen[v] = true;
                    self.analyze_stack.push(l);
                    self.analyze_clear.push(l);
                } else {
                    for x in self.analyze_clear.drain(top..) {
                        self.seen[x.var().index()] = false;
                    }
                    return false;
                }
            }
        }
        true
    }

    /// Collects the assumptions responsible for `failed` being false.
    fn analyze_final(&mut self, failed: Lit) {
        self.core.clear();
        self.core.push(failed);
        if self.decision_level() == 0 {
            return;
        }
        let v0 = failed.var().index();
        self.seen[v0] = true;
        let mut i = self.trail.len();
        while i > self.trail_lim[0] {
            i -= 1;
            let l = self.trail[i];
            let v = l.var().index();
            if !self.seen[v] {
                continue;
            }
            let cref = match self.reason[v] {
                Reason::Decision => {
                    self.core.push(l);
                    None
                }
                Reason::Clause(c) => Some(c),
                Reason::External => Some(self.import_reason(l)),
            };
            if let Some(c) = cref {
                let len = self.clauses[c as usize].lits.len();
                for k in 0..len {
                    let q = self.clauses[c as usize].lits[k];
                    if q.var().index() != v && self.level[q.var().index()] > 0 {
                        self.seen[q.var().index()] = true;
                    }
                }
            }
            self.seen[v] = false;
        }
        self.seen[v0] = false;
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.increased(v, &self.activity);
    }

    fn bump_clause(&mut self, cref: u32) {
        let c = &mut self.clauses[cref as usize];
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for &l in &self.learnts {
                self.clauses[l as usize].activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    fn locked(&self, cref: u32) -> bool {
        let lits = &self.clauses[cref as usize].lits;
        let Some(&l0) = lits.first() else {
            return false;
        };
        self.value(l0) == TRUE && self.reason[l0.var().index()] == Reason::Clause(cref)
    }

    fn reduce_db(&mut self) {
        let mut cands: Vec<u32> = self
            .learnts
            .iter()
            .copied()
            .filter(|&c| !self.clauses[c as usize].deleted)
            .collect();
        cands.sort_by(|&a, &b| {
            let (x, y) = (
                self.clauses[a as usize].activity,
                self.clauses[b as usize].activity,
            );
            x.partial_cmp(&y).unwrap().then(a.cmp(&b))
        });
        let half = cands.len() / 2;
        let lim = self.cla_inc / cands.len().max(1) as f64;
        let mut kept = Vec::with_capacity(cands.len());
        for (i, &c) in cands.iter().enumerate() {
            let cd = &self.clauses[c as usize];
            if cd.lits.len() > 2 && !self.locked(c) && (i < half || cd.activity < lim) {
                let cd = &mut self.clauses[c as usize];
                cd.deleted = true;
                cd.lits = Vec::new();
                self.stats.deleted_clauses += 1;
            } else {
                kept.push(c);
            }
        }
        kept.sort_unstable();
        self.learnts = kept;
        let clauses = &self.clauses;
        for ws in &mut self.watches {
            ws.retain(|w| !clauses[w.cref as usize].deleted);
        }
        self.max_learnts *= 1.1;
    }

    fn budget_exhausted(&self, start_conflicts: u64) -> bool {
        if let Some(limit) = self.limits.conflicts {
            if self.stats.conflicts - start_conflicts >= limit {
                return true;
            }
        }
        matches!(self.limits.deadline, Some(d) if Instant::now() >= d)
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.assigns[v] == UNDEF {
                return Some(Lit::new(Var::new(v), self.phase[v]));
            }
        }
        None
    }

    fn verify_model(&mut self, model: &[bool]) {
        let unsat = self
            .clauses
            .iter()
            .filter(|c| !c.deleted && c.lits.len() >= 2)
            .filter(|c| !c.lits.iter().any(|l| model[l.var().index()] == l.is_positive()))
            .count();
        if unsat > 0 {
            self.stats.model_violations += unsat as u64;
            log::error!("model leaves {unsat} clauses unsatisfied");
        }
    }

    fn search(&mut self) -> SolveResult {
        let start_conflicts = self.stats.conflicts;
        let mut luby_idx = 0u64;
        let mut restart_at = self.stats.conflicts + RESTART_UNIT * luby(luby_idx);
        loop {
            if let Some(confl) = self.propagate_full() {
                if !self.resolve_conflict(confl) {
                    return SolveResult::Unsat;
                }
                if self.budget_exhausted(start_conflicts) {
                    return SolveResult::Unknown;
                }
                continue;
            }
            if self.stats.conflicts >= restart_at {
                luby_idx += 1;
                restart_at = self.stats.conflicts + RESTART_UNIT * luby(luby_idx);
                self.stats.restarts += 1;
                self.backtrack(0);
                continue;
            }
            if self.learnts.len() as f64 >= self.max_learnts + self.trail.len() as f64 {
                self.reduce_db();
            }
            if let Some(clause) = self.prop.cb_add_external() {
                self.stats.external_clauses += 1;
                match self.add_clause_in_search(clause) {
                    Added::Ok => {}
                    Added::Unsat => return SolveResult::Unsat,
                    Added::Conflict(c) => {
                        if !self.resolve_conflict(c) {
                            return SolveResult::Unsat;
                        }
                        if self.budget_exhausted(start_conflicts) {
                            return SolveResult::Unknown;
                        }
                    }
                }
                continue;
            }

            let mut next = None;
            while self.decision_level() < self.assumptions.len() {
                let a = self.assumptions[self.decision_level()];
                match self.value(a) {
                    TRUE => self.new_decision_level(),
                    FALSE => {
                        self.analyze_final(a);
                        return SolveResult::Unsat;
                    }
                    _ => {
                        next = Some(a);
                        break;
                    }
                }
            }
            if next.is_none() {
                if let Some(l) = self.prop.cb_decide() {
                    if self.value(l) == UNDEF {
                        self.stats.external_decisions += 1;
                        next = Some(l);
                    }
                }
            }
            if next.is_none() {
                next = self.pick_branch();
            }
            match next {
                Some(l) => {
                    self.stats.decisions += 1;
                    self.new_decision_level();
                    self.assign(l, Reason::Decision);
                    if self.stats.decisions.is_multiple_of(1024) && self.budget_exhausted(start_conflicts) {
                        return SolveResult::Unknown;
                    }
                }
                None => {
                    let model: Vec<bool> = self.assigns.iter().map(|&a| a == TRUE).collect();
                    match self.prop.cb_check_found_model(&model) {
                        ModelCheck::Accept => {
                            self.verify_model(&model);
                            self.model = model;
                            return SolveResult::Sat;
                        }
                        ModelCheck::Refute(clauses) => {
                            self.stats.model_refutations += 1;
                            let mut conflicted = false;
                            for c in clauses {
                                match self.add_clause_in_search(c) {
                                    Added::Ok => {}
                                    Added::Unsat => return SolveResult::Unsat,
                                    Added::Conflict(cr) => {
                                        conflicted = true;
                                        if !self.resolve_conflict(cr) {
                                            return SolveResult::Unsat;
                                        }
                                    }
                                }
                            }
                            assert!(
                                conflicted || self.decision_level() == 0,
                                "model refuted without a falsified clause"
                            );
                            if self.budget_exhausted(start_conflicts) {
                                return SolveResult::Unknown;
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Luby sequence 1, 1, 2, 1, 1, 2, 4, ... (0-indexed).
fn luby(mut x: u64) -> u64 {
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    1 << seq
}
