//! Chromatic number pipeline: root bounds, reductions, then a sequence of
//! k-colorability decisions on the reduced graph.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use log::{debug, info};
use serde::Serialize;

use crate::bitset::DenseGraph;
use crate::bounds::{dsatur, greedy_clique, mnts_clique, mycielskian_bound, BoundWitness, MntsParams, View};
use crate::encodings::{add_color_counter, build_assignment, build_full_zykov_counter, decode_zykov_model};
use crate::error::{Error, Result};
use crate::graph::{count_colors, normalize_coloring, Graph};
use crate::preprocess::{recover, reduce, Reduction};
use crate::sat::{Cnf, Limits, Lit, SolveResult, Solver, SolverStats, Totalizer, Var};
use crate::zykov::{DecisionStrategy, EdgeVarMap, LoggedWitness, ZykovConfig, ZykovPropagator, ZykovStats};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Propagator with transitivity, bounds, pruning and hints.
    Zykov,
    Assignment,
    FullZykov,
    /// Propagator for transitivity; the bound is a cardinality constraint.
    TransitivityOnly,
}

impl Mode {
    pub const ALL: [Mode; 4] = [Mode::Zykov, Mode::Assignment, Mode::FullZykov, Mode::TransitivityOnly];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Zykov => "zykov",
            Mode::Assignment => "assignment",
            Mode::FullZykov => "full-zykov",
            Mode::TransitivityOnly => "transitivity-only",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zykov" => Ok(Mode::Zykov),
            "assignment" => Ok(Mode::Assignment),
            "full" | "full-zykov" => Ok(Mode::FullZykov),
            "transitivity-only" | "transitivity" => Ok(Mode::TransitivityOnly),
            other => Err(Error::Config(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Search {
    BottomUp,
    TopDown,
}

impl FromStr for Search {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bottom-up" => Ok(Search::BottomUp),
            "top-down" => Ok(Search::TopDown),
            other => Err(Error::Config(format!("unknown search `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveConfig {
    pub mode: Mode,
    pub search: Search,
    /// One solver across all k (otherwise a fresh one per k).
    pub incremental: bool,
    pub mnts: bool,
    pub dominated_hints: bool,
    pub decisions: DecisionStrategy,
    pub time_limit: Option<Duration>,
    /// Conflicts over the whole run.
    pub conflict_limit: Option<u64>,
    pub seed: u64,
    /// Maximum Mycielskian rounds for the root bound.
    pub root_mycielski_rounds: usize,
    /// Runtime contract and invariant checks.
    pub check_invariants: bool,
    /// After the optimum is found bottom-up, also solve `χ + 1` on the same
    /// solver and record a violation if it is UNSAT.
    pub check_monotone: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            mode: Mode::Zykov,
            search: Search::BottomUp,
            incremental: true,
            mnts: true,
            dominated_hints: true,
            decisions: DecisionStrategy::Solver,
            time_limit: None,
            conflict_limit: None,
            seed: 0,
            root_mycielski_rounds: 64,
            check_invariants: false,
            check_monotone: false,
        }
    }
}

impl SolveConfig {
    pub fn with_mode(mode: Mode) -> Self {
        SolveConfig {
            mode,
            ..SolveConfig::default()
        }
    }

    /// Whether the propagator prunes with lower bounds.
    pub fn pruning(&self) -> bool {
        self.mode == Mode::Zykov
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KStep {
    pub k: usize,
    pub result: SolveResult,
    pub conflicts: u64,
    pub decisions: u64,
    pub seconds: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RunStats {
    pub solver: SolverStats,
    pub zykov: ZykovStats,
    pub root_clique: usize,
    pub root_bound: usize,
    pub dsatur_colors: usize,
    pub reduced_vertices: usize,
    pub reduced_edges: usize,
    /// SAT at some k followed by UNSAT at a larger k on one solver.
    pub monotonicity_violations: u64,
    #[serde(skip)]
    pub witnesses: Vec<LoggedWitness>,
}

impl RunStats {
    /// Failed runtime checks of any kind.
    pub fn violations(&self) -> u64 {
        self.solver.contract_violations() + self.zykov.violations() + self.monotonicity_violations
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Optimal,
    /// The budget ran out; only the bounds hold.
    Timeout,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub outcome: Outcome,
    pub chromatic_number: Option<usize>,
    pub lower_bound: usize,
    pub upper_bound: usize,
    /// Best coloring found, on the input graph, with `upper_bound` colors.
    pub coloring: Vec<usize>,
    pub trajectory: Vec<KStep>,
    pub stats: RunStats,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Sat(Vec<usize>),
    Unsat,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct DecisionReport {
    pub decision: Decision,
    pub stats: RunStats,
    pub seconds: f64,
}

/// Shared budget over several solve calls.
struct Budget {
    deadline: Option<Instant>,
    conflicts_left: Option<u64>,
}

impl Budget {
    fn new(cfg: &SolveConfig, start: Instant) -> Self {
        Budget {
            deadline: cfg.time_limit.map(|d| start + d),
            conflicts_left: cfg.conflict_limit,
        }
    }

    fn limits(&self) -> Limits {
        Limits {
            conflicts: self.conflicts_left,
            deadline: self.deadline,
        }
    }

    fn exhausted(&self) -> bool {
        self.conflicts_left == Some(0) || self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn spend(&mut self, conflicts: u64) {
        if let Some(left) = &mut self.conflicts_left {
            *left = left.saturating_sub(conflicts);
        }
    }
}

/// A solver set up for one graph that answers "k colors?" queries.
enum Backend {
    Zykov {
        solver: Box<Solver<ZykovPropagator>>,
        selectors: Vec<Var>,
        counter: Option<Totalizer>,
        graph: Graph,
    },
    Full {
        solver: Box<Solver>,
        map: EdgeVarMap,
        counter: Totalizer,
        graph: Graph,
    },
    Assignment {
        graph: Graph,
        clique: Vec<usize>,
        stats: SolverStats,
    },
}

struct Setup<'a> {
    graph: &'a Graph,
    order: Vec<usize>,
    clique: Vec<usize>,
    /// Largest k that will be asked.
    max_k: usize,
}

impl Backend {
    fn new(cfg: &SolveConfig, setup: &Setup) -> Self {
        let g = setup.graph;
        let n = g.num_vertices();
        let cap = (setup.max_k + 1).min(n).max(1);
        match cfg.mode {
            Mode::Zykov | Mode::TransitivityOnly => {
                let map = EdgeVarMap::new(g, 0);
                let m = map.len();
                let zcfg = if cfg.mode == Mode::Zykov {
                    ZykovConfig {
                        mnts: cfg.mnts,
                        dominated_hints: cfg.dominated_hints,
                        decisions: cfg.decisions,
                        order: setup.order.clone(),
                        root_clique: setup.clique.clone(),
                        seed: cfg.seed,
                        check_invariants: cfg.check_invariants,
                        ..ZykovConfig::new(n)
                    }
                } else {
                    ZykovConfig {
                        check_invariants: cfg.check_invariants,
                        ..ZykovConfig::transitivity_only(n)
                    }
                };
                let mut cnf = Cnf::new();
                for _ in 0..m {
                    cnf.new_var();
                }
                let counter = (cfg.mode == Mode::TransitivityOnly).then(|| add_color_counter(&mut cnf, &map, cap).1);
                let mut solver = Solver::with_propagator(ZykovPropagator::new(g, map, zcfg));
                solver.set_check_contracts(cfg.check_invariants);
                cnf.load_into(&mut solver);
                for i in 0..m {
                    solver.observe(Var::new(i));
                }
                Backend::Zykov {
                    solver: Box::new(solver),
                    selectors: Vec::new(),
                    counter,
                    graph: g.clone(),
                }
            }
            Mode::FullZykov => {
                let enc = build_full_zykov_counter(g, cap);
                let mut solver: Solver = Solver::new();
                solver.set_check_contracts(cfg.check_invariants);
                enc.cnf.load_into(&mut solver);
                Backend::Full {
                    solver: Box::new(solver),
                    map: enc.map,
                    counter: enc.counter,
                    graph: g.clone(),
                }
            }
            Mode::Assignment => Backend::Assignment {
                graph: g.clone(),
                clique: setup.clique.clone(),
                stats: SolverStats::default(),
            },
        }
    }

    fn solve(&mut self, k: usize, cfg: &SolveConfig, limits: Limits) -> Result<(SolveResult, Option<Vec<usize>>)> {
        match self {
            Backend::Zykov {
                solver,
                selectors,
                counter,
                graph,
            } => {
                let mut assumptions: Vec<Lit> = selectors.iter().map(|s| s.pos()).collect();
                if let Some(t) = counter {
                    assumptions.extend(t.at_most(k));
                } else {
                    let s = solver.new_var();
                    solver.observe(s);
                    solver.propagator_mut().set_budget(k, s);
                    selectors.push(s);
                    assumptions.push(s.neg());
                }
                solver.set_limits(limits);
                let res = solver.solve(&assumptions);
                let coloring = match res {
                    SolveResult::Sat => {
                        Some(decode_zykov_model(solver.model(), solver.propagator().map(), graph, k)?)
                    }
                    _ => None,
                };
                Ok((res, coloring))
            }
            Backend::Full {
                solver,
                map,
                counter,
                graph,
            } => {
                let assumptions: Vec<Lit> = counter.at_most(k).into_iter().collect();
                solver.set_limits(limits);
                let res = solver.solve(&assumptions);
                let coloring = match res {
                    SolveResult::Sat => Some(decode_zykov_model(solver.model(), map, graph, k)?),
                    _ => None,
                };
                Ok((res, coloring))
            }
            Backend::Assignment { graph, clique, stats } => {
                let enc = build_assignment(graph, k, clique);
                let mut solver: Solver = Solver::new();
                solver.set_check_contracts(cfg.check_invariants);
                enc.cnf.load_into(&mut solver);
                solver.set_limits(limits);
                let res = solver.solve(&[]);
                stats.absorb(solver.stats());
                let coloring = match res {
                    SolveResult::Sat => {
                        let c = enc.decode(solver.model())?;
                        if !graph.is_proper_coloring(&c) {
                            return Err(Error::InvalidColoring("assignment model".into()));
                        }
                        Some(c)
                    }
                    _ => None,
                };
                Ok((res, coloring))
            }
        }
    }

    fn solver_stats(&self) -> SolverStats {
        match self {
            Backend::Zykov { solver, .. } => solver.stats().clone(),
            Backend::Full { solver, .. } => solver.stats().clone(),
            Backend::Assignment { stats, .. } => stats.clone(),
        }
    }

    fn conflicts(&self) -> u64 {
        self.solver_stats().conflicts
    }

    fn decisions(&self) -> u64 {
        self.solver_stats().decisions
    }

    fn absorb_into(&self, stats: &mut RunStats) {
        stats.solver.absorb(&self.solver_stats());
        if let Backend::Zykov { solver, .. } = self {
            let p = solver.propagator();
            stats.zykov.absorb(p.stats());
            for w in p.witnesses() {
                if stats.witnesses.len() < 4096 && !stats.witnesses.contains(w) {
                    stats.witnesses.push(w.clone());
                }
            }
        }
    }
}

/// Static CNF for "at most `k` colors" on the unreduced graph: the
/// assignment encoding in assignment mode, the full Zykov encoding with the
/// bound asserted otherwise.
pub fn static_encoding(g: &Graph, k: usize, mode: Mode) -> Result<Cnf> {
    if k == 0 {
        return Err(Error::Config("k must be at least 1".into()));
    }
    Ok(match mode {
        Mode::Assignment => {
            let (_, order) = dsatur(g);
            let d = DenseGraph::from_graph(g);
            let mut clique = greedy_clique(&View::full(&d), &order, &[]).vertices;
            clique.truncate(k);
            build_assignment(g, k, &clique).cnf
        }
        _ => crate::encodings::build_full_zykov(g, k).cnf,
    })
}

/// Root bounds on the input graph.
struct RootBounds {
    clique: Vec<usize>,
    lower: usize,
    dsatur_coloring: Vec<usize>,
}

fn root_bounds(g: &Graph, cfg: &SolveConfig) -> RootBounds {
    let (dsatur_coloring, order) = dsatur(g);
    let d = DenseGraph::from_graph(g);
    let view = View::full(&d);
    let mut clique = greedy_clique(&view, &order, &[]);
    let m = mnts_clique(&view, MntsParams::ROOT, cfg.seed);
    if m.len() > clique.len() {
        clique = m;
    }
    let witness = mycielskian_bound(&view, &BoundWitness::from_clique(&clique), cfg.root_mycielski_rounds);
    debug_assert!(witness.verify(&view));
    RootBounds {
        lower: witness.bound.max(clique.len()),
        clique: clique.vertices,
        dsatur_coloring,
    }
}

/// Maps root information onto the reduced graph.
fn reduced_setup<'a>(red: &'a Reduction, root: &RootBounds, max_k: usize) -> Setup<'a> {
    let h = &red.graph;
    let clique: Vec<usize> = root.clique.iter().filter_map(|&v| red.reduced_id(v)).collect();
    let (_, order) = dsatur(h);
    let d = DenseGraph::from_graph(h);
    let clique = greedy_clique(&View::full(&d), &order, &clique).vertices;
    Setup {
        graph: h,
        order,
        clique,
        max_k,
    }
}

fn finish_coloring(g: &Graph, red: &Reduction, c: &[usize], k: usize) -> Result<Vec<usize>> {
    let full = normalize_coloring(&recover(red, c, k)?);
    if !g.is_proper_coloring(&full) || count_colors(&full) > k {
        return Err(Error::InvalidColoring(format!("recovered coloring exceeds {k} colors or is improper")));
    }
    Ok(full)
}

/// Computes the chromatic number of `g`.
pub fn solve_chromatic(g: &Graph, cfg: &SolveConfig) -> Result<SolveReport> {
    let start = Instant::now();
    let n = g.num_vertices();
    let mut stats = RunStats::default();
    if n == 0 {
        return Ok(SolveReport {
            outcome: Outcome::Optimal,
            chromatic_number: Some(0),
            lower_bound: 0,
            upper_bound: 0,
            coloring: Vec::new(),
            trajectory: Vec::new(),
            stats,
            seconds: 0.0,
        });
    }
    let root = root_bounds(g, cfg);
    let mut lb = root.lower;
    let mut best = normalize_coloring(&root.dsatur_coloring);
    let mut ub = count_colors(&best);
    stats.root_clique = root.clique.len();
    stats.root_bound = root.lower;
    stats.dsatur_colors = ub;
    info!("root bounds: clique {} lower {lb} upper {ub}", root.clique.len());

    let mut trajectory = Vec::new();
    let mut outcome = Outcome::Optimal;
    if lb < ub {
        let red = reduce(g, lb);
        stats.reduced_vertices = red.graph.num_vertices();
        stats.reduced_edges = red.graph.num_edges();
        debug!("reduced to {} vertices", red.graph.num_vertices());
        let setup = reduced_setup(&red, &root, ub - 1);
        let mut budget = Budget::new(cfg, start);
        let ks: Vec<usize> = match cfg.search {
            Search::BottomUp => (lb..ub).collect(),
            Search::TopDown => (lb..ub).rev().collect(),
        };
        let mut backend: Option<Backend> = None;
        for &k in &ks {
            if budget.exhausted() {
                outcome = Outcome::Timeout;
                break;
            }
            if backend.is_none() || !cfg.incremental {
                if let Some(b) = backend.take() {
                    b.absorb_into(&mut stats);
                }
                backend = Some(Backend::new(cfg, &setup));
            }
            let b = backend.as_mut().unwrap();
            let (c0, d0, t0) = (b.conflicts(), b.decisions(), Instant::now());
            let (res, coloring) = b.solve(k, cfg, budget.limits())?;
            let spent = b.conflicts() - c0;
            budget.spend(spent);
            trajectory.push(KStep {
                k,
                result: res,
                conflicts: spent,
                decisions: b.decisions() - d0,
                seconds: t0.elapsed().as_secs_f64(),
            });
            info!("k={k}: {res:?} ({spent} conflicts)");
            match (res, cfg.search) {
                (SolveResult::Unknown, _) => {
                    outcome = Outcome::Timeout;
                    break;
                }
                (SolveResult::Unsat, Search::BottomUp) => lb = k + 1,
                (SolveResult::Sat, Search::BottomUp) => {
                    best = finish_coloring(g, &red, &coloring.unwrap(), k)?;
                    ub = count_colors(&best);
                    if cfg.check_monotone && cfg.incremental && k < setup.max_k {
                        let (again, _) = b.solve(k + 1, cfg, Limits::default())?;
                        if again == SolveResult::Unsat {
                            stats.monotonicity_violations += 1;
                        }
                    }
                    break;
                }
                (SolveResult::Sat, Search::TopDown) => {
                    best = finish_coloring(g, &red, &coloring.unwrap(), k)?;
                    ub = count_colors(&best);
                }
                (SolveResult::Unsat, Search::TopDown) => {
                    lb = k + 1;
                    break;
                }
            }
        }
        if let Some(b) = backend {
            b.absorb_into(&mut stats);
        }
        if outcome == Outcome::Optimal {
            lb = ub;
        }
    }
    if !g.is_proper_coloring(&best) || count_colors(&best) != ub {
        return Err(Error::InvalidColoring("final coloring".into()));
    }
    Ok(SolveReport {
        outcome,
        chromatic_number: (outcome == Outcome::Optimal).then_some(ub),
        lower_bound: lb,
        upper_bound: ub,
        coloring: best,
        trajectory,
        stats,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Decides whether `g` has a proper coloring with at most `k` colors.
pub fn decide_k(g: &Graph, k: usize, cfg: &SolveConfig) -> Result<DecisionReport> {
    if k == 0 {
        return Err(Error::Config("k must be at least 1".into()));
    }
    let start = Instant::now();
    let mut stats = RunStats::default();
    let n = g.num_vertices();
    let done = |decision, stats| {
        Ok(DecisionReport {
            decision,
            stats,
            seconds: start.elapsed().as_secs_f64(),
        })
    };
    if k >= n {
        return done(Decision::Sat((0..n).collect()), stats);
    }
    let root = root_bounds(g, cfg);
    stats.root_clique = root.clique.len();
    stats.root_bound = root.lower;
    if root.lower > k {
        return done(Decision::Unsat, stats);
    }
    let dsatur_colors = count_colors(&root.dsatur_coloring);
    stats.dsatur_colors = dsatur_colors;
    if dsatur_colors <= k {
        return done(Decision::Sat(normalize_coloring(&root.dsatur_coloring)), stats);
    }
    let red = reduce(g, root.lower);
    stats.reduced_vertices = red.graph.num_vertices();
    stats.reduced_edges = red.graph.num_edges();
    let setup = reduced_setup(&red, &root, k);
    let budget = Budget::new(cfg, start);
    let mut backend = Backend::new(cfg, &setup);
    let (res, coloring) = backend.solve(k, cfg, budget.limits())?;
    backend.absorb_into(&mut stats);
    let decision = match res {
        SolveResult::Sat => Decision::Sat(finish_coloring(g, &red, &coloring.unwrap(), k)?),
        SolveResult::Unsat => Decision::Unsat,
        SolveResult::Unknown => Decision::Unknown,
    };
    done(decision, stats)
}
