//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use zykov_color::batch::{er_seed, parse_corpus_spec, run_batch, write_csv, InstanceSpec, Parallelism};
use zykov_color::driver::{solve_chromatic, Mode, Outcome, SolveConfig, SolveReport};
use zykov_color::graph::{erdos_renyi, named, render_dimacs};
use zykov_color::oracle::oracle_chromatic;
use zykov_color::sat::{Cnf, Lit, SolveResult, Solver, Totalizer};
use zykov_color::Graph;

const DENSITIES: [f64; 3] = [0.2, 0.5, 0.8];
const ABLATION_BUDGET: u64 = 1_000_000;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn checked(mode: Mode) -> SolveConfig {
    SolveConfig {
        check_invariants: true,
        check_monotone: true,
        ..SolveConfig::with_mode(mode)
    }
}

/// Criterion 1 corpus: n cycles through 6..=14, p through the density list.
fn small_corpus() -> Vec<InstanceSpec> {
    (0..500)
        .map(|i| InstanceSpec::ErdosRenyi {
            n: 6 + i % 9,
            p: DENSITIES[(i / 9) % 3],
            seed: i as u64,
        })
        .collect()
}

fn ablation_corpus() -> Vec<Graph> {
    (0..50).map(|i| erdos_renyi(35, 0.5, er_seed(0, 35, 0.5, i)).unwrap()).collect()
}

struct SmallRun {
    graph: Graph,
    report: SolveReport,
}

fn run_small() -> Vec<SmallRun> {
    let cfg = checked(Mode::Zykov);
    small_corpus()
        .iter()
        .map(|spec| {
            let graph = spec.load().unwrap();
            let report = solve_chromatic(&graph, &cfg).unwrap();
            SmallRun { graph, report }
        })
        .collect()
}

fn oracle_equivalence(runs: &[SmallRun]) -> Verdict {
    let mut bad = Vec::new();
    for (i, r) in runs.iter().enumerate() {
        let want = oracle_chromatic(&r.graph).unwrap();
        let ok = r.report.chromatic_number == Some(want)
            && r.graph.is_proper_coloring(&r.report.coloring)
            && zykov_color::graph::count_colors(&r.report.coloring) == want;
        if !ok {
            bad.push(i);
        }
    }
    verdict(bad.is_empty(), format!("{}/{} agree with the oracle, mismatches {:?}", runs.len() - bad.len(), runs.len(), bad))
}

fn mode_agreement() -> Verdict {
    let graphs: Vec<Graph> = (0..100)
        .map(|i| erdos_renyi(10 + i % 11, [0.3, 0.5, 0.7][i % 3], 10_000 + i as u64).unwrap())
        .collect();
    let mut bad = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let chis: Vec<Option<usize>> = Mode::ALL
            .iter()
            .map(|&m| solve_chromatic(g, &SolveConfig::with_mode(m)).unwrap().chromatic_number)
            .collect();
        if chis[0].is_none() || chis.iter().any(|c| *c != chis[0]) {
            bad.push((i, chis));
        }
    }
    verdict(bad.is_empty(), format!("{} graphs, n <= 20, disagreements {:?}", graphs.len(), bad))
}

fn named_instances() -> Verdict {
    let mut cases: Vec<(String, Graph, usize)> = vec![
        ("C5".into(), named::cycle(5), 3),
        ("Petersen".into(), named::petersen(), 3),
        ("Grotzsch".into(), named::grotzsch(), 4),
    ];
    for n in 1..=8 {
        cases.push((format!("K{n}"), named::complete(n), n));
    }
    let mut bad = Vec::new();
    for (name, g, want) in &cases {
        let oracle = oracle_chromatic(g).unwrap();
        let got = solve_chromatic(g, &checked(Mode::Zykov)).unwrap().chromatic_number;
        if oracle != *want || got != Some(*want) {
            bad.push(name.clone());
        }
    }
    let c5 = oracle_chromatic(&named::cycle(5)).unwrap();
    let mycielski_step = oracle_chromatic(&named::mycielskian(&named::cycle(5))).unwrap() == c5 + 1;
    verdict(
        bad.is_empty() && mycielski_step,
        format!("{} graphs, mismatches {:?}, Mycielskian step {}", cases.len(), bad, mycielski_step),
    )
}

fn contract_suite(runs: &[SmallRun]) -> Verdict {
    let z: u64 = runs.iter().map(|r| r.report.stats.zykov.violations()).sum();
    let s: u64 = runs.iter().map(|r| r.report.stats.solver.contract_violations()).sum();
    let reasons: u64 = runs.iter().map(|r| r.report.stats.zykov.reasons).sum();
    let prunes: u64 = runs
        .iter()
        .map(|r| {
            let z = &r.report.stats.zykov;
            z.clique_prunes + z.mnts_prunes + z.mycielski_prunes + z.positive_prunes
        })
        .sum();
    verdict(
        z + s == 0,
        format!("{reasons} reasons, {prunes} prunes checked, propagator violations {z}, solver violations {s}"),
    )
}

fn projected_models(size: usize, k: usize) -> BTreeSet<Vec<bool>> {
    let mut cnf = Cnf::new();
    let inputs: Vec<Lit> = (0..size).map(|_| cnf.new_var().pos()).collect();
    let tot = Totalizer::build(&mut cnf, &inputs, None);
    let mut solver = Solver::new();
    cnf.load_into(&mut solver);
    let assumptions: Vec<Lit> = tot.at_most(k).into_iter().collect();
    let mut seen = BTreeSet::new();
    while solver.solve(&assumptions) == SolveResult::Sat {
        let x: Vec<bool> = inputs.iter().map(|&l| solver.model_value(l)).collect();
        let block: Vec<Lit> = inputs.iter().zip(&x).map(|(&l, &b)| if b { !l } else { l }).collect();
        seen.insert(x);
        if !solver.add_clause(&block) {
            break;
        }
    }
    seen
}

fn totalizer_exhaustive() -> Verdict {
    let mut checked = 0;
    let mut bad = Vec::new();
    for size in 1..=6 {
        for k in 0..=size {
            let want: BTreeSet<Vec<bool>> = (0u32..1 << size)
                .filter(|x| x.count_ones() as usize <= k)
                .map(|x| (0..size).map(|i| x >> i & 1 == 1).collect())
                .collect();
            if projected_models(size, k) != want {
                bad.push((size, k));
            }
            checked += 1;
        }
    }
    verdict(bad.is_empty(), format!("{checked} (size, k) pairs, mismatches {bad:?}"))
}

struct AblationRun {
    solved: [usize; 3],
    reports: Vec<SolveReport>,
}

fn run_ablation() -> AblationRun {
    let graphs = ablation_corpus();
    let mut solved = [0; 3];
    let mut reports = Vec::new();
    for (slot, mode) in [Mode::Zykov, Mode::TransitivityOnly, Mode::FullZykov].into_iter().enumerate() {
        let cfg = SolveConfig {
            conflict_limit: Some(ABLATION_BUDGET),
            check_invariants: true,
            ..SolveConfig::with_mode(mode)
        };
        for g in &graphs {
            let r = solve_chromatic(g, &cfg).unwrap();
            if r.outcome == Outcome::Optimal {
                solved[slot] += 1;
            }
            if mode == Mode::Zykov {
                reports.push(r);
            }
        }
    }
    AblationRun { solved, reports }
}

fn ablation_trend(a: &AblationRun) -> Verdict {
    let [z, t, f] = a.solved;
    verdict(
        z >= t && t >= f,
        format!("solved of 50 G(35, 0.5): zykov {z}, transitivity-only {t}, full-zykov {f}"),
    )
}

fn witness_soundness(runs: &[SmallRun], ablation: &AblationRun) -> Verdict {
    let reports = runs.iter().map(|r| &r.report).chain(&ablation.reports);
    let mut failures = 0;
    let mut audited = 0;
    let mut structural = 0;
    let mut logged = BTreeSet::new();
    for r in reports {
        structural += r.stats.zykov.witness_failures;
        for w in &r.stats.witnesses {
            if logged.insert((w.num_vertices, w.graph_edges.clone(), w.bound)) {
                audited += 1;
                if oracle_chromatic(&w.graph()).unwrap() < w.bound {
                    failures += 1;
                }
            }
        }
    }
    verdict(
        failures == 0 && structural == 0,
        format!("{audited} distinct witnesses (<= 12 vertices) audited, oracle failures {failures}, structural failures {structural}"),
    )
}

fn incremental_soundness(runs: &[SmallRun]) -> Verdict {
    let mono: u64 = runs.iter().map(|r| r.report.stats.monotonicity_violations).sum();
    let analysis: u64 = runs.iter().map(|r| r.report.stats.solver.analysis_violations).sum();
    let mut trajectory_bad = 0;
    for r in runs {
        let results: Vec<SolveResult> = r.report.trajectory.iter().map(|s| s.result).collect();
        if let Some(first_sat) = results.iter().position(|&x| x == SolveResult::Sat) {
            if results[first_sat..].contains(&SolveResult::Unsat) {
                trajectory_bad += 1;
            }
        }
    }
    verdict(
        mono + analysis + trajectory_bad == 0,
        format!("monotonicity {mono}, disabled-selector conflicts {analysis}, bad trajectories {trajectory_bad}"),
    )
}

fn suite_csv() -> Vec<u8> {
    let rows = run_batch(&small_corpus(), &[checked(Mode::Zykov)], Parallelism::Parallel);
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf, false).unwrap();
    buf
}

fn determinism(runs: &[SmallRun]) -> Verdict {
    let again = run_small();
    let same_chi = runs.iter().zip(&again).all(|(a, b)| a.report.chromatic_number == b.report.chromatic_number);
    let same_conflicts = runs
        .iter()
        .zip(&again)
        .all(|(a, b)| a.report.stats.solver.conflicts == b.report.stats.solver.conflicts);
    let same_csv = suite_csv() == suite_csv();
    verdict(
        same_chi && same_conflicts && same_csv,
        format!("chi identical {same_chi}, conflicts identical {same_conflicts}, CSV identical {same_csv}"),
    )
}

fn large_instance() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let g = erdos_renyi(1000, 0.97, 98).unwrap();
    let path = dir.path().join("dense1000.col");
    std::fs::write(&path, render_dimacs(&g)).unwrap();
    let cfg = SolveConfig {
        conflict_limit: Some(2_000),
        time_limit: Some(std::time::Duration::from_secs(10)),
        ..SolveConfig::default()
    };
    let start = Instant::now();
    let rows = run_batch(&[InstanceSpec::File(path)], &[cfg], Parallelism::Sequential);
    let r = &rows[0];
    let bounds_ok = matches!((r.lower, r.upper), (Some(l), Some(u)) if l <= u && u <= r.n);
    let spec_ok = parse_corpus_spec("er:standard").map(|v| v.len()).ok() == Some(5000);
    verdict(
        r.n == 1000 && r.outcome != "error" && bounds_ok && spec_ok,
        format!(
            "n={} m={} outcome {} bounds [{:?}, {:?}] in {:.1}s; standard ER grid enumerates 5000",
            r.n,
            r.m,
            r.outcome,
            r.lower,
            r.upper,
            start.elapsed().as_secs_f64()
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let small = run_small();
    let ablation = run_ablation();
    let results = [
        ("1 oracle equivalence", oracle_equivalence(&small)),
        ("2 mode agreement", mode_agreement()),
        ("3 named instances", named_instances()),
        ("4 propagator contracts", contract_suite(&small)),
        ("5 totalizer exhaustive", totalizer_exhaustive()),
        ("6 pruning ablation trend", ablation_trend(&ablation)),
        ("7 bound-witness soundness", witness_soundness(&small, &ablation)),
        ("8 incremental soundness", incremental_soundness(&small)),
        ("9 determinism", determinism(&small)),
        ("10 large instance under budget", large_instance()),
    ];
    let mut failed = 0;
    for (name, v) in &results {
        println!("{} criterion {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.pass);
    }
    println!("acceptance: {} passed, {failed} failed in {:.1}s", results.len() - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
