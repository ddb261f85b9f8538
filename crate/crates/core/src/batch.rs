//! Benchmark corpora, batch runs over configuration matrices, and CSV
//! output.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use log::warn;
use serde::Serialize;

use crate::driver::{solve_chromatic, Mode, Outcome, Search, SolveConfig};
use crate::error::{Error, Result};
use crate::graph::{erdos_renyi, parse_dimacs, Graph};
use crate::zykov::DecisionStrategy;

/// Bumped whenever the column set changes.
pub const CSV_SCHEMA: &str = "v1";

pub const CSV_HEADER: [&str; 22] = [
    "schema",
    "instance",
    "n",
    "m",
    "mode",
    "flags",
    "seed",
    "outcome",
    "chromatic",
    "lower",
    "upper",
    "seconds",
    "conflicts",
    "decisions",
    "propagations",
    "clique_prunes",
    "mnts_prunes",
    "mycielski_prunes",
    "positive_prunes",
    "model_refutations",
    "violations",
    "message",
];

/// Columns that depend on wall-clock time.
pub const TIMING_COLUMNS: [&str; 1] = ["seconds"];

/// Solved-within thresholds for the summary, in seconds.
pub const SUMMARY_THRESHOLDS: [f64; 5] = [1.0, 10.0, 60.0, 600.0, 3600.0];

pub const STANDARD_ER_SIZES: [usize; 5] = [70, 80, 90, 100, 110];
pub const STANDARD_ER_DENSITIES: [f64; 10] = [0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5, 0.7, 0.9];

#[derive(Clone, Debug, PartialEq)]
pub enum InstanceSpec {
    File(PathBuf),
    ErdosRenyi { n: usize, p: f64, seed: u64 },
}

impl InstanceSpec {
    pub fn name(&self) -> String {
        match self {
            InstanceSpec::File(p) => p.file_name().map_or_else(|| p.display().to_string(), |f| f.to_string_lossy().into_owned()),
            InstanceSpec::ErdosRenyi { n, p, seed } => format!("er_n{n}_p{p}_s{seed}"),
        }
    }

    pub fn load(&self) -> Result<Graph> {
        match self {
            InstanceSpec::File(path) => Ok(parse_dimacs(&fs::read_to_string(path)?)?),
            InstanceSpec::ErdosRenyi { n, p, seed } => Ok(erdos_renyi(*n, *p, *seed)?),
        }
    }
}

/// Seed of the `index`-th graph for size `n` and density `p`.
pub fn er_seed(base: u64, n: usize, p: f64, index: usize) -> u64 {
    let p_milli = (p * 1000.0).round() as u64;
    base.wrapping_mul(1_000_003)
        .wrapping_add((n as u64) << 32)
        .wrapping_add(p_milli << 16)
        .wrapping_add(index as u64)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::CorpusSpec(format!("bad {what} `{x}`"))))
        .collect()
}

fn parse_sizes(s: &str) -> Result<Vec<usize>> {
    if let Some((range, step)) = s.split_once('/').map(|(r, st)| (r, Some(st))).or(Some((s, None))) {
        if let Some((lo, hi)) = range.split_once("..") {
            let lo: usize = lo.parse().map_err(|_| Error::CorpusSpec(format!("bad size `{lo}`")))?;
            let hi: usize = hi.parse().map_err(|_| Error::CorpusSpec(format!("bad size `{hi}`")))?;
            let step: usize = match step {
                Some(st) => st.parse().map_err(|_| Error::CorpusSpec(format!("bad step `{st}`")))?,
                None => 1,
            };
            if step == 0 || lo > hi {
                return Err(Error::CorpusSpec(format!("empty size range `{s}`")));
            }
            return Ok((lo..=hi).step_by(step).collect());
        }
    }
    parse_list(s, "size")
}

/// Parses a generator spec.
///
/// `er:n=70..110/10:p=0.1,0.5:count=100[:base=0]` enumerates `count`
/// graphs for every size and density; `er:standard` is the 5 x 10 grid of
/// [`STANDARD_ER_SIZES`] and [`STANDARD_ER_DENSITIES`] with 100 graphs each.
pub fn parse_corpus_spec(spec: &str) -> Result<Vec<InstanceSpec>> {
    let rest = spec
        .strip_prefix("er:")
        .ok_or_else(|| Error::CorpusSpec(format!("unknown generator in `{spec}`")))?;
    let (mut sizes, mut densities, mut count, mut base) = (None, None, None, 0u64);
    if rest == "standard" {
        sizes = Some(STANDARD_ER_SIZES.to_vec());
        densities = Some(STANDARD_ER_DENSITIES.to_vec());
        count = Some(100);
    } else {
        for part in rest.split(':') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::CorpusSpec(format!("expected key=value, got `{part}`")))?;
            match key {
                "n" => sizes = Some(parse_sizes(value)?),
                "p" => densities = Some(parse_list(value, "density")?),
                "count" => count = Some(value.parse().map_err(|_| Error::CorpusSpec(format!("bad count `{value}`")))?),
                "base" => base = value.parse().map_err(|_| Error::CorpusSpec(format!("bad base `{value}`")))?,
                other => return Err(Error::CorpusSpec(format!("unknown key `{other}`"))),
            }
        }
    }
    let sizes = sizes.ok_or_else(|| Error::CorpusSpec("missing n=".into()))?;
    let densities: Vec<f64> = densities.ok_or_else(|| Error::CorpusSpec("missing p=".into()))?;
    if let Some(p) = densities.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::CorpusSpec(format!("density {p} outside [0, 1]")));
    }
    let count: usize = count.unwrap_or(1);
    let mut out = Vec::with_capacity(sizes.len() * densities.len() * count);
    for &n in &sizes {
        for &p in &densities {
            for i in 0..count {
                out.push(InstanceSpec::ErdosRenyi {
                    n,
                    p,
                    seed: er_seed(base, n, p, i),
                });
            }
        }
    }
    Ok(out)
}

/// Regular files of `dir`, sorted by name.
pub fn corpus_from_dir(dir: &Path) -> Result<Vec<InstanceSpec>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    Ok(files.into_iter().map(InstanceSpec::File).collect())
}

/// Compact description of the non-mode settings, stable across runs.
pub fn config_flags(cfg: &SolveConfig) -> String {
    let mut f = vec![
        match cfg.search {
            Search::BottomUp => "bottom-up",
            Search::TopDown => "top-down",
        }
        .to_string(),
        if cfg.incremental { "incremental" } else { "non-incremental" }.to_string(),
    ];
    if cfg.mode == Mode::Zykov {
        f.push(if cfg.mnts { "mnts" } else { "no-mnts" }.into());
        f.push(if cfg.dominated_hints { "dominated" } else { "no-dominated" }.into());
        f.push(
            match cfg.decisions {
                DecisionStrategy::Solver => "decide-default",
                DecisionStrategy::Clique => "decide-clique",
            }
            .into(),
        );
    }
    if let Some(c) = cfg.conflict_limit {
        f.push(format!("conflicts<={c}"));
    }
    if let Some(t) = cfg.time_limit {
        f.push(format!("time<={}s", t.as_secs_f64()));
    }
    f.join(" ")
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BatchRow {
    pub schema: String,
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub mode: String,
    pub flags: String,
    pub seed: u64,
    /// `optimal`, `timeout` or `error`.
    pub outcome: String,
    pub chromatic: Option<usize>,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
    pub seconds: f64,
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub clique_prunes: u64,
    pub mnts_prunes: u64,
    pub mycielski_prunes: u64,
    pub positive_prunes: u64,
    pub model_refutations: u64,
    pub violations: u64,
    pub message: String,
}

impl BatchRow {
    pub fn solved(&self) -> bool {
        self.outcome == "optimal"
    }
}

pub fn run_instance(spec: &InstanceSpec, cfg: &SolveConfig) -> BatchRow {
    let mut row = BatchRow {
        schema: CSV_SCHEMA.into(),
        instance: spec.name(),
        mode: cfg.mode.to_string(),
        flags: config_flags(cfg),
        seed: cfg.seed,
        ..BatchRow::default()
    };
    let g = match spec.load() {
        Ok(g) => g,
        Err(e) => {
            warn!("skipping {}: {e}", row.instance);
            row.outcome = "error".into();
            row.message = e.to_string();
            return row;
        }
    };
    row.n = g.num_vertices();
    row.m = g.num_edges();
    match solve_chromatic(&g, cfg) {
        Ok(r) => {
            row.outcome = match r.outcome {
                Outcome::Optimal => "optimal",
                Outcome::Timeout => "timeout",
            }
            .into();
            row.chromatic = r.chromatic_number;
            row.lower = Some(r.lower_bound);
            row.upper = Some(r.upper_bound);
            row.seconds = r.seconds;
            let s = &r.stats;
            row.conflicts = s.solver.conflicts;
            row.decisions = s.solver.decisions;
            row.propagations = s.solver.propagations;
            row.clique_prunes = s.zykov.clique_prunes;
            row.mnts_prunes = s.zykov.mnts_prunes;
            row.mycielski_prunes = s.zykov.mycielski_prunes;
            row.positive_prunes = s.zykov.positive_prunes;
            row.model_refutations = s.zykov.model_refutations;
            row.violations = s.violations();
        }
        Err(e) => {
            row.outcome = "error".into();
            row.message = e.to_string();
        }
    }
    row
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    /// On the rayon pool; sequential when built without the `parallel`
    /// feature.
    Parallel,
}

/// Runs every configuration on every instance. Rows come out in
/// instance-major order regardless of parallelism.
pub fn run_batch(instances: &[InstanceSpec], configs: &[SolveConfig], how: Parallelism) -> Vec<BatchRow> {
    let jobs: Vec<(&InstanceSpec, &SolveConfig)> = instances
        .iter()
        .flat_map(|i| configs.iter().map(move |c| (i, c)))
        .collect();
    map_jobs(&jobs, how, |(i, c)| run_instance(i, c))
}

/// Maps `f` over `items` in order, on the rayon pool when requested and
/// available.
pub fn map_jobs<T: Sync, R: Send>(items: &[T], how: Parallelism, f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    match how {
        #[cfg(feature = "parallel")]
        Parallelism::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Writes the header and one line per row.
pub fn write_csv<W: Write>(rows: &[BatchRow], out: W, with_timing: bool) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let mut r = r.clone();
        if !with_timing {
            r.seconds = 0.0;
        }
        w.serialize(&r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub mode: String,
    pub flags: String,
    pub within_seconds: f64,
    pub solved: usize,
    pub total: usize,
}

/// Instances solved within each threshold, per configuration, in order of
/// first appearance.
pub fn summarize(rows: &[BatchRow]) -> Vec<SummaryRow> {
    let mut keys: Vec<(String, String)> = Vec::new();
    for r in rows {
        let k = (r.mode.clone(), r.flags.clone());
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    let mut out = Vec::new();
    for (mode, flags) in keys {
        let mine: Vec<&BatchRow> = rows.iter().filter(|r| r.mode == mode && r.flags == flags).collect();
        for &t in &SUMMARY_THRESHOLDS {
            out.push(SummaryRow {
                mode: mode.clone(),
                flags: flags.clone(),
                within_seconds: t,
                solved: mine.iter().filter(|r| r.solved() && r.seconds <= t).count(),
                total: mine.len(),
            });
        }
    }
    out
}

pub fn write_summary<W: Write>(rows: &[SummaryRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
