use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use serde_json::json;

use zykov_color::batch::{
    corpus_from_dir, parse_corpus_spec, run_batch, summarize, write_csv, write_summary, Parallelism,
};
use zykov_color::driver::{
    decide_k, solve_chromatic, static_encoding, Decision, Mode, Outcome, RunStats, Search, SolveConfig,
};
use zykov_color::graph::parse_dimacs;
use zykov_color::zykov::DecisionStrategy;
use zykov_color::Graph;

const EXIT_SOLVED: u8 = 0;
const EXIT_USAGE: u8 = 2;
const EXIT_SAT: u8 = 10;
const EXIT_UNSAT: u8 = 20;
const EXIT_TIMEOUT: u8 = 30;

#[derive(Parser)]
#[command(name = "color", version, about = "Exact graph coloring with a Zykov-tree CDCL propagator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the chromatic number of a DIMACS graph.
    Solve {
        #[command(flatten)]
        opts: SolveOpts,
        #[command(flatten)]
        out: OutputOpts,
        file: PathBuf,
    },
    /// Decide whether a DIMACS graph is k-colorable.
    Decide {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        opts: SolveOpts,
        #[command(flatten)]
        out: OutputOpts,
        /// Write the static CNF for this k to a file.
        #[arg(long, value_name = "PATH")]
        dump_cnf: Option<PathBuf>,
        file: PathBuf,
    },
    /// Run a configuration matrix over a corpus and write CSV rows.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Zykov,
    Assignment,
    #[value(alias = "full-zykov")]
    Full,
    TransitivityOnly,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Zykov => Mode::Zykov,
            ModeArg::Assignment => Mode::Assignment,
            ModeArg::Full => Mode::FullZykov,
            ModeArg::TransitivityOnly => Mode::TransitivityOnly,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DecisionArg {
    Default,
    Clique,
}

#[derive(Args, Clone)]
struct SolveOpts {
    #[arg(long, value_enum, default_value = "zykov")]
    mode: ModeArg,
    #[arg(long)]
    no_mnts: bool,
    #[arg(long, value_enum, default_value = "default")]
    decision: DecisionArg,
    #[arg(long)]
    no_dominated: bool,
    #[arg(long)]
    non_incremental: bool,
    #[arg(long)]
    top_down: bool,
    /// Wall-clock budget in seconds.
    #[arg(long, value_name = "SECONDS")]
    time_limit: Option<f64>,
    /// Conflict budget over the whole run.
    #[arg(long)]
    conflict_limit: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Runtime contract checks.
    #[arg(long)]
    check: bool,
}

impl SolveOpts {
    fn config(&self) -> Result<SolveConfig, String> {
        let time_limit = match self.time_limit {
            Some(t) if !(t.is_finite() && t >= 0.0) => return Err(format!("invalid time limit {t}")),
            t => t.map(Duration::from_secs_f64),
        };
        Ok(SolveConfig {
            mode: self.mode.into(),
            search: if self.top_down { Search::TopDown } else { Search::BottomUp },
            incremental: !self.non_incremental,
            mnts: !self.no_mnts,
            dominated_hints: !self.no_dominated,
            decisions: match self.decision {
                DecisionArg::Default => DecisionStrategy::Solver,
                DecisionArg::Clique => DecisionStrategy::Clique,
            },
            time_limit,
            conflict_limit: self.conflict_limit,
            seed: self.seed,
            check_invariants: self.check,
            check_monotone: self.check,
            ..SolveConfig::default()
        })
    }
}

#[derive(Args, Clone)]
struct OutputOpts {
    /// Print statistics as one JSON line.
    #[arg(long)]
    stats_json: bool,
    #[arg(long)]
    print_coloring: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of DIMACS files.
    #[arg(long, conflicts_with = "generate", required_unless_present = "generate")]
    dir: Option<PathBuf>,
    /// Generator spec, e.g. `er:n=70..110/10:p=0.1,0.5:count=100` or `er:standard`.
    #[arg(long)]
    generate: Option<String>,
    /// Modes to run; each one with the options below.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "zykov")]
    modes: Vec<ModeArg>,
    /// Run the ablation matrix instead of `--modes`.
    #[arg(long)]
    ablation: bool,
    #[command(flatten)]
    opts: SolveOpts,
    /// CSV output (stdout when absent).
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Solved-within-t summary CSV.
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Omit wall-clock columns (zeroed) for diffable output.
    #[arg(long)]
    no_timing: bool,
    #[arg(long)]
    sequential: bool,
}

fn ablation_matrix(base: &SolveConfig) -> Vec<SolveConfig> {
    let z = SolveConfig {
        mode: Mode::Zykov,
        ..base.clone()
    };
    vec![
        z.clone(),
        SolveConfig { mnts: false, ..z.clone() },
        SolveConfig {
            decisions: DecisionStrategy::Clique,
            ..z.clone()
        },
        SolveConfig {
            dominated_hints: false,
            ..z.clone()
        },
        SolveConfig {
            incremental: false,
            ..z.clone()
        },
        SolveConfig {
            search: Search::TopDown,
            ..z.clone()
        },
        SolveConfig {
            mode: Mode::FullZykov,
            ..z.clone()
        },
        SolveConfig {
            mode: Mode::TransitivityOnly,
            ..z
        },
    ]
}

fn read_graph(path: &Path) -> Result<Graph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_dimacs(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn print_stats(stats: &RunStats, seconds: f64, json_line: bool) {
    let s = &stats.solver;
    let z = &stats.zykov;
    if json_line {
        println!("{}", json!({ "seconds": seconds, "stats": stats }));
        return;
    }
    println!("c time {seconds:.3}s");
    println!("c root clique {}, root bound {}, dsatur {}", stats.root_clique, stats.root_bound, stats.dsatur_colors);
    println!("c reduced to {} vertices, {} edges", stats.reduced_vertices, stats.reduced_edges);
    println!(
        "c conflicts {}, decisions {}, propagations {}, restarts {}",
        s.conflicts, s.decisions, s.propagations, s.restarts
    );
    println!(
        "c prunes: clique {}, mnts {}, mycielski {}, positive {}",
        z.clique_prunes, z.mnts_prunes, z.mycielski_prunes, z.positive_prunes
    );
    println!("c contract violations {}", stats.violations());
}

fn print_coloring(coloring: &[usize]) {
    let line: Vec<String> = coloring.iter().map(|c| (c + 1).to_string()).collect();
    println!("coloring: {}", line.join(" "));
}

fn run_solve(opts: &SolveOpts, out: &OutputOpts, file: &Path) -> Result<u8, String> {
    let cfg = opts.config()?;
    let g = read_graph(file)?;
    info!("{}: n={} m={}", file.display(), g.num_vertices(), g.num_edges());
    let r = solve_chromatic(&g, &cfg).map_err(|e| e.to_string())?;
    let code = match r.outcome {
        Outcome::Optimal => {
            println!("chromatic number: {}", r.chromatic_number.unwrap_or(r.upper_bound));
            EXIT_SOLVED
        }
        Outcome::Timeout => {
            println!("timeout: {} <= chromatic number <= {}", r.lower_bound, r.upper_bound);
            EXIT_TIMEOUT
        }
    };
    if out.print_coloring && !r.coloring.is_empty() {
        print_coloring(&r.coloring);
    }
    print_stats(&r.stats, r.seconds, out.stats_json);
    Ok(code)
}

fn run_decide(opts: &SolveOpts, out: &OutputOpts, k: usize, dump: Option<&Path>, file: &Path) -> Result<u8, String> {
    let cfg = opts.config()?;
    let g = read_graph(file)?;
    if let Some(path) = dump {
        let cnf = static_encoding(&g, k, cfg.mode).map_err(|e| e.to_string())?;
        fs::write(path, cnf.to_dimacs()).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let r = decide_k(&g, k, &cfg).map_err(|e| e.to_string())?;
    let code = match &r.decision {
        Decision::Sat(c) => {
            println!("{k}-colorable: yes");
            if out.print_coloring {
                print_coloring(c);
            }
            EXIT_SAT
        }
        Decision::Unsat => {
            println!("{k}-colorable: no");
            EXIT_UNSAT
        }
        Decision::Unknown => {
            println!("{k}-colorable: unknown");
            EXIT_TIMEOUT
        }
    };
    print_stats(&r.stats, r.seconds, out.stats_json);
    Ok(code)
}

fn run_bench(args: &BenchArgs) -> Result<u8, String> {
    let base = args.opts.config()?;
    let instances = match (&args.dir, &args.generate) {
        (Some(d), _) => corpus_from_dir(d).map_err(|e| format!("{}: {e}", d.display()))?,
        (None, Some(spec)) => parse_corpus_spec(spec).map_err(|e| e.to_string())?,
        (None, None) => return Err("need --dir or --generate".into()),
    };
    let configs = if args.ablation {
        ablation_matrix(&base)
    } else {
        args.modes
            .iter()
            .map(|&m| SolveConfig {
                mode: m.into(),
                ..base.clone()
            })
            .collect()
    };
    info!("{} instances x {} configurations", instances.len(), configs.len());
    let how = if args.sequential {
        Parallelism::Sequential
    } else {
        Parallelism::Parallel
    };
    let rows = run_batch(&instances, &configs, how);
    let timing = !args.no_timing;
    match &args.out {
        Some(p) => {
            let f = fs::File::create(p).map_err(|e| format!("{}: {e}", p.display()))?;
            write_csv(&rows, io::BufWriter::new(f), timing).map_err(|e| e.to_string())?;
        }
        None => write_csv(&rows, io::stdout().lock(), timing).map_err(|e| e.to_string())?,
    }
    if let Some(p) = &args.summary {
        let f = fs::File::create(p).map_err(|e| format!("{}: {e}", p.display()))?;
        write_summary(&summarize(&rows), io::BufWriter::new(f)).map_err(|e| e.to_string())?;
    }
    Ok(EXIT_SOLVED)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_SOLVED });
        }
    };
    let result = match &cli.command {
        Command::Solve { opts, out, file } => run_solve(opts, out, file),
        Command::Decide {
            k,
            opts,
            out,
            dump_cnf,
            file,
        } => run_decide(opts, out, *k, dump_cnf.as_deref(), file),
        Command::Bench(args) => run_bench(args),
    };
    let _ = io::stdout().flush();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
