use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use zykov_color::graph::{erdos_renyi, named, render_dimacs};

fn color(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_color")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_graph(dir: &Path, name: &str, g: &zykov_color::Graph) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, render_dimacs(g)).unwrap();
    p
}

#[test]
fn solve_prints_chromatic_number() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write_graph(dir.path(), "c5.col", &named::cycle(5));
    for mode in ["zykov", "assignment", "full", "full-zykov", "transitivity-only"] {
        let o = color(&["solve", "--mode", mode, "--print-coloring", c5.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{mode}");
        let out = stdout(&o);
        assert!(out.contains("chromatic number: 3"), "{out}");
        let line = out.lines().find(|l| l.starts_with("coloring:")).unwrap();
        let colors: Vec<usize> = line[9..].split_whitespace().map(|c| c.parse::<usize>().unwrap() - 1).collect();
        assert!(named::cycle(5).is_proper_coloring(&colors));
    }
}

#[test]
fn ablation_flags_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_graph(dir.path(), "petersen.col", &named::petersen());
    for flags in [
        &["--no-mnts"][..],
        &["--decision", "clique"],
        &["--decision", "default"],
        &["--no-dominated"],
        &["--non-incremental"],
        &["--top-down"],
        &["--seed", "7", "--check"],
    ] {
        let mut args = vec!["solve"];
        args.extend_from_slice(flags);
        args.push(p.to_str().unwrap());
        let o = color(&args);
        assert_eq!(o.status.code(), Some(0), "{flags:?}");
        assert!(stdout(&o).contains("chromatic number: 3"));
    }
}

#[test]
fn decide_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write_graph(dir.path(), "c5.col", &named::cycle(5));
    let c5 = c5.to_str().unwrap();
    assert_eq!(color(&["decide", "--k", "2", c5]).status.code(), Some(20));
    assert_eq!(color(&["decide", "--k", "3", c5]).status.code(), Some(10));
    assert_eq!(color(&["decide", "--k", "3", "--mode", "assignment", c5]).status.code(), Some(10));
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.col");
    fs::write(&bad, "p edge 2 1\ne 1 3\n").unwrap();
    let c5 = write_graph(dir.path(), "c5.col", &named::cycle(5));
    assert_eq!(color(&["solve", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(color(&["solve", "/nonexistent/g.col"]).status.code(), Some(2));
    assert_eq!(color(&["solve", "--bogus", c5.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(color(&["solve", "--mode", "greedy", c5.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(color(&["decide", c5.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(color(&["decide", "--k", "0", c5.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(color(&[]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_30_with_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "g.col", &erdos_renyi(60, 0.5, 11).unwrap());
    let o = color(&["solve", "--mode", "assignment", "--conflict-limit", "10", "--time-limit", "60", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(30));
    let out = stdout(&o);
    let line = out.lines().find(|l| l.starts_with("timeout:")).unwrap();
    let nums: Vec<usize> = line.split_whitespace().filter_map(|w| w.parse().ok()).collect();
    assert_eq!(nums.len(), 2);
    assert!(nums[0] < nums[1]);
}

#[test]
fn stats_json_is_one_line() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "g.col", &erdos_renyi(25, 0.5, 1).unwrap());
    let o = color(&["solve", "--stats-json", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let json_line = out.lines().find(|l| l.starts_with('{')).unwrap();
    let v: serde_json::Value = serde_json::from_str(json_line).unwrap();
    assert!(v["stats"]["solver"]["conflicts"].is_u64());
    assert!(v["stats"]["zykov"]["clique_prunes"].is_u64());
}

#[test]
fn dump_cnf_writes_dimacs() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write_graph(dir.path(), "c5.col", &named::cycle(5));
    for mode in ["assignment", "full"] {
        let cnf = dir.path().join(format!("{mode}.cnf"));
        let o = color(&["decide", "--k", "3", "--mode", mode, "--dump-cnf", cnf.to_str().unwrap(), c5.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(10));
        let text = fs::read_to_string(&cnf).unwrap();
        assert!(text.lines().any(|l| l.starts_with("p cnf ")), "{mode}");
    }
}

#[test]
fn bench_over_empty_directory_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.csv");
    let empty = tempfile::tempdir().unwrap();
    let o = color(&["bench", "--dir", empty.path().to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("schema,instance,n,m,mode,flags"));
}

#[test]
fn bench_directory_with_unreadable_file() {
    let dir = tempfile::tempdir().unwrap();
    write_graph(dir.path(), "a.col", &named::petersen());
    fs::write(dir.path().join("b.col"), "not a graph\n").unwrap();
    let o = color(&["bench", "--dir", dir.path().to_str().unwrap(), "--modes", "zykov,assignment"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].contains("a.col") && rows[0].contains(",optimal,3,"));
    assert!(rows[2].contains("b.col") && rows[2].contains(",error,"));
}

#[test]
fn bench_rerun_is_identical_without_timing() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<String> = (0..2)
        .map(|i| {
            let out = dir.path().join(format!("run{i}.csv"));
            let summary = dir.path().join(format!("summary{i}.csv"));
            let o = color(&[
                "bench",
                "--generate",
                "er:n=12..16/2:p=0.3,0.7:count=3",
                "--ablation",
                "--no-timing",
                "-o",
                out.to_str().unwrap(),
                "--summary",
                summary.to_str().unwrap(),
            ]);
            assert_eq!(o.status.code(), Some(0));
            let s = fs::read_to_string(&summary).unwrap();
            assert_eq!(s.lines().count(), 1 + 8 * 5);
            fs::read_to_string(&out).unwrap()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0].lines().count(), 1 + 18 * 8);
    let seq = color(&["bench", "--generate", "er:n=12..16/2:p=0.3,0.7:count=3", "--ablation", "--no-timing", "--sequential"]);
    assert_eq!(stdout(&seq), runs[0]);
}
