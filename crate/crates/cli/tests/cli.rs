use dfvs_core::fixtures::running_example;
use dfvs_core::DiGraph;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};
use tempfile::NamedTempFile;

fn pace(g: &DiGraph) -> String {
    let mut s = format!("{} {} 0\n", g.num_vertices(), g.arc_count());
    for v in g.vertices() {
        let line: Vec<String> = g.succ(v).iter().map(|w| (w + 1).to_string()).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

fn file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn dfvs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dfvs")).args(args).output().unwrap()
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

fn lines(out: &Output) -> Vec<String> {
    String::from_utf8_lossy(&out.stdout).lines().map(str::to_owned).collect()
}

fn assert_verifies(graph: &Path, solution: &[String]) {
    let sol = file(&(solution.join("\n") + "\n"));
    let out = dfvs(&["verify", graph.to_str().unwrap(), path(&sol)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn solve_running_example_in_both_modes() {
    let g = file(&pace(&running_example()));
    for extra in [&[][..], &["--mode", "cegar"], &["--no-reductions"], &["--mode", "cegar", "--no-reductions"], &["--lazy"]] {
        let mut args = vec!["solve", path(&g)];
        args.extend_from_slice(extra);
        let out = dfvs(&args);
        assert!(out.status.success(), "{extra:?}: {}", String::from_utf8_lossy(&out.stderr));
        let sol = lines(&out);
        assert_eq!(sol.len(), 2, "{extra:?}");
        assert_verifies(g.path(), &sol);
    }
}

#[test]
fn stats_are_json() {
    let g = file(&pace(&running_example()));
    let out = dfvs(&["solve", path(&g), "--stats", "json"]);
    assert!(out.status.success());
    let stats: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(stats["command"], "solve");
    assert_eq!(stats["optimum"], 2);
    for key in ["solution", "timings", "reductions", "cycles", "sat", "kernel_vertices", "mode"] {
        assert!(stats.get(key).is_some(), "missing {key}");
    }

    let log = NamedTempFile::new().unwrap();
    let out = dfvs(&["reduce", path(&g), "--stats", "json", "--stats-file", path(&log)]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(log.path()).unwrap();
    let stats: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(stats["command"], "reduce");
    assert!(stats["rules"].is_object());
}

#[test]
fn reduce_dag_gives_empty_kernel() {
    let g = file("3 2 0\n2\n3\n\n");
    let out = dfvs(&["reduce", path(&g), "--stats", "json"]);
    assert!(out.status.success());
    assert_eq!(lines(&out), vec!["0 0 0"]);
    let stats: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(stats["rules"]["in0out0"]["fires"].as_u64().unwrap() > 0);
}

#[test]
fn verify_accepts_and_rejects() {
    let g = file(&pace(&running_example()));
    let good = file("2\n7\n");
    assert!(dfvs(&["verify", path(&g), path(&good)]).status.success());
    let bad = file("2\n");
    let out = dfvs(&["verify", path(&g), path(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cycle"));
    let unknown = file("9\n");
    assert!(!dfvs(&["verify", path(&g), path(&unknown)]).status.success());
}

#[test]
fn oracle_subcommand() {
    let g = file(&pace(&running_example()));
    let out = dfvs(&["oracle", path(&g)]);
    assert!(out.status.success());
    assert_eq!(lines(&out).len(), 2);
    let out = dfvs(&["oracle", path(&g), "--max-n", "4"]);
    assert!(!out.status.success());
}

#[test]
fn bad_input_and_flags_are_rejected() {
    let g = file("3 2 0\n2\n7\n");
    let out = dfvs(&["solve", path(&g)]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let g = file(&pace(&running_example()));
    assert!(!dfvs(&["solve", path(&g), "--no-reductions", "--rules", "pie"]).status.success());
    assert!(!dfvs(&["solve", path(&g), "--rules", "bogus"]).status.success());
    assert!(!dfvs(&["solve", path(&g), "--mode", "cegar", "--lazy"]).status.success());
    assert!(!dfvs(&["solve", "/nonexistent/graph"]).status.success());
}

#[test]
fn self_loops_are_solved() {
    let g = file("3 4 0\n1 2\n3\n2\n");
    let out = dfvs(&["solve", path(&g)]);
    assert!(out.status.success());
    let sol = lines(&out);
    assert_eq!(sol.len(), 2);
    assert!(sol.contains(&"1".to_string()));
}
