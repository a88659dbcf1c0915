use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hexspan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hexspan")).args(args).output().expect("binary runs")
}

fn status(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    let v: Value = serde_json::from_slice(&o.stdout).expect("valid json");
    assert_eq!(v["schema_version"], 1);
    v
}

#[test]
fn distance_golden() {
    let o = hexspan(&["distance", "0", "0", "-3", "0", "--bfs"]);
    assert_eq!(status(&o), 0);
    assert_eq!(stdout(&o), "7\n");
    let v = json(&hexspan(&["--json", "distance", "-1", "4", "2", "-5"]));
    assert_eq!(v["distance"], 12);
}

#[test]
fn span_golden() {
    let o = hexspan(&["span", "10", "--json"]);
    assert_eq!(status(&o), 0);
    let v = json(&o);
    assert_eq!(v["l"], 10);
    assert_eq!(v["span"], 48);
    assert_eq!(v["clique_size"], 46);
    assert_eq!(v["parity_case"]["case"], "odd");
    assert_eq!(stdout(&hexspan(&["span", "8"])), "l=8 p=4 clique=31 extra=2 span=33 formula=33\n");
}

#[test]
fn usage_errors_exit_2_and_name_the_parameter() {
    for (args, needle) in [
        (vec!["span", "9"], "l = 9"),
        (vec!["span", "6"], "l = 6"),
        (vec!["shell", "7", "3"], "h = 3"),
        (vec!["ring", "0"], "k"),
        (vec!["check-observations", "--p", "3"], "--p 3"),
        (vec!["search-lattice", "7", "--max-index", "10", "--fallback"], "--budget"),
        (vec!["distance", "1", "2"], ""),
        (vec!["nonsense"], ""),
    ] {
        let o = hexspan(&args);
        assert_eq!(status(&o), 2, "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains(needle), "{args:?}");
    }
}

#[test]
fn ring_and_shell_golden() {
    let v = json(&hexspan(&["ring", "7", "--json"]));
    assert_eq!(v["size"], 21);
    assert_eq!(v["corners"], serde_json::json!([[0, 7], [4, 3], [4, -3], [0, -7], [-3, -4], [-3, 4]]));
    let v = json(&hexspan(&["shell", "7", "1", "--json"]));
    assert_eq!(v["indices"], serde_json::json!([2, 4, 6, 7, 9, 11, 13, 14, 16, 18, 20, 21]));
    let v = json(&hexspan(&["clique", "5", "--center=-3,4", "--json"]));
    assert_eq!(v["size"], 46);
    assert_eq!(v["diameter"], 10);
}

#[test]
fn check_observations_reports_breaches_with_exit_1() {
    let o = hexspan(&["check-observations", "--p", "5", "--json"]);
    assert_eq!(status(&o), 1);
    let v = json(&o);
    let reports = v["reports"].as_array().unwrap();
    let ids: Vec<&str> = reports.iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["Obs4", "Obs5", "Obs6", "Obs7", "Obs8", "Thm1-count", "Thm2-count", "Thm3-count"]);
    for r in reports {
        assert_eq!(r["verdict"] == "pass", r["counterexamples"].as_array().unwrap().is_empty());
    }
    let obs5 = &reports[1];
    assert_eq!(obs5["verdict"], "pass");
    assert_eq!(obs5["maxima"]["2"], 24);
    assert_eq!(reports[3]["verdict"], "fail");
}

#[test]
fn search_verify_render_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let col = dir.path().join("l10.col");
    let col_s = col.to_str().unwrap();

    let o = hexspan(&["search-lattice", "10", "--max-index", "100", "--json"]);
    assert_eq!(status(&o), 1, "single-coset search stops at 54 colours");
    assert_eq!(json(&o)["single_coset_best"], 54);

    let o = hexspan(&["--json", "search-lattice", "10", "--max-index", "100", "--fallback", "--out", col_s]);
    assert_eq!(status(&o), 0);
    let v = json(&o);
    assert_eq!(v["mode"], "multi-domain");
    assert_eq!(v["coloring"]["color_count"], 48);
    assert_eq!(v["valid"], true);

    let o = hexspan(&["verify-coloring", col_s, "--json"]);
    assert_eq!(status(&o), 0);
    assert_eq!(json(&o)["colors"], 48);

    let svg = dir.path().join("l10.svg");
    let o = hexspan(&["render", col_s, "--out", svg.to_str().unwrap()]);
    assert_eq!(status(&o), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<polygon").count(), 9 * 96);
    assert_eq!(stdout(&hexspan(&["render", col_s])), text);
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn bad_colouring_lists_violations_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.col", "hexcolor v1\nl 2\nwindow\ncell 0 0 1\ncell 1 0 1\ncell 0 1 2\ncell 3 3 2\n");
    let o = hexspan(&["verify-coloring", &bad, "--json"]);
    assert_eq!(status(&o), 1);
    let v = json(&o);
    assert_eq!(v["violations"], serde_json::json!([{"u": [0, 0], "v": [1, 0], "distance": 1, "color": 1}]));
    let o = hexspan(&["verify-coloring", &bad]);
    assert_eq!(stdout(&o), "window l=2 cells=4 colors=2 violations=1\n  (0,0) (1,0) distance=1 color=1\n");
}

#[test]
fn malformed_file_exits_2_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "m.col", "hexcolor v1\nl 3\nwindow\ncell 0 0 1\ncell 1 zero 2\n");
    for cmd in ["render", "verify-coloring"] {
        let o = hexspan(&[cmd, &bad]);
        assert_eq!(status(&o), 2);
        assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
    }
    let o = hexspan(&["verify-coloring", dir.path().join("missing.col").to_str().unwrap()]);
    assert_eq!(status(&o), 2);
}

#[test]
fn exact_window_golden() {
    let v = json(&hexspan(&["exact-window", "4", "--radius", "4", "--json"]));
    assert_eq!(v["chromatic_number"], 11);
    assert_eq!(v["vertices"], 31);
    let v = json(&hexspan(&["exact-window", "6", "--radius", "3", "--budget", "18", "--json"]));
    assert_eq!(v["feasible"], false);
    assert_eq!(v["lower_bound"], 19);
    let o = hexspan(&["exact-window", "4", "--radius", "9", "--guard", "100"]);
    assert_eq!(status(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("136 vertices"));
}

#[test]
fn exact_window_writes_a_verifiable_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.col");
    let o = hexspan(&["exact-window", "4", "--radius", "3", "--budget", "11", "--out", out.to_str().unwrap()]);
    assert_eq!(status(&o), 0);
    assert_eq!(status(&hexspan(&["verify-coloring", out.to_str().unwrap()])), 0);
}

#[test]
fn dimacs_golden() {
    let o = hexspan(&["export-dimacs", "2", "--radius", "1"]);
    assert_eq!(status(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("\np edge 4 6\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 6);
    let o = hexspan(&["export-dimacs", "4", "--radius", "3"]);
    assert!(stdout(&o).contains("\np edge 19 132\n"));
    let o = hexspan(&["export-dimacs", "4", "--radius", "12", "--guard", "200"]);
    assert_eq!(status(&o), 3);
}
