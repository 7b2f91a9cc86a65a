use std::fs;
use std::path::{Path, PathBuf};

use hypercolor::cli::run;
use hypercolor::exact::{hypergraph_chromatic_number, SolverCaps};
use hypercolor::format::{parse_coloring, parse_hypergraph, write_hypergraph};
use hypercolor::gen::{complete_graph, complete_plus_triple, fano_plane, universal_vertex_family};
use hypercolor::hypergraph::is_proper;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn hc(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["hypercolor"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, contents).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_reports() {
    let dir = tempfile::tempdir().unwrap();
    let fano = write(dir.path(), "fano.hg", &write_hypergraph(&fano_plane()));
    let o = hc(&["analyze", s(&fano), "--format", "json"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["schema"], "hypercolor.analyze/1");
    assert_eq!(v["bipartite"], false);
    assert_eq!(v["chi_ig"], 7);
    assert_eq!(v["ig_edges"], 21);
    assert_eq!(v["edge_size_histogram"]["3"], 7);

    let single = write(dir.path(), "one.hg", "e 0 1\n");
    let o = hc(&["analyze", s(&single), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["bipartite"], true);
    assert_eq!(v["chi_ig"], 1);

    let o = hc(&["analyze", s(&fano)]);
    assert!(o.stdout.contains("chi(H1)      7"), "{}", o.stdout);

    let o = hc(&["analyze", s(&fano), "--cap-ig", "3", "--format", "json"]);
    assert_eq!(o.code, 0);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert!(v["chi_ig"].is_null());
    assert!(v["chi_ig_note"].as_str().unwrap().contains("cap"));
}

#[test]
fn malformed_edge_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.hg", "e 0 1\ne 1\n");
    let o = hc(&["analyze", s(&bad)]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("line 2"), "{}", o.stderr);
    assert!(o.stderr.contains("at least 2"), "{}", o.stderr);

    let o = hc(&["analyze", s(&dir.path().join("missing.hg"))]);
    assert_eq!(o.code, 2);
    assert_eq!(hc(&["frobnicate"]).code, 2);
    assert_eq!(hc(&["--help"]).code, 0);
}

#[test]
fn color_two_on_triangle_is_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.hg", &write_hypergraph(&complete_graph(3).unwrap()));
    let o = hc(&["color", s(&tri), "--method", "two"]);
    assert_eq!(o.code, 3);
    assert!(o.stderr.contains("odd cycle"), "{}", o.stderr);
}

#[test]
fn color_four_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let hg = write(dir.path(), "k4t.hg", &write_hypergraph(&complete_plus_triple(4).unwrap()));
    let col = dir.path().join("k4t.col");
    let o = hc(&["color", s(&hg), "--method", "four", "--out", s(&col)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("4 colors"), "{}", o.stdout);
    let c = parse_coloring(&fs::read_to_string(&col).unwrap()).unwrap();
    assert_eq!(c.distinct_colors(), 4);
    assert_eq!(hc(&["verify", s(&hg), s(&col)]).code, 0);
}

#[test]
fn color_greedy_on_universal_family() {
    let dir = tempfile::tempdir().unwrap();
    let h = universal_vertex_family(5, 2).unwrap();
    let hg = write(dir.path(), "u.hg", &write_hypergraph(&h));
    let o = hc(&["color", s(&hg), "--method", "greedy"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let c = parse_coloring(&o.stdout).unwrap();
    assert!(c.k() <= 6);
    assert!(is_proper(&h, &c));
}

#[test]
fn color_two_writes_trace() {
    let dir = tempfile::tempdir().unwrap();
    let hg = write(dir.path(), "path.hg", "e 0 1\ne 1 2\ne 2 3\n");
    let trace = dir.path().join("trace.json");
    let o = hc(&["color", s(&hg), "--method", "two", "--trace", s(&trace)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(v["schema"], "hypercolor.trace/1");
    assert_eq!(v["rounds"][0]["inserted_edge"], 0);
    assert_eq!(v["rounds"][0]["steps"][0]["vertex"], 0);

    let o = hc(&["color", s(&hg), "--method", "greedy", "--trace", s(&trace)]);
    assert_eq!(o.code, 2);
}

#[test]
fn color_cap_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let hg = write(dir.path(), "k5.hg", &write_hypergraph(&complete_graph(5).unwrap()));
    let o = hc(&["color", s(&hg), "--method", "four", "--cap-ig", "5"]);
    assert_eq!(o.code, 4);
    let o = hc(&["color", s(&hg), "--method", "four"]);
    assert_eq!(o.code, 3);
}

#[test]
fn verify_reports_monochromatic_edges() {
    let dir = tempfile::tempdir().unwrap();
    let hg = write(dir.path(), "k4.hg", &write_hypergraph(&complete_graph(4).unwrap()));
    let zeros = write(dir.path(), "z.col", "0 0\n1 0\n2 0\n3 0\n");
    let o = hc(&["verify", s(&hg), s(&zeros)]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("6 monochromatic"), "{}", o.stdout);
    for e in 0..6 {
        assert!(o.stdout.contains(&format!("edge {e}:")));
    }
    let short = write(dir.path(), "s.col", "0 0\n");
    assert_eq!(hc(&["verify", s(&hg), s(&short)]).code, 2);
    let bad = write(dir.path(), "b.col", "0 0\n2 1\n");
    assert_eq!(hc(&["verify", s(&hg), s(&bad)]).code, 2);
}

#[test]
fn oracle_values_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    for (name, h, expect) in [
        ("k5", complete_graph(5).unwrap(), (5, 5)),
        ("k4", complete_graph(4).unwrap(), (3, 4)),
        ("fano", fano_plane(), (7, 3)),
    ] {
        let hg = write(dir.path(), &format!("{name}.hg"), &write_hypergraph(&h));
        let col = dir.path().join(format!("{name}.col"));
        let o = hc(&["oracle", s(&hg), "--out", s(&col), "--format", "json"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!((v["chi_ig"].as_u64().unwrap(), v["chi_h"].as_u64().unwrap()), (expect.0 as u64, expect.1 as u64));
        assert_eq!(hc(&["verify", s(&hg), s(&col)]).code, 0);
        let (chi, _) = hypergraph_chromatic_number(&h, &SolverCaps::default()).unwrap();
        assert_eq!(chi, expect.1);
    }
}

#[test]
fn gen_families() {
    let o = hc(&["gen", "complete", "5"]);
    assert_eq!(o.code, 0);
    assert_eq!(parse_hypergraph(&o.stdout).unwrap().m(), 10);
    assert!(o.stdout.starts_with("p hyper 5 10\n"));

    assert_eq!(hc(&["gen", "complete-plus-triple", "3"]).code, 2);
    assert_eq!(parse_hypergraph(&hc(&["gen", "fano"]).stdout).unwrap(), fano_plane());
    assert_eq!(
        parse_hypergraph(&hc(&["gen", "universal", "3", "2"]).stdout).unwrap(),
        universal_vertex_family(3, 2).unwrap()
    );

    let args = ["gen", "random", "--n", "10", "--m", "15", "--min-size", "2", "--max-size", "4", "--seed", "7"];
    let a = hc(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, hc(&args).stdout);
    assert_eq!(parse_hypergraph(&a.stdout).unwrap().m(), 15);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k3.hg");
    assert_eq!(hc(&["gen", "complete", "3", "--out", s(&out)]).code, 0);
    assert_eq!(fs::read_to_string(&out).unwrap(), "p hyper 3 3\ne 0 1\ne 0 2\ne 1 2\n");
}

#[test]
fn search_even_parity_short_run() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = hc(&["search", "--parity", "even", "--trials", "1000", "--seed", "1", "--report", s(&report)]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("violations        0"), "{}", o.stdout);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["schema"], "hypercolor.search-report/1");
    assert_eq!(v["trials_run"], 1000);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn search_writes_violation_files() {
    let dir = tempfile::tempdir().unwrap();
    let vdir = dir.path().join("viol");
    let o = hc(&[
        "search", "--parity", "odd", "--trials", "4", "--seed", "3", "--n-min", "4", "--n-max", "4",
        "--m-min", "6", "--m-max", "6", "--size-min", "2", "--size-max", "2",
        "--violations-dir", s(&vdir), "--format", "json",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    let violations = v["violations"].as_array().unwrap();
    assert_eq!(violations.len(), 4);
    for viol in violations {
        let seed = viol["params"]["seed"].as_u64().unwrap();
        let text = fs::read_to_string(vdir.join(format!("violation-seed-{seed}.hg"))).unwrap();
        let mut edges = parse_hypergraph(&text).unwrap().edges().to_vec();
        edges.sort();
        assert_eq!(edges, complete_graph(4).unwrap().edges());
    }
}

#[test]
fn search_rejects_bad_config() {
    assert_eq!(hc(&["search", "--seed", "1", "--trials", "0"]).code, 2);
    assert_eq!(hc(&["search", "--seed", "1", "--size-min", "1"]).code, 2);
    assert_eq!(hc(&["search", "--trials", "3"]).code, 2, "seed is mandatory");
}
