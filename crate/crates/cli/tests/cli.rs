use std::path::Path;
use std::process::{Command, Output};

use geoforbid::geom::{convex_hull, edge_depth};
use geoforbid::{EdgeSet, PointSet, Tree};
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geoforbid")).args(args).output().expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json_file(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn gen_convex_is_a_cycle_of_hull_edges() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.json");
    assert!(bin(&["gen", "--mode", "convex", "--n", "7", "--seed", "1", "--out", path_str(&out)]).status.success());
    let s: PointSet = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(s.len(), 7);
    assert_eq!(convex_hull(&s).unwrap().len(), 7);
    let hull_edges = s.all_edges().filter(|&e| edge_depth(&s, e).unwrap() == 0).count();
    assert_eq!(hull_edges, 7);
    let v = json_file(&out);
    assert_eq!(v["seed"], 1);
    assert_eq!(v["rng"], "chacha8");
}

#[test]
fn gen_is_byte_identical_per_seed() {
    let a = bin(&["gen", "--mode", "random", "--n", "8", "--seed", "2"]);
    let b = bin(&["gen", "--mode", "random", "--n", "8", "--seed", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let s: PointSet = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(s.len(), 8);
    let c = bin(&["gen", "--mode", "random", "--n", "8", "--seed", "3"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn gen_trees_round_trip() {
    for kind in ["spider", "path", "star", "random"] {
        let out = bin(&["gen", "--tree", kind, "--n", "9", "--seed", "4"]);
        assert!(out.status.success(), "{kind}");
        let t: Tree = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(t.len(), 9);
        let again = serde_json::to_value(&t).unwrap();
        let back: Tree = serde_json::from_value(again).unwrap();
        assert_eq!(back, t);
    }
}

fn setup(dir: &Path, n: &str, forbidden: Option<&str>) {
    let p = dir.join("p.json");
    let t = dir.join("t.json");
    assert!(bin(&["gen", "--mode", "convex", "--n", n, "--seed", "1", "--out", path_str(&p)]).status.success());
    assert!(bin(&["gen", "--tree", "spider", "--n", n, "--out", path_str(&t)]).status.success());
    if let Some(f) = forbidden {
        std::fs::write(dir.join("f.json"), f).unwrap();
    }
}

#[test]
fn embed_without_forbidden_edges_draws_a_planar_svg() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path(), "7", None);
    let (p, t, e, svg) = (dir.path().join("p.json"), dir.path().join("t.json"), dir.path().join("e.json"), dir.path().join("e.svg"));
    let out = bin(&[
        "embed", "--tree", path_str(&t), "--points", path_str(&p), "--out", path_str(&e), "--svg", path_str(&svg),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_file(&e);
    assert_eq!(v["crossings"], 0);
    assert_eq!(v["strategy"], "recursive");
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches("class=\"tree\"").count(), 6);
}

#[test]
fn embed_avoids_one_forbidden_edge() {
    for edge in ["[0,1]", "[2,5]", "[3,4]"] {
        let dir = tempfile::tempdir().unwrap();
        setup(dir.path(), "7", Some(&format!(r#"{{"edges":[{edge}]}}"#)));
        let d = dir.path();
        let out = bin(&[
            "embed",
            "--tree", path_str(&d.join("t.json")),
            "--points", path_str(&d.join("p.json")),
            "--forbidden", path_str(&d.join("f.json")),
        ]);
        assert!(out.status.success());
        let v: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["forbidden_avoided"], true);
        assert_eq!(v["strategy"], "single");
    }
}

#[test]
fn embed_with_many_forbidden_edges_uses_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    // three consecutive hull edges forbid the spider
    setup(dir.path(), "7", Some(r#"{"edges":[[0,1],[1,2],[2,3]]}"#));
    let d = dir.path();
    let out = bin(&[
        "embed",
        "--tree", path_str(&d.join("t.json")),
        "--points", path_str(&d.join("p.json")),
        "--forbidden", path_str(&d.join("f.json")),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = bin(&[
        "embed",
        "--tree", path_str(&d.join("t.json")),
        "--points", path_str(&d.join("p.json")),
        "--forbidden", path_str(&d.join("f.json")),
        "--budget", "5",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn invalid_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path(), "7", None);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    let out = bin(&["embed", "--tree", path_str(&bad), "--points", path_str(&dir.path().join("p.json"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let collinear = dir.path().join("c.json");
    std::fs::write(&collinear, r#"{"points":[[0,0],[1,1],[2,2]]}"#).unwrap();
    let out = bin(&["render", "--points", path_str(&collinear), "--svg", path_str(&dir.path().join("x.svg"))]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(bin(&["bounds", "--n", "8", "--k", "2"]).status.code(), Some(2));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn render_matches_embed_svg() {
    let dir = tempfile::tempdir().unwrap();
    setup(dir.path(), "8", Some(r#"{"edges":[[1,5]]}"#));
    let d = dir.path();
    let (p, t, f) = (d.join("p.json"), d.join("t.json"), d.join("f.json"));
    let out = bin(&[
        "embed", "--tree", path_str(&t), "--points", path_str(&p), "--forbidden", path_str(&f),
        "--out", path_str(&d.join("e.json")), "--svg", path_str(&d.join("a.svg")),
    ]);
    assert!(out.status.success());
    let out = bin(&[
        "render", "--points", path_str(&p), "--tree", path_str(&t), "--embedding", path_str(&d.join("e.json")),
        "--forbidden", path_str(&f), "--svg", path_str(&d.join("b.svg")),
    ]);
    assert!(out.status.success());
    let a = std::fs::read_to_string(d.join("a.svg")).unwrap();
    assert_eq!(a, std::fs::read_to_string(d.join("b.svg")).unwrap());
    assert_eq!(a.matches("stroke-dasharray").count(), 1);
}

#[test]
fn bounds_examples() {
    let v: Value = serde_json::from_slice(&bin(&["bounds", "--n", "10", "--k", "6"]).stdout).unwrap();
    assert_eq!((v["lower"].as_str(), v["upper"].as_str(), v["blanket_size"].as_u64()), (Some("5"), Some("40"), Some(30)));
    let v: Value = serde_json::from_slice(&bin(&["bounds", "--n", "8", "--k", "8"]).stdout).unwrap();
    assert_eq!((v["lower"].as_str(), v["upper"].as_str(), v["blanket_size"].as_u64()), (Some("4/7"), Some("16"), Some(8)));
    let v: Value = serde_json::from_slice(&bin(&["bounds", "--n", "9", "--k", "3"]).stdout).unwrap();
    assert_eq!(v["upper"], "126");
    assert_eq!(v["blanket_size"], 36);
}

fn verify(args: &[&str]) -> (Option<i32>, Vec<Value>) {
    let mut all = vec!["verify"];
    all.extend_from_slice(args);
    let out = bin(&all);
    let lines = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    (out.status.code(), lines)
}

#[test]
fn suites_pass() {
    for (suite, n, cases) in [
        ("conf3", "5..9", 5),
        ("conf2-2", "6..9", 4),
        ("few-hull", "5..8", 3 + 6 + 11 + 23),
        ("two-edge-convex", "5..6", 3 * 45 + 6 * 105),
    ] {
        let (code, lines) = verify(&["--suite", suite, "--n", n]);
        assert_eq!(code, Some(0), "{suite}");
        let summary = &lines.last().unwrap()["summary"];
        assert_eq!(summary["cases"], cases, "{suite}");
        assert_eq!(summary["failed"], 0);
        assert_eq!(lines.len(), cases + 1);
        assert!(lines[..cases].iter().all(|l| l["verdict"] == "pass"));
    }
}

#[test]
fn single_edge_suite_with_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.jsonl");
    let (code, _) = verify(&["--suite", "single-edge", "--n", "5..8", "--seed", "1..20", "--out", path_str(&out)]);
    assert_eq!(code, Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let last: Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    // (3*10 + 6*15 + 11*21 + 23*28) cases per set, two sets per seed
    assert_eq!(last["summary"]["cases"], 40 * (30 + 90 + 231 + 644));
    assert_eq!(last["summary"]["failed"], 0);
}

#[test]
fn blanket_and_baseline_suites() {
    let (code, lines) = verify(&["--suite", "blanket", "--n", "8", "--k", "5"]);
    assert_eq!(code, Some(0));
    assert_eq!(lines[0]["case"]["size"], 24);
    let (code, lines) = verify(&["--suite", "baseline", "--n", "6", "--seed", "1..3", "--mode", "random"]);
    assert_eq!(code, Some(0));
    assert_eq!(lines.last().unwrap()["summary"]["cases"], 18);
}

#[test]
fn tiny_budget_reports_unknown() {
    let (code, lines) = verify(&["--suite", "conf3", "--n", "7", "--budget", "3"]);
    assert_eq!(code, Some(3));
    assert_eq!(lines[0]["verdict"], "unknown");
    assert_eq!(lines.last().unwrap()["summary"]["unknown"], 1);
}

#[test]
fn search_min_on_convex_hexagon() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.json");
    assert!(bin(&["gen", "--mode", "convex", "--n", "6", "--seed", "1", "--out", path_str(&p)]).status.success());
    let out = bin(&["search-min", "--points", path_str(&p), "--k", "6", "--cap", "3"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["size"], 3);
    let edges: EdgeSet = serde_json::from_value(v["result"]["edges"].clone()).unwrap();
    assert_eq!(edges.len(), 3);
    let out = bin(&["search-min", "--mode", "convex", "--n", "6", "--k", "6", "--cap", "2"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["result"].is_null());
    assert_eq!(bin(&["search-min", "--mode", "convex", "--n", "9", "--k", "6"]).status.code(), Some(2));
}
