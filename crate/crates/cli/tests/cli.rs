use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphtempo")).args(args).env_remove("GRAPHTEMPO_CACHE_DIR").output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

/// Writes the example graph as CSV files and returns the loading flags.
fn exported(dir: &Path) -> Vec<String> {
    let d = dir.to_str().unwrap();
    ok(&["ingest", "--fixture", "--export", d]);
    let p = |f: &str| dir.join(f).to_str().unwrap().to_string();
    vec![
        "--edges".into(),
        p("edges.csv"),
        "--static".into(),
        p("static.csv"),
        "--presence".into(),
        p("presence.csv"),
        "--varying".into(),
        format!("publications={}", p("varying_publications.csv")),
    ]
}

#[test]
fn aggregate_dot_from_csv_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut args: Vec<String> = ["aggregate"].map(String::from).to_vec();
    args.extend(exported(dir.path()));
    args.extend(["--attrs", "gender", "--interval", "t0", "--mode", "dist", "--out", "dot"].map(String::from));
    let argv: Vec<&str> = args.iter().map(String::as_str).collect();
    let dot = ok(&argv);
    assert!(dot.starts_with("graph aggregate {"));
    assert!(dot.contains("\"f\" [label=\"f (3)\", weight=3];"), "{dot}");
    assert!(dot.contains("\"m\" [label=\"m (1)\", weight=1];"), "{dot}");
}

#[test]
fn explore_example_on_fixture() {
    let doc = json(&[
        "explore", "--fixture", "--event", "stability", "--extremal", "max", "--reference", "old", "--k", "1",
        "--target-edge", "f,f", "--attrs", "gender",
    ]);
    let pairs: Vec<(&str, &str, u64)> = doc["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p["reference"].as_str().unwrap(), p["extended"].as_str().unwrap(), p["weight"].as_u64().unwrap()))
        .collect();
    assert_eq!(pairs, vec![("t1", "t0", 1), ("t2", "t0..t1", 1)]);
    let none = json(&[
        "explore", "--fixture", "--event", "stability", "--extremal", "max", "--reference", "old", "--k", "3",
        "--target-edge", "f,f", "--attrs", "gender",
    ]);
    assert!(none["pairs"].as_array().unwrap().is_empty());
}

#[test]
fn fixture_values_through_the_cli() {
    let agg = json(&["aggregate", "--fixture", "--attrs", "gender,publications", "--op", "union", "--t1", "t0", "--t2", "t1"]);
    let f1 = agg["nodes"].as_array().unwrap().iter().find(|n| n["key"] == serde_json::json!(["f", "1"])).unwrap();
    assert_eq!(f1["weight"], 3);

    let tri = json(&["tri", "--fixture"]);
    assert_eq!(tri["t0"], serde_json::json!(["u1|u2|u4", "u1|u3|u4"]));
    assert_eq!(tri["t2"], serde_json::json!([]));

    let evo = ok(&["evolve", "--fixture", "--attrs", "gender", "--t1", "t0", "--t2", "t1", "--pattern", "triangle", "--out", "csv"]);
    assert!(evo.lines().any(|l| l == "node,ffm,,1,0,1,2"), "{evo}");
    assert!(evo.lines().any(|l| l == "node,fff,,0,1,0,1"), "{evo}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["aggregate", "--fixture", "--attrs", "gender", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let bad_target = run(&["init-k", "--fixture", "--event", "growth", "--extremal", "min", "--reference", "new", "--attrs", "gender", "--target-edge", "f"]);
    assert_eq!(bad_target.status.code(), Some(2));
    assert!(!bad_target.stderr.is_empty());
}

#[test]
fn domain_errors_exit_one() {
    assert_eq!(run(&["aggregate", "--fixture", "--attrs", "height", "--interval", "t0"]).status.code(), Some(1));
    assert_eq!(run(&["aggregate", "--fixture", "--attrs", "gender", "--interval", "t7"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("e.csv");
    std::fs::write(&edges, "source,target,time\nu1,u2\n").unwrap();
    assert_eq!(run(&["ingest", "--edges", edges.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = ["evolve", "--fixture", "--attrs", "gender,publications", "--t1", "t0", "--t2", "t1..t2"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    let first = &doc["nodes"][0];
    assert!(first["percent_S"].is_number());
}

#[test]
fn cache_round_trip_matches_direct_aggregation() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let built = json(&["cache", "build", "--fixture", "--attrs", "gender,publications", "--dir", d]);
    assert_eq!(built["entries"], 3);
    let rolled = json(&[
        "cache", "rollup", "--fixture", "--attrs", "gender,publications", "--subset", "gender", "--t1", "t0", "--t2",
        "t1..t2", "--dir", d,
    ]);
    let direct = json(&[
        "aggregate", "--fixture", "--attrs", "gender", "--mode", "all", "--op", "union", "--t1", "t0", "--t2", "t1..t2",
    ]);
    assert_eq!(rolled, direct);
    let env = Command::new(env!("CARGO_BIN_EXE_graphtempo"))
        .args(["cache", "build", "--fixture", "--attrs", "gender"])
        .env("GRAPHTEMPO_CACHE_DIR", d)
        .output()
        .unwrap();
    assert!(env.status.success());
    assert!(dir.path().join("gender").is_dir());
}

/// Every subcommand runs on the example graph.
#[test]
fn dispatch_covers_every_subcommand() {
    let f = "--fixture";
    let query = ["--event", "growth", "--extremal", "min", "--reference", "new", "--attrs", "gender", "--target-node", "f"];
    let cache = tempfile::tempdir().unwrap();
    let cache = cache.path().to_str().unwrap();
    let export = tempfile::tempdir().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["ingest", f, "--export", export.path().to_str().unwrap()],
        vec!["ingest", f, "--out", "dot"],
        vec!["op", "project", f, "--interval", "t0..t1"],
        vec!["op", "union", f, "--t1", "t0", "--t2", "t1", "--out", "dot"],
        vec!["op", "intersection", f, "--t1", "t0", "--t2", "t1"],
        vec!["op", "difference", f, "--t1", "t0", "--t2", "t1", "--out", "csv"],
        vec!["aggregate", f, "--attrs", "gender", "--interval", "t0..t2", "--static-fast"],
        vec!["aggregate", f, "--attrs", "gender", "--op", "difference", "--t1", "t0", "--t2", "t1", "--out", "csv"],
        vec!["tri", f, "--out", "csv"],
        vec!["tri", f, "--attrs", "gender", "--op", "intersection", "--t1", "t0", "--t2", "t1"],
        vec!["tri", f, "--attrs", "gender", "--op", "union", "--t1", "t0", "--t2", "t1", "--strategy", "op-first"],
        vec!["evolve", f, "--attrs", "gender", "--t1", "t0", "--t2", "t1", "--out", "dot"],
        vec!["evolve", f, "--attrs", "gender", "--t1", "t0", "--t2", "t1", "--overlay"],
        [&["explore", f, "--k", "1"][..], &query].concat(),
        [&["explore", f, "--k", "1", "--brute-force", "--out", "csv"][..], &query].concat(),
        vec![
            "explore", f, "--k", "1", "--event", "stability", "--extremal", "min", "--reference", "old", "--attrs",
            "gender", "--target-pattern", "ffm",
        ],
        [&["init-k", f][..], &query].concat(),
        vec!["cache", "build", f, "--attrs", "gender", "--dir", cache],
        vec!["cache", "rollup", f, "--attrs", "gender", "--t1", "t0", "--t2", "t2", "--dir", cache, "--out", "dot"],
        vec!["bench", "rollup", "--points", "4", "--edges", "200", "--nodes", "50", "--runs", "1"],
        vec!["bench", "pattern", "--points", "2", "--edges", "200", "--nodes", "50", "--runs", "1"],
    ];
    for args in &cases {
        assert!(!ok(args).is_empty(), "{args:?}");
    }
    let bench = ok(&["bench", "rollup", "--points", "8", "--edges", "500", "--nodes", "100", "--runs", "1"]);
    let methods: Vec<&str> = bench.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(methods, ["direct", "rollup"]);
}
