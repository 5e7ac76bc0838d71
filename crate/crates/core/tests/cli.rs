//! End-to-end runs of the command-line front end, in process.

use std::fs;
use std::path::Path;

use geocop::cli::main_with_args;
use geocop::geograph::io::{write_graph_json, GraphFile};
use geocop::geograph::Graph;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("geocop").chain(args.iter().copied());
    let code = main_with_args(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"))
}

#[test]
fn generate_graph_dismantle_is_byte_stable() {
    // Output paths are part of the echoed config, so both runs reuse the
    // same names after clearing the directory.
    let dir = tempfile::tempdir().unwrap();
    let (pts, graph, dis) = (dir.path().join("pts.csv"), dir.path().join("g.json"), dir.path().join("d.json"));
    let mut outputs = Vec::new();
    for _ in 0..2 {
        for f in [&pts, &graph, &dis] {
            let _ = fs::remove_file(f);
        }
        assert_eq!(run(&["generate", "--n", "80", "--seed", "17", "--output", p(&pts)]).0, 0);
        assert_eq!(run(&["graph", "--input", p(&pts), "--r", "0.3", "--output", p(&graph)]).0, 0);
        assert_eq!(run(&["dismantle", "--input", p(&graph), "--output", p(&dis)]).0, 0);
        outputs.push([fs::read(&pts).unwrap(), fs::read(&graph).unwrap(), fs::read(&dis).unwrap()]);
    }
    assert_eq!(outputs[0], outputs[1]);

    let csv = String::from_utf8(outputs[0][0].clone()).unwrap();
    assert!(csv.lines().any(|l| l.starts_with('#') && l.contains("17")), "seed not echoed:\n{csv}");
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#') && !l.starts_with('x')).count(), 80);

    let g = json(std::str::from_utf8(&outputs[0][1]).unwrap());
    assert_eq!(g["format_version"], 1);
    assert_eq!(g["n"], 80);
    assert!(g["config"].is_object());
    let d = json(std::str::from_utf8(&outputs[0][2]).unwrap());
    assert!(d["result"]["copwin"].is_boolean());
    assert!(d["config"].is_object());
}

#[test]
fn petersen_needs_three_cops() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("petersen.json");
    write_graph_json(fs::File::create(&path).unwrap(), &GraphFile::from_graph(&Graph::petersen())).unwrap();
    let (code, out, _) = run(&["copnumber", "--input", p(&path), "--kmax", "3"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["cop_number"], 3);

    let (code, out, _) = run(&["copnumber", "--input", p(&path), "--kmax", "2"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["cop_number"], "> 2");

    let (code, _, err) = run(&["copnumber", "--input", p(&path), "--kmax", "3", "--budget", "10"]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn annular_report() {
    let (code, out, _) = run(&["annular"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["n"], 1440);
    assert_eq!(v["verdict"], "robber-win");
    assert_eq!(v["girth"], 5);
    assert_eq!(v["lower_bound"], 3);
    assert_eq!(v["format_version"], 1);
}

#[test]
fn config_errors_exit_two_and_io_errors_exit_one() {
    assert_eq!(run(&["sweep", "--n", "50", "--trials", "2"]).0, 2, "no radius or regime");
    assert_eq!(run(&["sweep", "--n", "50", "--regime", "sideways"]).0, 2);
    assert_eq!(run(&["generate"]).0, 2, "missing --n");
    assert_eq!(run(&["dismantle", "--input", "/nonexistent/points.csv", "--r", "0.2"]).0, 1);
}

#[test]
fn simulate_writes_a_verifiable_trace() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.csv");
    let trace = dir.path().join("trace.jsonl");
    assert_eq!(run(&["generate", "--n", "12", "--seed", "3", "--output", p(&pts)]).0, 0);
    let (code, out, err) = run(&[
        "simulate", "--input", p(&pts), "--r", "0.5", "--cop-policy", "solver", "--kmax", "2",
        "--robber-policy", "solver", "--seed", "9", "--output", p(&trace),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(json(&out)["outcome"].is_object());
    let t = geocop::strategies::Trace::read_jsonl(std::io::BufReader::new(fs::File::open(&trace).unwrap())).unwrap();
    assert_eq!(t.seed, 9);
    assert!(t.config.is_object());
    let header: Value = json(fs::read_to_string(&trace).unwrap().lines().next().unwrap());
    assert_eq!(header["format_version"], 1);
}

#[test]
fn sweep_csv_has_the_fixed_header() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let (code, _, err) = run(&[
        "sweep", "--n", "60", "--r", "0.1,1.5", "--trials", "5", "--seed", "4", "--output", p(&csv),
    ]);
    assert_eq!(code, 0, "{err}");
    let text = fs::read_to_string(&csv).unwrap();
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body[0], "n,r,regime,measurement,successes,trials,ci_lo,ci_hi,seconds");
    assert_eq!(body.len(), 3);
    assert!(body[2].starts_with("60,1.5,fixed,copwin_rate,5,5,"));
}

#[test]
fn witness_and_dagger_on_sampled_points() {
    let (code, out, err) = run(&["dagger", "--n", "500", "--r", "0.2", "--trials", "1000"]);
    assert_eq!(code, 0, "{err}");
    assert!(json(&out)["tiling"]["sufficient"].is_boolean());
    let (code, out, err) = run(&["witness", "--n", "2000", "--r", "0.1"]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(json(&out)["format_version"], 1);
    // fewer than three corners is a parameter error
    assert_eq!(run(&["witness", "--n", "200", "--r", "0.1"]).0, 2);
}
