use std::path::PathBuf;
use std::process::{Command, Output};

use gspline::graph::parse_graph;
use gspline::poly::parse_poly;
use gspline::{QGraph, Rational};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn gspline(args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gspline"));
    for a in args {
        if a.ends_with(".graph") || a.ends_with(".spline") {
            cmd.arg(data(a));
        } else {
            cmd.arg(a);
        }
    }
    cmd.output().expect("spawn gspline")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = gspline(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn load(name: &str) -> QGraph {
    parse_graph(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

/// Every string leaf that looks like a polynomial re-parses and prints back
/// unchanged.
fn check_polys(v: &Value, g: &QGraph, seen: &mut usize) {
    match v {
        Value::String(s) => {
            if let Ok(p) = parse_poly::<Rational>(s, g.ring()) {
                assert_eq!(&p.to_string(), s);
                *seen += 1;
            }
        }
        Value::Array(xs) => xs.iter().for_each(|x| check_polys(x, g, seen)),
        Value::Object(m) => m.values().for_each(|x| check_polys(x, g, seen)),
        _ => {}
    }
}

#[test]
fn freeness_of_d33_cites_decomposition() {
    let v = json(&["freeness", "d33.graph"]);
    assert_eq!(v["verdict"], "free");
    assert_eq!(v["rule"], "Cor 5.5");
    assert_eq!(v["decomposition"]["complete"], true);
}

#[test]
fn rank_of_g1() {
    let v = json(&["rank", "g1.graph"]);
    assert_eq!(v["max_rank"], 3);
    let out = gspline(&["rank", "g1.graph"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("rank 3"));
}

#[test]
fn verify_trivial_and_bad_splines() {
    assert_eq!(json(&["verify", "c3.graph", "c3.spline"])["valid"], true);
    let v = json(&["verify", "c3.graph", "c3_bad.spline"]);
    assert_eq!(v["valid"], false);
    assert!(!v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn g1_free_and_g2_not_free() {
    let v = json(&["freeness", "g1.graph"]);
    assert_eq!(v["verdict"], "free");
    assert_eq!(v["rule_name"], "pd-computation");
    assert_eq!(v["pd_relation"]["pd_quotient"], 2);

    let v = json(&["freeness", "g2.graph"]);
    assert_eq!(v["verdict"], "not_free");
    assert_eq!(v["pd_syzygy"], 2);
    assert_eq!(v["pd_relation"]["pd_quotient"], 4);
}

#[test]
fn undecided_exits_zero() {
    let out = gspline(&["freeness", "undecided.graph"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("verdict: undecided"));
}

#[test]
fn exit_codes() {
    assert_eq!(gspline(&["hilbert", "inhomogeneous.graph"]).status.code(), Some(2));
    assert_eq!(gspline(&["resolve", "inhomogeneous.graph"]).status.code(), Some(2));
    assert_eq!(gspline(&["rank", "unknown_var.graph"]).status.code(), Some(1));
    assert_eq!(gspline(&["rank", "missing.graph"]).status.code(), Some(1));
    assert_eq!(gspline(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(gspline(&["--base-vertex", "nope", "spline-basis", "d33.graph"]).status.code(), Some(1));
}

#[test]
fn hilbert_report() {
    let v = json(&["hilbert", "squares.graph"]);
    assert_eq!(v["hilbert_syzygy"], "(1 + 2*t^2)/(1-t)^2");
    assert_eq!(v["shift_identity_holds"], true);
    assert_eq!(v["sum_identity_holds"], true);
    assert_eq!(v["common_degree"], 2);
}

#[test]
fn spline_basis_of_squares() {
    let v = json(&["--base-vertex", "v3", "spline-basis", "squares.graph"]);
    let gens = v["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 4);
    assert_eq!(gens[0]["source"], "trivial");
    for g in &gens[1..] {
        assert_eq!(g["values"][3], "0");
    }
}

#[test]
fn json_polynomials_round_trip() {
    for (file, cmds) in [
        ("d33.graph", &["matrix", "syzygy", "decompose", "spline-basis", "freeness"][..]),
        ("squares.graph", &["matrix", "syzygy", "spline-basis"][..]),
        ("g2.graph", &["syzygy", "matrix"][..]),
    ] {
        let g = load(file);
        for cmd in cmds {
            let mut seen = 0;
            check_polys(&json(&[cmd, file]), &g, &mut seen);
            assert!(seen > 0, "{cmd} {file}");
        }
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--json", "freeness", "d33.graph"][..],
        &["decompose", "--order", "exhaustive", "squares.graph"][..],
        &["--json", "spline-basis", "g1.graph"][..],
        &["resolve", "--target", "label-ideal", "g2.graph"][..],
    ] {
        let a = gspline(args);
        let b = gspline(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn prime_field_and_fundamental_basis() {
    let v = json(&["--field", "gf7", "resolve", "--target", "label-ideal", "g2.graph"]);
    assert_eq!(v["pd"], 4);
    let v = json(&["--basis", "fundamental", "matrix", "d33.graph"]);
    assert_eq!(v["matrix"].as_array().unwrap().len(), 2);
}
