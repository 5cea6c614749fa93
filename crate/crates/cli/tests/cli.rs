use std::process::Command;

use oslab_core::ring::{power_product, Factor, SeriesJson};
use oslab_core::{Caps, MonomialKey, Series, Var};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("oslab").chain(args.iter().copied());
    let code = oslab_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, out, err) = run(&full);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn verify_os_passes_with_envelope() {
    let (code, v) = run_json(&["verify-os", "--p", "2", "--q", "3", "--order", "20"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "oslab/1");
    assert_eq!(v["command"], "verify-os");
    assert_eq!(v["seed"], 0);
    assert_eq!(v["passed"], true);
    assert_eq!(v["result"]["identity"], "homfly-hilbert-correspondence");
    assert!(v["result"]["checked"].as_u64().unwrap() > 0);
    assert_eq!(v["result"]["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn non_coprime_germ_is_a_usage_error() {
    let (code, out, err) = run(&["verify-os", "--p", "2", "--q", "4"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("gcd(p,q) must be 1"), "{err}");
}

#[test]
fn unknown_command_and_bad_flags() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["conifold", "--tmax", "0"]).0, 2);
    assert_eq!(run(&["conifold", "--format", "yaml"]).0, 2);
    assert_eq!(run(&["homfly", "--word", "1,1,1"]).0, 2);
    assert_eq!(run(&["refined-series", "--p", "2", "--q", "3", "--nmax", "9", "--backend", "pointcount"]).0, 2);
}

#[test]
fn conifold_matches_product_fixture() {
    let (code, v) = run_json(&["conifold", "--tmax", "2", "--umax", "5"]);
    assert_eq!(code, 0);
    let got: SeriesJson = serde_json::from_value(v["result"]["series"].clone()).unwrap();
    let got = Series::try_from(&got).unwrap();
    let caps = Caps::none().with(Var::T, 2).with(Var::U, 5);
    let factors: Vec<Factor> = (1..=5)
        .map(|k| Factor::plus(MonomialKey::from_pairs(&[(Var::T, 1), (Var::U, k)]), k))
        .collect();
    let expect = power_product(&factors, &caps).unwrap();
    assert_eq!(got, expect);
    assert_eq!(got.coeff_of(&[(Var::T, 2), (Var::U, 5)]), oslab_core::ring::rat(10));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let cases: [&[&str]; 3] = [
        &["homfly", "--strands", "3", "--word", "1,-2,1,-2", "--markov-samples", "6", "--seed", "17"],
        &["local-series", "--p", "3", "--q", "4", "--nmax", "7"],
        &["wallcross-check", "--p", "2", "--q", "3", "--rmax", "2", "--nmax", "8"],
    ];
    for args in cases {
        let mut a = args.to_vec();
        a.extend(["--format", "json"]);
        let first = run(&a);
        assert_eq!(first, run(&a));
        assert_eq!(first.0, 0, "{}", first.2);
    }
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let base = ["local-series", "--p", "2", "--q", "5", "--nmax", "8", "--format", "json"];
    let one = run(&[&base[..], &["--threads", "1"]].concat());
    let four = run(&[&base[..], &["--threads", "4"]].concat());
    assert_eq!(one, four);
}

#[test]
fn seed_is_recorded_and_changes_samples() {
    let args = ["homfly", "--strands", "2", "--word", "1,1,1", "--markov-samples", "4"];
    let (_, a) = run_json(&[&args[..], &["--seed", "1"]].concat());
    let (_, b) = run_json(&[&args[..], &["--seed", "2"]].concat());
    assert_eq!(a["seed"], 1);
    assert_eq!(b["seed"], 2);
    assert_eq!(a["result"]["value"], b["result"]["value"]);
    assert_ne!(a["result"]["markov"]["cases"], b["result"]["markov"]["cases"]);
}

#[test]
fn engines_agree_on_torus_knot() {
    let (_, hecke) = run_json(&["homfly", "--torus", "2,5"]);
    let (_, oracle) = run_json(&["homfly", "--torus", "2,5", "--engine", "oracle"]);
    assert_eq!(hecke["result"]["value"], oracle["result"]["value"]);
}

#[test]
fn check_commands_pass() {
    for args in [
        &["refined-series", "--p", "2", "--q", "5", "--nmax", "3", "--backend", "pointcount"][..],
        &["oracle-pointcount", "--p", "2", "--q", "3", "--l", "3", "--fit"],
        &["wallcross-check", "--p", "2", "--q", "3", "--rmax", "3", "--nmax", "10"],
        &["global-series", "--p", "2", "--q", "3", "--motivic", "--nmax", "3"],
        &["gv-expand", "--p", "2", "--q", "3"],
    ] {
        let (code, v) = run_json(args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn quiver_markdown_matches_committed_audit() {
    let (code, out, _) = run(&["quiver-audit", "--kmax", "3", "--rmax", "3", "--nmax", "12", "--Nmax", "4", "--format", "markdown"]);
    assert_eq!(code, 0);
    let committed = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/quiver_audit.md")).unwrap();
    assert_eq!(out, committed);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_oslab");
    let ok = Command::new(bin).args(["conifold", "--tmax", "1", "--umax", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("(seed 0)"));
    let bad = Command::new(bin).args(["verify-os", "--p", "2", "--q", "4"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
