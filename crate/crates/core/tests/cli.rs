//! The command-line front end: subcommands, formats, exit codes and
//! reproducibility.

use std::path::PathBuf;
use std::process::Command as Process;

use formal_arcs::cli::{exit_code, run, Command, Format, RunConfig, EXIT_COUNTEREXAMPLE, EXIT_INPUT, EXIT_OK, EXIT_REFUSED};
use formal_arcs::error::{Condition, Error};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn config(command: Command, input: &str) -> RunConfig {
    RunConfig { input: Some(data(input)), ..RunConfig::new(command) }
}

fn with_ring(command: Command, input: &str, ring: &str) -> RunConfig {
    RunConfig { ring: Some(ring.into()), ..config(command, input) }
}

#[test]
fn model_of_the_example() {
    let out = run(&config(Command::Model, "example_square.arc"));
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("6 variables"), "{}", out.stdout);
    assert!(out.stdout.contains("4 equations"), "{}", out.stdout);

    let json = run(&RunConfig { format: Format::Json, ..config(Command::Model, "example_square.arc") });
    let doc: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(doc["equations"].as_array().unwrap().len(), 4);

    let sing = run(&RunConfig { format: Format::Singular, ..config(Command::Model, "example_square.arc") });
    assert_eq!(sing.code, EXIT_OK);
    assert!(sing.stdout.contains("ring"), "{}", sing.stdout);
}

#[test]
fn defect_and_trivial_model() {
    let out = run(&config(Command::Defect, "cusp.arc"));
    assert_eq!((out.code, out.stdout.lines().next()), (EXIT_OK, Some("d = 3")));
    let out = run(&config(Command::Defect, "graph.arc"));
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("d = 0\n"));
    assert!(out.stdout.lines().count() > 1, "expected a notice for the trivial model");
}

#[test]
fn check_reports_precision_needs() {
    let out = run(&with_ring(Command::Check, "cusp.arc", "Q[e]/e^3"));
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let out = run(&RunConfig { precision: Some(200), ..with_ring(Command::Check, "cusp.arc", "Q[e]/e^3") });
    assert_eq!(out.code, EXIT_REFUSED, "{}", out.stdout);
}

#[test]
fn prepare_a_series() {
    let cfg = RunConfig {
        ring: Some("Q[e]/e^2".into()),
        series: Some("[e, 1, 3]".into()),
        ..RunConfig::new(Command::Prepare)
    };
    let out = run(&cfg);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stdout.contains("q = e + t"), "{}", out.stdout);
    assert!(out.stdout.contains(": yes"));
    let unit = RunConfig { series: Some("[1, e]".into()), ..cfg.clone() };
    assert_eq!(run(&unit).code, EXIT_OK);
    let nothing = RunConfig { series: Some("[e, e]".into()), ..cfg };
    assert_ne!(run(&nothing).code, EXIT_OK);
}

#[test]
fn lift_prints_a_trace() {
    let out = run(&with_ring(Command::Lift, "cusp.arc", "Q[e]/e^3"));
    assert_eq!(out.code, EXIT_OK, "{}\n{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("level 2"), "{}", out.stdout);
    assert!(out.stdout.contains("level 3"));
}

#[test]
fn roundtrip_acceptance_run() {
    let cfg = RunConfig {
        trials: 200,
        seed: 42,
        ..with_ring(Command::Roundtrip, "example_square_f2.arc", "F2[e]/e^2")
    };
    let out = run(&cfg);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("200/200"), "{}", out.stdout);
    let json = run(&RunConfig { format: Format::Json, ..cfg });
    let doc: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(doc["schema"], "formal-arcs/roundtrip/v1");
    assert_eq!(doc["passed"], true);
}

#[test]
fn oracle_run_with_dump_and_output() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("sets.txt");
    let report = dir.path().join("report.json");
    let cfg = RunConfig {
        precision: Some(4),
        dump: Some(dump.clone()),
        output: Some(report.clone()),
        format: Format::Json,
        ..with_ring(Command::Oracle, "example_square_f2.arc", "F2[e]/e^2")
    };
    let out = run(&cfg);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["schema"], "formal-arcs/oracle/v1");
    assert_eq!(doc["deformations"], 256);
    assert_eq!(doc["model_points"], 256);
    assert_eq!(doc["passed"], true);
    let sets = std::fs::read_to_string(&dump).unwrap();
    assert!(sets.starts_with("# enumerated deformations (256)"));
}

#[test]
fn exit_codes() {
    // input errors
    assert_eq!(run(&RunConfig::new(Command::Model)).code, EXIT_INPUT);
    assert_eq!(run(&config(Command::Model, "no_such_file.arc")).code, EXIT_INPUT);
    assert_eq!(run(&with_ring(Command::Roundtrip, "cusp.arc", "Q[e]/e^")).code, EXIT_INPUT);
    assert_eq!(run(&with_ring(Command::Oracle, "example_square.arc", "Q[e]/e^2")).code, EXIT_INPUT);
    // refusals
    let big = RunConfig { precision: Some(12), ..with_ring(Command::Oracle, "example_square_f2.arc", "F2[e]/e^2") };
    assert_eq!(run(&big).code, EXIT_REFUSED);
    let deep = RunConfig { precision: Some(60), ..with_ring(Command::Roundtrip, "cusp.arc", "Q[e]/e^3") };
    assert_eq!(run(&deep).code, EXIT_REFUSED);
    // input files are validated
    let dir = tempfile::tempdir().unwrap();
    let file = |name: &str, y: &str| {
        let path = dir.path().join(name);
        let text = format!("field: Q\nnx: 1 ; ny: 1\np1: y1 - x1^2\narc.x1: [0, 1]\narc.y1: {y}\nprecision: 16\n");
        std::fs::write(&path, text).unwrap();
        RunConfig { input: Some(path), ..RunConfig::new(Command::Check) }
    };
    assert_eq!(run(&file("on.arc", "[0, 0, 1]")).code, EXIT_OK);
    assert_eq!(run(&file("off.arc", "[0, 1]")).code, EXIT_INPUT);
    // an obstructed lift is a counterexample, not an input error
    let obstructed = Error::ObstructedLift { level: 2, condition: Condition::Residual };
    assert_eq!(exit_code(&obstructed), EXIT_COUNTEREXAMPLE);
}

#[test]
fn output_is_reproducible() {
    let cfgs = [
        RunConfig { trials: 30, seed: 7, ..with_ring(Command::Roundtrip, "cusp.arc", "Q[e]/e^2") },
        with_ring(Command::Lift, "complete_intersection.arc", "Q[e]/e^3"),
        RunConfig { format: Format::Json, ..config(Command::Model, "example_cubic.arc") },
    ];
    for cfg in &cfgs {
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| run(cfg));
        let many = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| run(cfg));
        assert_eq!(one, many, "{:?}", cfg.command);
        assert_eq!(one, run(cfg));
    }
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_formal-arcs");
    let ok = Process::new(bin).args(["defect"]).arg(data("example_square.arc")).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).lines().next(), Some("d = 1"));
    let bad = Process::new(bin).args(["model", "/nonexistent.arc"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INPUT));
    assert!(!bad.stderr.is_empty());
    let usage = Process::new(bin).args(["frobnicate"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_INPUT));
}
