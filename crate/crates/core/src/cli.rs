//! Command-line front end: read an input file, run one pipeline stage and
//! render its result.
//!
//! Every run is a deterministic function of its [`RunConfig`]. Exit codes:
//! `0` success, `1` a verification counterexample, `2` an input error, `3`
//! a refusal (search space or precision out of reach).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use serde_json::json;

use crate::algebra::TestRing;
use crate::arcspace::{compute_defect, ring_series, validate, ArcProblem};
use crate::equivalence::{
    forward_map, inverse_map_traced, roundtrip_check, LiftOptions, ModelSampler, PrecisionPlan, RoundtripOptions,
    RoundtripReport,
};
use crate::error::Error;
use crate::model::{build_model, check_model_point, ModelCheck};
use crate::oracle::{run_oracle, OracleReport};
use crate::parse::split_top_level;
use crate::weierstrass::weierstrass_prepare;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

pub const ROUNDTRIP_SCHEMA: &str = "formal-arcs/roundtrip/v1";
pub const ORACLE_SCHEMA: &str = "formal-arcs/oracle/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Validate the input and, with `--ring`, the precision it allows.
    Check,
    /// Print the defect `d`.
    Defect,
    /// Emit the model equations.
    Model,
    /// Weierstrass-prepare a series given with `--series`.
    Prepare,
    /// Lift one sampled model point and print the per-level trace.
    Lift,
    /// Seeded roundtrip trials of the forward and inverse maps.
    Roundtrip,
    /// Exhaustive comparison over a finite test ring.
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Singular,
}

/// Everything a run depends on.
#[derive(Clone, Debug, PartialEq, Eq, Parser)]
#[command(name = "formal-arcs", version, about = "Formal models of arc spaces at non-degenerate arcs")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Input file (presentation and base arc); not used by `prepare`.
    pub input: Option<PathBuf>,
    /// Test ring, e.g. `F2[e]/e^2` or `Q[e1,e2]/(e1,e2)^2`.
    #[arg(long)]
    pub ring: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    /// Reporting precision (`roundtrip`, `lift`), enumeration precision
    /// (`oracle`) or series precision (`prepare`).
    #[arg(long)]
    pub precision: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the main output here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// `oracle`: write both enumerated sets here.
    #[arg(long)]
    pub dump: Option<PathBuf>,
    /// `prepare`: coefficient list `[f_0, f_1, …]` of elements of the ring.
    #[arg(long)]
    pub series: Option<String>,
}

impl RunConfig {
    /// Configuration with the documented defaults.
    pub fn new(command: Command) -> RunConfig {
        RunConfig {
            command,
            input: None,
            ring: None,
            r: 1,
            precision: None,
            seed: 0,
            trials: 100,
            format: Format::Text,
            output: None,
            dump: None,
            series: None,
        }
    }
}

/// Exit status with the text destined for standard output and error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn verdict(passed: bool, stdout: String) -> Outcome {
        Outcome { code: if passed { EXIT_OK } else { EXIT_COUNTEREXAMPLE }, stdout, stderr: String::new() }
    }

    fn fail(code: i32, message: impl Into<String>) -> Outcome {
        Outcome { code, stdout: String::new(), stderr: format!("error: {}\n", message.into()) }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Refused { .. } | Error::PrecisionExhausted { .. } => EXIT_REFUSED,
        Error::ObstructedLift { .. } => EXIT_COUNTEREXAMPLE,
        _ => EXIT_INPUT,
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Outcome {
        Outcome::fail(exit_code(&e), e.to_string())
    }
}

type Run = std::result::Result<Outcome, Outcome>;

fn load(cfg: &RunConfig) -> std::result::Result<ArcProblem, Outcome> {
    let path = cfg
        .input
        .as_ref()
        .ok_or_else(|| Outcome::fail(EXIT_INPUT, format!("`{:?}` needs an input file", cfg.command).to_lowercase()))?;
    let src = std::fs::read_to_string(path)
        .map_err(|e| Outcome::fail(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))?;
    Ok(src.parse::<ArcProblem>()?)
}

fn ring(cfg: &RunConfig) -> std::result::Result<Arc<TestRing>, Outcome> {
    let src = cfg
        .ring
        .as_ref()
        .ok_or_else(|| Outcome::fail(EXIT_INPUT, "this command needs --ring"))?;
    Ok(Arc::new(src.parse::<TestRing>()?))
}

fn text_only(cfg: &RunConfig) -> std::result::Result<(), Outcome> {
    if cfg.format == Format::Text {
        Ok(())
    } else {
        Err(Outcome::fail(EXIT_INPUT, format!("`{:?}` only supports --format text", cfg.command).to_lowercase()))
    }
}

/// The precision plan for a run over `ring`, refusing when the arc is not
/// known far enough.
fn plan(cfg: &RunConfig, prob: &ArcProblem, ring: &TestRing, d: usize) -> std::result::Result<PrecisionPlan, Outcome> {
    let a = ring.nilpotency();
    let reporting = cfg.precision.unwrap_or_else(|| PrecisionPlan::default_reporting(d, cfg.r));
    let plan = PrecisionPlan::with_reporting(reporting, a, d, cfg.r).from_env()?;
    if plan.working > prob.arc.precision() {
        return Err(Outcome::fail(
            EXIT_REFUSED,
            format!(
                "arc precision {} is below the working precision {} needed at reporting precision {} over {ring}",
                prob.arc.precision(),
                plan.working,
                plan.reporting
            ),
        ));
    }
    Ok(plan)
}

/// Run one command. Never panics on bad input; files named by `--output`
/// and `--dump` are written as a side effect.
pub fn run(cfg: &RunConfig) -> Outcome {
    let result = match cfg.command {
        Command::Check => check(cfg),
        Command::Defect => defect(cfg),
        Command::Model => model(cfg),
        Command::Prepare => prepare(cfg),
        Command::Lift => lift(cfg),
        Command::Roundtrip => roundtrip(cfg),
        Command::Oracle => oracle(cfg),
    };
    let mut out = result.unwrap_or_else(|e| e);
    if let Some(path) = &cfg.output {
        if out.code != EXIT_INPUT && out.code != EXIT_REFUSED {
            if let Err(e) = std::fs::write(path, &out.stdout) {
                return Outcome::fail(EXIT_INPUT, format!("cannot write {}: {e}", path.display()));
            }
            out.stdout = format!("wrote {}\n", path.display());
        }
    }
    out
}

fn check(cfg: &RunConfig) -> Run {
    text_only(cfg)?;
    let prob = load(cfg)?;
    let report = validate(&prob.pres, &prob.arc)?;
    let mut out = format!("{report}\n");
    if cfg.ring.is_some() {
        let ring = ring(cfg)?;
        let d = report.det_order;
        let plan = plan(cfg, &prob, &ring, d)?;
        writeln!(
            out,
            "precision over {ring}: need {} for reporting precision {}, have {}",
            plan.working,
            plan.reporting,
            prob.arc.precision()
        )
        .unwrap();
    }
    Ok(Outcome::ok(out))
}

fn defect(cfg: &RunConfig) -> Run {
    text_only(cfg)?;
    let prob = load(cfg)?;
    let d = compute_defect(&prob.pres, &prob.arc)?;
    let mut out = format!("d = {d}\n");
    if d == 0 {
        out.push_str("d = 0: the arc sees a smooth chart; the model is trivial (y is determined by x)\n");
    }
    Ok(Outcome::ok(out))
}

fn model(cfg: &RunConfig) -> Run {
    let prob = load(cfg)?;
    let mo = build_model(&prob.pres, &prob.arc, cfg.r)?;
    Ok(Outcome::ok(match cfg.format {
        Format::Text => format!("{mo}\n"),
        Format::Json => mo.to_json(),
        Format::Singular => mo.to_singular(),
    }))
}

fn prepare(cfg: &RunConfig) -> Run {
    text_only(cfg)?;
    let ring = ring(cfg)?;
    let src = cfg
        .series
        .as_ref()
        .ok_or_else(|| Outcome::fail(EXIT_INPUT, "prepare needs --series '[f0, f1, ...]'"))?;
    let parts = split_top_level(src)?;
    let coeffs: Vec<&str> = parts.iter().map(|c| c.trim()).collect();
    let prec = cfg.precision.unwrap_or(coeffs.len());
    let f = ring_series(&ring, &coeffs, prec)?;
    let w = weierstrass_prepare(&f)?;
    let known = w.u.precision().min(f.precision());
    let ok = w.q.is_distinguished() && f.eq_mod(&w.u.mul_poly(&w.q), known);
    let out = format!("f = {f}\n{w}\nq·u = f mod t^{known}: {}\n", if ok { "yes" } else { "NO" });
    Ok(Outcome::verdict(ok, out))
}

fn lift(cfg: &RunConfig) -> Run {
    text_only(cfg)?;
    let prob = load(cfg)?;
    let ring = ring(cfg)?;
    let mo = build_model(&prob.pres, &prob.arc, cfg.r)?;
    let plan = plan(cfg, &prob, &ring, mo.d)?;
    let xi_prec = plan.working - (cfg.r + 1) * mo.d;
    let sampler = ModelSampler::new(&mo, &ring)?;
    let (pt, fallback) = sampler.sample_or_base(cfg.seed, 0, xi_prec)?;
    let mut out = format!("lift over {ring} with r = {}, d = {}, seed = {}\n", cfg.r, mo.d, cfg.seed);
    if fallback {
        out.push_str("sampler fell back to the base point's model coordinates\n");
    }
    let rep_xi = plan.reporting.saturating_sub((cfg.r + 1) * mo.d);
    writeln!(out, "model point:\n{}", pt.render(rep_xi)).unwrap();
    let (def, trace) = inverse_map_traced(&prob.pres, &prob.arc, &pt, cfg.r, &LiftOptions::with_precision(plan.working))?;
    out.push_str(&trace.render(plan.reporting));
    writeln!(out, "deformation mod t^{}:\n{}", plan.reporting, def.render(plan.reporting)).unwrap();
    let mut problems = Vec::new();
    if !def.reduces_to(&prob.arc) {
        problems.push("the lift does not reduce to the base arc".to_string());
    }
    if !def.is_solution(&prob.pres)? {
        problems.push("the lift does not solve the equations".to_string());
    }
    let back = forward_map(&prob.pres, &def, cfg.r)?;
    if !back.eq_at(&pt, rep_xi) {
        problems.push("forward map does not return the model point".to_string());
    }
    if let ModelCheck::EquationFails { label, .. } = check_model_point(&mo, &pt)? {
        problems.push(format!("sampled point violates [{label}]"));
    }
    for p in &problems {
        writeln!(out, "COUNTEREXAMPLE: {p}").unwrap();
    }
    writeln!(out, "lift: {}", if problems.is_empty() { "pass" } else { "FAIL" }).unwrap();
    Ok(Outcome::verdict(problems.is_empty(), out))
}

fn roundtrip_json(rep: &RoundtripReport) -> String {
    let doc = json!({
        "schema": ROUNDTRIP_SCHEMA,
        "ring": rep.ring,
        "r": rep.r,
        "d": rep.d,
        "seed": rep.seed,
        "reporting_precision": rep.plan.reporting,
        "working_precision": rep.plan.working,
        "trials": rep.trials(),
        "passes": rep.passes(),
        "fallbacks": rep.fallbacks(),
        "defect_consistent": rep.defect_consistent(),
        "failures": rep.failures().map(|o| json!({"trial": o.trial, "reason": o.failure})).collect::<Vec<_>>(),
        "digest": rep.digest,
        "passed": rep.passed() && rep.defect_consistent(),
    });
    serde_json::to_string_pretty(&doc).expect("serialisable") + "\n"
}

fn roundtrip(cfg: &RunConfig) -> Run {
    if cfg.format == Format::Singular {
        return Err(Outcome::fail(EXIT_INPUT, "roundtrip supports --format text or json"));
    }
    let prob = load(cfg)?;
    let ring = ring(cfg)?;
    let d = compute_defect(&prob.pres, &prob.arc)?;
    let plan = plan(cfg, &prob, &ring, d)?;
    let opts = RoundtripOptions { plan, skip_last_level: false };
    let rep = roundtrip_check(&prob.pres, &prob.arc, &ring, cfg.r, cfg.trials, cfg.seed, &opts)?;
    let passed = rep.passed() && rep.defect_consistent();
    let out = match cfg.format {
        Format::Json => roundtrip_json(&rep),
        _ => format!("{rep}\n"),
    };
    Ok(Outcome::verdict(passed, out))
}

fn oracle_json(rep: &OracleReport) -> String {
    let doc = json!({
        "schema": ORACLE_SCHEMA,
        "ring": rep.ring,
        "precision": rep.precision,
        "r": rep.r,
        "d": rep.d,
        "deformations": rep.deformations,
        "jet_classes": rep.classes,
        "closed_form": rep.closed_form.map(|(n, eq)| json!({"count": n, "equal": eq})),
        "model_points": rep.model_points,
        "xi_precision": rep.xi_precision,
        "forward_injective": rep.forward_injective,
        "forward_onto": rep.forward_onto,
        "inverse_consistent": rep.inverse_consistent,
        "lift_precision": rep.lift_precision,
        "failures": rep.failures,
        "passed": rep.passed(),
    });
    serde_json::to_string_pretty(&doc).expect("serialisable") + "\n"
}

fn oracle(cfg: &RunConfig) -> Run {
    if cfg.format == Format::Singular {
        return Err(Outcome::fail(EXIT_INPUT, "oracle supports --format text or json"));
    }
    let prob = load(cfg)?;
    let ring = ring(cfg)?;
    let d = compute_defect(&prob.pres, &prob.arc)?;
    let n = cfg.precision.unwrap_or((cfg.r + 1) * d + 2);
    if n > prob.arc.precision() {
        return Err(Outcome::fail(
            EXIT_REFUSED,
            format!("enumeration precision {n} exceeds the arc precision {}", prob.arc.precision()),
        ));
    }
    let (rep, sets) = run_oracle(&prob.pres, &prob.arc, &ring, n, cfg.r)?;
    if let Some(path) = &cfg.dump {
        std::fs::write(path, sets.render(n, rep.xi_precision))
            .map_err(|e| Outcome::fail(EXIT_INPUT, format!("cannot write {}: {e}", path.display())))?;
    }
    let out = match cfg.format {
        Format::Json => oracle_json(&rep),
        _ => format!("{rep}\n"),
    };
    Ok(Outcome::verdict(rep.passed(), out))
}
