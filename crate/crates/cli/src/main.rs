//! `gwalab`: exact checks for degree-one generalized Weyl algebras.
//!
//! Exit codes: 0 all checks pass, 1 a checked property failed, 2 parse or
//! usage error, 3 the command does not apply to the instance.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use gwalab_core::gwa::GwaAlgebra;
use gwalab_core::ideal::{smoothness_test, NotSmoothReason, Verdict};
use gwalab_core::parse::{parse_bindings, parse_instance, Instance};
use gwalab_core::pipeline::{analyze_with, catalog, run_catalog};
use gwalab_core::poly::format_rational;
use gwalab_core::report::{Check, Report};
use gwalab_core::suites;
use gwalab_core::tor::witness_chain;
use gwalab_core::Error;

#[derive(Parser)]
#[command(name = "gwalab", version, about = "Exact homological checks for generalized Weyl algebras over Q[z1, z2]")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Seed for randomized suites.
    #[arg(long, global = true, env = "GWA_LAB_SEED", default_value_t = 0)]
    seed: u64,
    /// Number of random trials (command-specific default).
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Degree cap for sampled polynomials.
    #[arg(long, global = true, default_value_t = 3)]
    max_degree: u32,
    /// Depth of the homotopy double complex.
    #[arg(long, global = true, default_value_t = 5)]
    depth: usize,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Smoothness verdict with certificate or common zero.
    Smooth { file: PathBuf },
    /// Nakayama automorphism and Calabi-Yau status of a smooth instance.
    Nakayama { file: PathBuf },
    /// Full analysis report.
    Analyze { file: PathBuf },
    /// Homotopy double complex identities and Tot d^2 = 0.
    VerifyHtpy { file: PathBuf },
    /// Coboundary construction round trip on random cochains.
    Roundtrip { file: PathBuf },
    /// Nakayama multiplicativity and compatibility of the E1 isomorphism.
    NakayamaVerify { file: PathBuf },
    /// Tor_4 witness for a non-smooth instance.
    TorWitness { file: PathBuf },
    /// Randomized calculus identities in B (x) B.
    Calculus,
    /// Bundled example catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogCmd,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Run {
        name: String,
        /// Parameter values such as "p = 1, q = 2"; repeatable.
        #[arg(long = "at")]
        at: Vec<String>,
    },
}

struct Outcome {
    code: u8,
    text: String,
    json: Value,
}

impl Outcome {
    fn report(r: &Report) -> Self {
        Outcome { code: if r.all_passed() { 0 } else { 1 }, text: r.to_string(), json: json!(r) }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. }
        | Error::UnboundParameter(_)
        | Error::UnknownEntry(_)
        | Error::InvalidDepth(_)
        | Error::InvalidGenerator(_) => 2,
        Error::NotSmooth | Error::ZeroPhi | Error::NotACommonZero | Error::IncompleteTemplate(_) => 3,
        _ => 1,
    }
}

fn load(path: &PathBuf) -> Result<Instance, (u8, String)> {
    let text = std::fs::read_to_string(path).map_err(|e| (2, format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| (exit_code(&e), format!("{}: {e}", path.display())))
}

fn inapplicable(msg: &str) -> Result<Outcome, (u8, String)> {
    Err((3, format!("inapplicable: {msg}")))
}

fn core<T>(r: gwalab_core::Result<T>) -> Result<T, (u8, String)> {
    r.map_err(|e| (exit_code(&e), e.to_string()))
}

fn smooth(w: &GwaAlgebra) -> Outcome {
    let v = smoothness_test(w);
    let mut text = String::new();
    let mut out = json!({ "sigma": w.sigma().to_string(), "phi": w.phi().to_string() });
    let mut checks = Vec::new();
    match &v {
        Verdict::Smooth(c) => {
            text.push_str(&format!(
                "verdict: SMOOTH\ncertificate: alpha = {}, beta1 = {}, beta2 = {}\n",
                c.alpha, c.beta1, c.beta2
            ));
            out["verdict"] = json!("SMOOTH");
            out["certificate"] = json!({
                "alpha": c.alpha.to_string(),
                "beta1": c.beta1.to_string(),
                "beta2": c.beta2.to_string(),
            });
            checks.push(Check::from_bool(
                "αφ + β₁φ₁ + β₂φ₂ = 1",
                "certificate expands to 1".into(),
                c.verify(w.phi()),
                String::new,
            ));
        }
        Verdict::NotSmooth { reason, common_zero } => {
            let reason = match reason {
                NotSmoothReason::ZeroPhi => "phi = 0",
                NotSmoothReason::ProperIdeal => "(phi, phi_1, phi_2) is a proper ideal",
            };
            text.push_str(&format!("verdict: NOT_SMOOTH\nreason: {reason}\n"));
            out["verdict"] = json!("NOT_SMOOTH");
            out["reason"] = json!(reason);
            if let Some([a, b]) = common_zero {
                let pair = [format_rational(a), format_rational(b)];
                text.push_str(&format!("common zero: ({}, {})\n", pair[0], pair[1]));
                out["common_zero"] = json!(pair);
            }
        }
    }
    let r = Report::new("smoothness", checks);
    if !r.checks.is_empty() {
        text.push_str(&r.to_string());
    }
    out["checks"] = json!(r);
    Outcome { code: if r.all_passed() { 0 } else { 1 }, text, json: out }
}

fn tor_witness(inst: &Instance) -> Result<Outcome, (u8, String)> {
    let w = &inst.algebra;
    match smoothness_test(w) {
        Verdict::Smooth(_) => inapplicable("the instance is smooth"),
        Verdict::NotSmooth { common_zero, .. } => {
            if w.phi().is_zero() {
                let r = Report::new(
                    "Tor witness",
                    vec![Check::pass("φ = 0 ⟹ infinite global dimension", "phi = 0 short-circuit".into())],
                );
                let mut o = Outcome::report(&r);
                o.text.push_str("conclusion: infinite global dimension\n");
                o.json = json!({ "report": r, "infinite_global_dimension": true });
                return Ok(o);
            }
            let Some(lambda) = inst.lambda.clone().or(common_zero) else {
                return inapplicable("no rational common zero of phi, phi_1, phi_2 found; supply `lambda`");
            };
            let r = core(witness_chain(w, &lambda))?;
            let mut o = Outcome::report(&r);
            let lam = [format_rational(&lambda[0]), format_rational(&lambda[1])];
            let ok = r.all_passed();
            o.text = format!("lambda: ({}, {})\n{}", lam[0], lam[1], o.text);
            if ok {
                o.text.push_str("conclusion: Tor_4(M, N) != 0, infinite global dimension\n");
            }
            o.json = json!({ "lambda": lam, "report": r, "infinite_global_dimension": ok });
            Ok(o)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, (u8, String)> {
    match &cli.cmd {
        Cmd::Smooth { file } => Ok(smooth(&load(file)?.algebra)),
        Cmd::Nakayama { file } => {
            let inst = load(file)?;
            let r = analyze_with(&inst.algebra, None);
            let Some(n) = &r.nakayama else {
                return inapplicable("the instance is not smooth");
            };
            let text = format!(
                "jacobian: {}\nnu(x) = {}\nnu(y) = {}\nnu(z1) = {}\nnu(z2) = {}\ncalabi-yau: {}\ntwisted calabi-yau dimension: 3\n",
                r.jacobian, n.x, n.y, n.z1, n.z2, r.calabi_yau
            );
            let json = json!({
                "jacobian": r.jacobian,
                "nakayama": n,
                "calabi_yau": r.calabi_yau,
                "twisted_cy_dimension": r.twisted_cy_dimension,
            });
            Ok(Outcome { code: 0, text, json })
        }
        Cmd::Analyze { file } => {
            let inst = load(file)?;
            let r = analyze_with(&inst.algebra, inst.lambda.as_ref());
            let failed = r.witness.as_ref().is_some_and(|w| !w.all_passed());
            Ok(Outcome { code: if failed { 1 } else { 0 }, text: r.to_string(), json: json!(r) })
        }
        Cmd::VerifyHtpy { file } => {
            let inst = load(file)?;
            Ok(Outcome::report(&core(suites::homotopy_suite(&inst.algebra, cli.depth))?))
        }
        Cmd::Roundtrip { file } => {
            let inst = load(file)?;
            let trials = cli.trials.unwrap_or(20);
            Ok(Outcome::report(&core(suites::roundtrip_suite(&inst.algebra, cli.seed, trials, ""))?))
        }
        Cmd::NakayamaVerify { file } => {
            let inst = load(file)?;
            let (pairs, classes) = cli.trials.map_or((50, 20), |t| (t, t));
            Ok(Outcome::report(&core(suites::nakayama_suite(&inst.algebra, cli.seed, pairs, classes))?))
        }
        Cmd::TorWitness { file } => tor_witness(&load(file)?),
        Cmd::Calculus => {
            Ok(Outcome::report(&suites::calculus_suite(cli.seed, cli.trials.unwrap_or(50), cli.max_degree)))
        }
        Cmd::Catalog { action: CatalogCmd::List } => {
            let entries = catalog();
            let mut text = String::new();
            let mut rows = Vec::new();
            for e in &entries {
                let status = if e.is_template() { "template" } else { "ready" };
                text.push_str(&format!("{:<14} {:<9} {}\n", e.name, status, e.description));
                rows.push(json!({
                    "name": e.name,
                    "status": status,
                    "description": e.description,
                    "parameters": e.parameters,
                    "relations": e.relation_count(),
                }));
            }
            Ok(Outcome { code: 0, text, json: json!(rows) })
        }
        Cmd::Catalog { action: CatalogCmd::Run { name, at } } => {
            let specs: Vec<BTreeMap<_, _>> = core(at.iter().map(|s| parse_bindings(s)).collect())?;
            let runs = core(run_catalog(name, &specs))?;
            let ok = runs
                .iter()
                .all(|r| r.validation.all_passed() && r.analysis.witness.as_ref().is_none_or(|w| w.all_passed()));
            let text = runs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
            Ok(Outcome { code: if ok { 0 } else { 1 }, text, json: json!(runs) })
        }
    }
}

/// Writes to stdout, ignoring a closed pipe (e.g. `| head`).
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            if cli.json {
                emit(&format!("{}\n", serde_json::to_string_pretty(&o.json).expect("serializable")));
            } else {
                emit(&o.text);
            }
            ExitCode::from(o.code)
        }
        Err((code, msg)) => {
            if cli.json {
                let body = json!({ "error": msg, "exit_code": code });
                emit(&format!("{}\n", serde_json::to_string_pretty(&body).expect("serializable")));
            }
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
