//! Acceptance run: one PASS/FAIL line per criterion, then a summary. Seeds,
//! sample counts and time budgets are fixed below.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use gwalab_core::aut::{AutGenerator, AutWord};
use gwalab_core::gwa::GwaAlgebra;
use gwalab_core::pipeline::analyze;
use gwalab_core::poly::{rat, Poly2};
use gwalab_core::report::Report;
use gwalab_core::suites;
use gwalab_core::Result;

const SEED: u64 = 20_240_601;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    summary: String,
}

fn from_report(r: &Report, elapsed: Duration, budget: Option<Duration>) -> Outcome {
    let within = budget.is_none_or(|b| elapsed <= b);
    let mut summary = format!("{}/{} checks, {:.2?}", r.passed_count(), r.checks.len(), elapsed);
    if let Some(b) = budget {
        summary.push_str(&format!(" (budget {b:?})"));
    }
    if let Some(f) = r.failures().next() {
        summary.push_str(&format!("; first failure: {}", f.label));
    }
    Outcome { ok: r.all_passed() && !r.checks.is_empty() && within, summary }
}

fn timed<F: FnOnce() -> Result<Report>>(budget: Option<Duration>, f: F) -> Outcome {
    let start = Instant::now();
    match f() {
        Ok(r) => from_report(&r, start.elapsed(), budget),
        Err(e) => Outcome { ok: false, summary: format!("error: {e}") },
    }
}

fn circle() -> GwaAlgebra {
    let phi = &(&Poly2::z1().pow(2) + &Poly2::z2().pow(2)) - &Poly2::one();
    GwaAlgebra::new(AutWord::identity(), phi)
}

fn diagonal() -> GwaAlgebra {
    GwaAlgebra::new(
        AutWord::new(vec![AutGenerator::affine_int([[2, 0], [0, 3]], [0, 0])]),
        &Poly2::z1() + &Poly2::constant(rat(5)),
    )
}

fn triangular() -> GwaAlgebra {
    let s = AutWord::new(vec![
        AutGenerator::elementary(1, Poly2::z2().pow(2)).unwrap(),
        AutGenerator::affine_int([[1, 1], [0, 2]], [1, 0]),
    ]);
    GwaAlgebra::new(s, &(&Poly2::z1() * &Poly2::z2()) + &Poly2::one())
}

fn calculus() -> Outcome {
    timed(Some(Duration::from_secs(5)), || Ok(suites::calculus_suite(SEED, 50, 4)))
}

fn homotopy() -> Outcome {
    timed(Some(Duration::from_secs(60)), || Ok(suites::random_homotopy_suite(SEED, 20, 5, 3)))
}

fn smoothness() -> Outcome {
    timed(None, || Ok(suites::smoothness_suite(SEED, 5)))
}

fn roundtrip() -> Outcome {
    timed(Some(Duration::from_secs(120)), || {
        let mut r = Report::new("round trip", Vec::new());
        for (name, w) in [("circle", circle()), ("diagonal", diagonal()), ("triangular", triangular())] {
            r.extend(suites::roundtrip_suite(&w, SEED, 20, &format!("{name} "))?);
        }
        Ok(r)
    })
}

fn nakayama() -> Outcome {
    timed(None, || {
        let mut r = Report::new("nakayama", Vec::new());
        for w in [circle(), diagonal(), triangular()] {
            r.extend(suites::nakayama_suite(&w, SEED, 50, 20)?);
        }
        let flags = [(circle(), true), (diagonal(), false), (triangular(), false)];
        for (w, cy) in flags {
            let a = analyze(&w);
            r.checks.push(gwalab_core::report::Check::from_bool(
                "J = 1 ⟺ Calabi–Yau",
                format!("J = {}: expected calabi_yau = {cy}", a.jacobian),
                a.smooth && a.calabi_yau == cy,
                || format!("smooth {}, calabi_yau {}", a.smooth, a.calabi_yau),
            ));
        }
        Ok(r)
    })
}

fn witness() -> Outcome {
    timed(None, || Ok(suites::witness_suite(SEED, 3)))
}

fn npq() -> Outcome {
    timed(None, suites::npq_suite)
}

fn instance(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "instances", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn determinism() -> Outcome {
    let runs: Vec<Vec<String>> = vec![
        vec!["calculus".into()],
        vec!["--json".into(), "calculus".into()],
        vec!["verify-htpy".into(), instance("triangular.gwa")],
        vec!["--trials".into(), "5".into(), "roundtrip".into(), instance("circle.gwa")],
        vec!["--trials".into(), "5".into(), "nakayama-verify".into(), instance("diagonal.gwa")],
        vec!["--json".into(), "analyze".into(), instance("cusp.gwa")],
        vec!["tor-witness".into(), instance("node.gwa")],
        vec!["catalog".into(), "run".into(), "npq".into()],
    ];
    let bin = env!("CARGO_BIN_EXE_gwalab");
    let run = |args: &[String]| {
        Command::new(bin).args(["--seed", "17"]).args(args).output().map(|o| (o.status.code(), o.stdout))
    };
    let mut diffs = Vec::new();
    for args in &runs {
        match (run(args), run(args)) {
            (Ok(a), Ok(b)) if a == b && !a.1.is_empty() => {}
            (Ok(_), Ok(_)) => diffs.push(args.join(" ")),
            (Err(e), _) | (_, Err(e)) => return Outcome { ok: false, summary: format!("spawn failed: {e}") },
        }
    }
    Outcome {
        ok: diffs.is_empty(),
        summary: if diffs.is_empty() {
            format!("{} commands byte-identical across two runs", runs.len())
        } else {
            format!("output differs for: {}", diffs.join("; "))
        },
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 calculus identities, 50 samples, deg ≤ 4, < 5 s", calculus),
        ("2 homotopy double complex, 20 instances, depth 5, < 60 s", homotopy),
        ("3 smoothness fixtures with certificates, 5 σ per φ", smoothness),
        ("4 coboundary round trip, 20 n′ × 3 instances, < 120 s", roundtrip),
        ("5 Nakayama multiplicativity, compatibility, CY flag", nakayama),
        ("6 non-smooth witness chain and φ = 0", witness),
        ("7 N(p,q) at (1,2), (1,1/3), (0,2)", npq),
        ("8 determinism of CLI output", determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let o = f();
        if !o.ok {
            failed += 1;
        }
        println!("{} criterion {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.summary);
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
