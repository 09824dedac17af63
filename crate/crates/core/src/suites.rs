//! Verification suites shared by the command-line tool and the acceptance
//! run. Each returns a `Report` whose checks are ordered by trial index, so
//! a fixed seed gives identical output.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use rayon::prelude::*;

use crate::aut::AutWord;
use crate::calculus::{
    delta, delta_residue, nc_diff, nc_jacobian, twist_tensor, twisted_delta, twisted_diff, TwistLabel,
};
use crate::cohomology::{bimodule_action, build_n, cochain_d3, is_cocycle4, phi_map, CochainComplex, E12Class, Side};
use crate::envelope::{DifferentialSet, EnvElem};
use crate::error::{Error, Result};
use crate::gwa::{GwaAlgebra, GwaElem};
use crate::ideal::{smoothness_test, NotSmoothReason, Verdict};
use crate::pipeline::{analyze_with, run_catalog};
use crate::poly::{rat, ratio, Poly2, Rational};
use crate::random::{Sampler, SigmaFamily};
use crate::report::{Check, Report};

fn check_eq<T: PartialEq + std::fmt::Display>(anchor: &str, label: String, lhs: &T, rhs: &T) -> Check {
    Check::from_bool(anchor, label, lhs == rhs, || format!("lhs {lhs} ≠ rhs {rhs}"))
}

/// The B⊗B identities for one (σ, φ): the total-derivative formula, the
/// chain rule for d(σ(zᵢ)), μΔᵢ = ∂ᵢ, μ(J_nc) = J and the four twisted
/// forms of Δᵢ(φ) − Δᵢ^{∂ᵢ}(φ) d zᵢ = Rᵢ(φ) (see `delta_residue`).
pub fn calculus_identities(sigma: &AutWord, phi: &Poly2, tag: &str) -> Vec<Check> {
    let mut out = Vec::new();
    let dz = [nc_diff(&Poly2::z1()), nc_diff(&Poly2::z2())];
    let total = |g: &Poly2| &(&delta(g, 1) * &dz[0]) + &(&delta(g, 2) * &dz[1]);
    out.push(check_eq(
        "d g = Δ₁(g) d z₁ + Δ₂(g) d z₂",
        format!("{tag}: total derivative of φ"),
        &nc_diff(phi),
        &total(phi),
    ));
    for (i, f) in sigma.images().iter().enumerate() {
        let lhs = twist_tensor(sigma, &dz[i], 1, 1);
        out.push(check_eq(
            "(σ⊗σ)(d zᵢ) = Δ₁(fᵢ) d z₁ + Δ₂(fᵢ) d z₂",
            format!("{tag}: chain rule for f{}", i + 1),
            &lhs,
            &total(f),
        ));
    }
    for axis in [1u8, 2] {
        out.push(check_eq(
            "μΔᵢ = ∂ᵢ",
            format!("{tag}: μΔ{axis}(φ)"),
            &delta(phi, axis).mu(),
            &phi.partial(axis as usize - 1),
        ));
    }
    let j = Poly2::constant(sigma.jacobian());
    out.push(check_eq("μ(J_nc) = J", format!("{tag}: μ(J_nc)"), &nc_jacobian(sigma).mu(), &j));

    let id = TwistLabel::id();
    let s = TwistLabel::sigma();
    for axis in [1u8, 2] {
        let z = if axis == 1 { Poly2::z1() } else { Poly2::z2() };
        let d = TwistLabel::partial(axis);
        let sd = TwistLabel::sigma_partial(axis);
        let residue = delta_residue(phi, axis);
        out.push(check_eq(
            "μ(Rᵢ(φ)) = φᵢ",
            format!("{tag}: μ of the residue for i = {axis}"),
            &residue.mu(),
            &phi.partial(axis as usize - 1),
        ));
        // (u, v) of the leading Δ, the twist on ∂ᵢ, the twists of d zᵢ; the
        // right side is (u⊗v)(Rᵢ(φ)), which is 1⊗v(φ₁) for i = 1.
        let parts: [(&str, &TwistLabel, &TwistLabel, &TwistLabel, &TwistLabel, &TwistLabel); 4] = [
            ("Δᵢ(φ) − Δᵢ^{∂ᵢ}(φ) d zᵢ = Rᵢ(φ)", &id, &id, &d, &id, &id),
            ("^σΔᵢ(φ) − ^σΔᵢ^{∂ᵢ}(φ) ^σd zᵢ = (σ⊗1)Rᵢ(φ)", &s, &id, &d, &s, &id),
            ("Δᵢ^σ(φ) − Δᵢ^{σ∂ᵢ}(φ) d^σ zᵢ = (1⊗σ)Rᵢ(φ)", &id, &s, &sd, &id, &s),
            ("^σΔᵢ^σ(φ) − ^σΔᵢ^{σ∂ᵢ}(φ) ^σd^σ zᵢ = (σ⊗σ)Rᵢ(φ)", &s, &s, &sd, &s, &s),
        ];
        for (k, (anchor, u, v, w, du, dv)) in parts.into_iter().enumerate() {
            let lhs = &twisted_delta(sigma, phi, axis, u, v)
                - &(&twisted_delta(sigma, phi, axis, u, w) * &twisted_diff(sigma, &z, du, dv));
            let rhs = residue.map_factors(|p| u.apply(sigma, p), |p| v.apply(sigma, p));
            out.push(check_eq(anchor, format!("{tag}: twisted form ({}) for i = {axis}", k + 1), &lhs, &rhs));
        }
    }
    out
}

/// Calculus identities on `trials` random (σ, φ) with deg φ ≤ `max_degree`.
pub fn calculus_suite(seed: u64, trials: usize, max_degree: u32) -> Report {
    let checks = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut s = Sampler::for_trial(seed, t as u64);
            let sigma = s.aut_word(SigmaFamily::Mixed);
            let phi = s.poly(max_degree, 5);
            calculus_identities(&sigma, &phi, &format!("sample {t}"))
        })
        .collect::<Vec<_>>()
        .concat();
    Report::new("noncommutative calculus identities", checks)
}

/// The two products worked out by hand for the homotopy double complex:
/// d^h₀₀∘d^h₁₀ and d^v₀₀∘t₀₁, both with first column (±dφ, ±dσ(φ)).
pub fn worked_products(w: &GwaAlgebra, ds: &DifferentialSet) -> Report {
    let phi = GwaElem::from_poly(w.phi().clone());
    let sphi = GwaElem::from_poly(w.sigma_phi().clone());
    let dphi = &EnvElem::right(&phi) - &EnvElem::left(&phi);
    let dsphi = &EnvElem::right(&sphi) - &EnvElem::left(&sphi);
    let mut checks = Vec::new();
    let cases = [
        ("d^h∘d^h: P20 → P00", ds.dh(0, 0).unwrap().compose(w, ds.dh(1, 0).unwrap()), [dphi.clone(), dsphi.clone()]),
        ("d^v∘t: P20 → P00", ds.dv(0, 0).unwrap().compose(w, ds.t(0, 1).unwrap()), [-&dphi, -&dsphi]),
    ];
    for (name, m, expected) in cases {
        match m {
            Ok(m) => {
                for (row, e) in expected.iter().enumerate() {
                    checks.push(check_eq(
                        "worked product entries",
                        format!("{name} entry ({row}, 0)"),
                        m.get(row, 0),
                        e,
                    ));
                }
            }
            Err(e) => checks.push(Check::fail("worked product entries", name.into(), e.to_string())),
        }
    }
    Report::new("worked products", checks)
}

/// All homotopy identities and Tot d² = 0 up to `depth`.
pub fn homotopy_suite(w: &GwaAlgebra, depth: usize) -> Result<Report> {
    let ds = DifferentialSet::build(w, depth)?;
    let mut r = ds.verify_homotopy(w);
    r.extend(ds.total_d_squared(w));
    r.extend(worked_products(w, &ds));
    r.title = format!("homotopy double complex to depth {depth}");
    Ok(r)
}

/// `homotopy_suite` on `trials` random instances with φ ≠ 0.
pub fn random_homotopy_suite(seed: u64, trials: usize, depth: usize, max_degree: u32) -> Report {
    let mut checks = Vec::new();
    for t in 0..trials {
        let mut s = Sampler::for_trial(seed, t as u64);
        let sigma = s.sigma();
        let phi = s.nonzero_poly(max_degree, 3);
        let w = GwaAlgebra::new(sigma, phi);
        match homotopy_suite(&w, depth) {
            Ok(r) => checks.extend(r.checks.into_iter().map(|mut c| {
                c.label = format!("instance {t}: {}", c.label);
                c
            })),
            Err(e) => checks.push(Check::fail("homotopy double complex", format!("instance {t}"), e.to_string())),
        }
    }
    Report::new(format!("homotopy double complex on {trials} random instances"), checks)
}

/// Fixture φ with the expected verdict.
pub fn smoothness_fixtures() -> Vec<(Poly2, bool)> {
    let z1 = Poly2::z1();
    let z2 = Poly2::z2();
    vec![
        (&(&z1.pow(2) + &z2.pow(2)) - &Poly2::one(), true),
        (&z1 + &Poly2::constant(rat(5)), true),
        (z1.pow(2), false),
        (&z1 * &z2, false),
        (Poly2::zero(), false),
    ]
}

fn verdict_checks(w: &GwaAlgebra, expected: bool, tag: &str) -> Vec<Check> {
    let v = smoothness_test(w);
    let mut out = vec![Check::from_bool(
        "smooth ⟺ (φ, φ₁, φ₂) = B",
        format!("{tag}: verdict {}", if expected { "SMOOTH" } else { "NOT_SMOOTH" }),
        v.is_smooth() == expected,
        || format!("{v:?}"),
    )];
    if let Verdict::Smooth(c) = &v {
        out.push(Check::from_bool(
            "αφ + β₁φ₁ + β₂φ₂ = 1",
            format!("{tag}: certificate expands to 1"),
            c.verify(w.phi()),
            || format!("{c:?}"),
        ));
    }
    out
}

/// Fixture verdicts, each repeated under `sigmas` random σ.
pub fn smoothness_suite(seed: u64, sigmas: usize) -> Report {
    let mut checks = Vec::new();
    for (k, (phi, expected)) in smoothness_fixtures().into_iter().enumerate() {
        checks.extend(verdict_checks(
            &GwaAlgebra::new(AutWord::identity(), phi.clone()),
            expected,
            &format!("φ = {phi}, σ = id"),
        ));
        for t in 0..sigmas {
            let sigma = Sampler::for_trial(seed, (k * 1000 + t) as u64).sigma();
            let tag = format!("φ = {phi}, σ = {sigma}");
            checks.extend(verdict_checks(&GwaAlgebra::new(sigma, phi.clone()), expected, &tag));
        }
    }
    Report::new("smoothness criterion fixtures", checks)
}

/// d(build_n(d n′)) = d n′ on random degree-3 cochains n′.
pub fn roundtrip_suite(w: &GwaAlgebra, seed: u64, trials: usize, tag: &str) -> Result<Report> {
    let Verdict::Smooth(cert) = smoothness_test(w) else {
        return Err(Error::NotSmooth);
    };
    let cx = CochainComplex::new(w)?;
    let checks = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut s = Sampler::for_trial(seed, t as u64);
            let n0 = s.cochain3();
            let m = cochain_d3(&cx, &n0);
            let label = format!("{tag}trial {t}");
            let mut out = vec![Check::from_bool(
                "d(m) = 0 in cochain degree 5",
                format!("{label}: d(n′) is a cocycle"),
                is_cocycle4(w, &m).all_passed(),
                || "residual nonzero".into(),
            )];
            out.push(match build_n(w, &cert, &m) {
                Ok(n) => Check::from_bool(
                    "d(build_n(m)) = m",
                    format!("{label}: round trip{}", if m.is_zero() { " (zero cocycle)" } else { "" }),
                    cochain_d3(&cx, &n) == m,
                    || "d(n) ≠ m".into(),
                ),
                Err(e) => Check::fail("d(build_n(m)) = m", format!("{label}: round trip"), e.to_string()),
            });
            out
        })
        .collect::<Vec<_>>()
        .concat();
    Ok(Report::new("coboundary round trip", checks))
}

fn generators() -> [(&'static str, GwaElem); 4] {
    [
        ("x", GwaElem::x()),
        ("y", GwaElem::y()),
        ("z1", GwaElem::from_poly(Poly2::z1())),
        ("z2", GwaElem::from_poly(Poly2::z2())),
    ]
}

/// A canonical class with c¹ᵢ, c²ᵢ supported in i ∈ 1..=3.
pub fn random_canonical_class(s: &mut Sampler) -> E12Class {
    let mut c = [BTreeMap::new(), BTreeMap::new()];
    for side in c.iter_mut() {
        for i in 1..=3 {
            if s.rng().gen_bool(0.5) {
                side.insert(i, s.poly(1, 2));
            }
        }
    }
    if c.iter().all(|m| m.values().all(Poly2::is_zero)) {
        c[0].insert(1, Poly2::one());
    }
    E12Class::canonical(&c[0], &c[1])
}

/// ν multiplicative on random pairs, Φ compatible with both actions on
/// random canonical classes, and the Calabi–Yau flag matching J = 1.
pub fn nakayama_suite(w: &GwaAlgebra, seed: u64, pairs: usize, classes: usize) -> Result<Report> {
    if !smoothness_test(w).is_smooth() {
        return Err(Error::NotSmooth);
    }
    let mut checks: Vec<Check> = (0..pairs)
        .into_par_iter()
        .map(|t| {
            let mut s = Sampler::for_trial(seed, t as u64);
            let a = s.gwa_elem(2, 2, 3);
            let b = s.gwa_elem(2, 2, 3);
            let lhs = w.nakayama_apply(&w.multiply(&a, &b));
            let rhs = w.multiply(&w.nakayama_apply(&a), &w.nakayama_apply(&b));
            check_eq("ν(ab) = ν(a)ν(b)", format!("pair {t}"), &lhs, &rhs)
        })
        .collect();
    let compat: Vec<Check> = (0..classes)
        .into_par_iter()
        .map(|t| {
            let mut s = Sampler::for_trial(seed ^ 0x5eed, t as u64);
            let y = random_canonical_class(&mut s);
            let py = phi_map(w, &y);
            let mut out = Vec::new();
            for (name, g) in generators() {
                for side in [Side::Right, Side::Left] {
                    let (anchor, label, rhs) = match side {
                        Side::Right => (
                            "Φ(ȳ◁w) = Φ(ȳ)ν(w)",
                            format!("class {t}: right action by {name}"),
                            w.multiply(&py, &w.nakayama_apply(&g)),
                        ),
                        Side::Left => {
                            ("Φ(w·ȳ) = wΦ(ȳ)", format!("class {t}: left action by {name}"), w.multiply(&g, &py))
                        }
                    };
                    out.push(match bimodule_action(w, &y, &g, side) {
                        Ok(acted) => check_eq(anchor, label, &phi_map(w, &acted), &rhs),
                        Err(e) => Check::fail(anchor, label, e.to_string()),
                    });
                }
            }
            out
        })
        .collect::<Vec<_>>()
        .concat();
    checks.extend(compat);
    let r = analyze_with(w, None);
    checks.push(Check::from_bool(
        "Calabi–Yau ⟺ smooth and J = 1",
        format!("J = {}: calabi_yau = {}", r.jacobian, r.calabi_yau),
        r.calabi_yau == w.jacobian().is_one(),
        String::new,
    ));
    Ok(Report::new("Nakayama automorphism", checks))
}

/// The witness chain for φ ∈ {z₁², z₁z₂} at the origin under the identity
/// and `sigmas` random σ, plus the φ = 0 short circuit.
pub fn witness_suite(seed: u64, sigmas: usize) -> Report {
    let origin = [Rational::zero(), Rational::zero()];
    let mut checks = Vec::new();
    for (k, phi) in [Poly2::z1().pow(2), &Poly2::z1() * &Poly2::z2()].into_iter().enumerate() {
        let words = std::iter::once(AutWord::identity())
            .chain((0..sigmas).map(|t| Sampler::for_trial(seed, (k * 1000 + t) as u64).sigma()));
        for sigma in words {
            let tag = format!("φ = {phi}, σ = {sigma}");
            let w = GwaAlgebra::new(sigma, phi.clone());
            let r = analyze_with(&w, Some(&origin));
            let chain_ok = r.witness.as_ref().is_some_and(|c| c.all_passed());
            checks.push(Check::from_bool(
                "ε-annihilation → 4-cycle → not a boundary",
                format!("{tag}: witness chain"),
                chain_ok,
                || r.witness.as_ref().map_or("no witness".into(), |c| c.to_string()),
            ));
            checks.push(Check::from_bool(
                "Tor₄ ≠ 0 ⟹ infinite global dimension",
                format!("{tag}: infinite global dimension reported"),
                r.infinite_global_dimension,
                String::new,
            ));
        }
    }
    let w = GwaAlgebra::new(AutWord::identity(), Poly2::zero());
    let zero_ok = matches!(smoothness_test(&w), Verdict::NotSmooth { reason: NotSmoothReason::ZeroPhi, .. });
    let r = analyze_with(&w, None);
    checks.push(Check::from_bool(
        "φ = 0 ⟹ infinite global dimension",
        "φ = 0 short-circuits without a witness".into(),
        zero_ok && r.infinite_global_dimension && r.witness.is_none(),
        || format!("{r:?}"),
    ));
    Report::new("non-smooth witness", checks)
}

/// N(p,q) verdicts at the three reference specializations.
pub fn npq_suite() -> Result<Report> {
    let cases = [(rat(1), rat(2), true), (rat(1), ratio(1, 3), true), (rat(0), rat(2), false)];
    let specs: Vec<BTreeMap<String, Rational>> = cases
        .iter()
        .map(|(p, q, _)| BTreeMap::from([("p".to_string(), p.clone()), ("q".to_string(), q.clone())]))
        .collect();
    let runs = run_catalog("npq", &specs)?;
    let mut checks = Vec::new();
    for ((p, q, expected), run) in cases.iter().zip(&runs) {
        let tag = format!("(p, q) = ({p}, {q})");
        checks.push(Check::from_bool(
            "presentation relations ↦ 0",
            format!("{tag}: presentation valid"),
            run.validation.all_passed(),
            || run.validation.to_string(),
        ));
        checks.push(Check::from_bool(
            "N(p,q) smooth ⟺ p ≠ 0",
            format!("{tag}: {}", run.analysis.verdict()),
            run.analysis.smooth == *expected,
            String::new,
        ));
    }
    Ok(Report::new("N(p,q) catalog entry", checks))
}
