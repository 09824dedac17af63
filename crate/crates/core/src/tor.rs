//! The Tor₄ witness for non-smooth W: at a common zero λ of φ, φ₁, φ₂ the
//! class (1̄⊗1̄, 0) in M ⊗_W 𝒫₄₀ ⊗_W N is a cycle that is not a boundary,
//! where M = W/(y, z₁−λ₁, z₂−λ₂)W and N = W/W(x, z₁−λ₁, z₂−λ₂).
//!
//! M has basis x̄ʲ (j ≥ 0) and the class of Σ wₙmₙ is Σ_{n≥0} wₙ(λ)x̄ⁿ.
//! In left-coefficient form the degree −i part of the left ideal is
//! σ^{−i}(m)yⁱ, so N has basis ȳⁱ (i ≥ 0) and b·yⁱ has class σⁱ(b)(λ)ȳⁱ.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::calculus::delta;
use crate::envelope::{DifferentialSet, EnvElem, EnvMatrix, MapKind};
use crate::error::{Error, Result};
use crate::gwa::{GwaAlgebra, GwaElem};
use crate::ideal::derivatives;
use crate::poly::{rat, Poly2, Rational};
use crate::report::{Check, Report};

/// Coefficients on the basis x̄ʲ of M or ȳⁱ of N, keyed by the exponent.
type Vector = BTreeMap<i64, Rational>;

/// Σ c·(x̄ʲ ⊗ ȳⁱ) in copies of M⊗N, keyed by (component, j, i).
pub type TensorVec = BTreeMap<(usize, i64, i64), Rational>;

fn add_scalar<K: Ord>(v: &mut BTreeMap<K, Rational>, k: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = v.entry(k).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        v.retain(|_, c| !c.is_zero());
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPair {
    pub lambda: [Rational; 2],
}

impl QuotientPair {
    /// Checks that λ is a common zero of φ, φ₁, φ₂.
    pub fn new(w: &GwaAlgebra, lambda: [Rational; 2]) -> Result<Self> {
        let [p1, p2] = derivatives(w.phi());
        if [w.phi(), &p1, &p2].iter().any(|g| !g.eval(&lambda).is_zero()) {
            return Err(Error::NotACommonZero);
        }
        Ok(QuotientPair { lambda })
    }

    fn m_class(&self, e: &GwaElem) -> Vector {
        let mut v = Vector::new();
        for (n, c) in e.parts().range(0..) {
            add_scalar(&mut v, *n, c.eval(&self.lambda));
        }
        v
    }

    fn n_class(&self, w: &GwaAlgebra, e: &GwaElem) -> Vector {
        let mut v = Vector::new();
        for (n, c) in e.parts().range(..=0) {
            let i = -n;
            add_scalar(&mut v, i, w.twist(c, i).eval(&self.lambda));
        }
        v
    }

    /// x̄ʲ ◁ g.
    pub fn m_act(&self, w: &GwaAlgebra, j: i64, g: &GwaElem) -> Vector {
        self.m_class(&w.multiply(&GwaElem::monomial(Poly2::one(), j), g))
    }

    /// g ▷ ȳⁱ.
    pub fn n_act(&self, w: &GwaAlgebra, g: &GwaElem, i: i64) -> Vector {
        self.n_class(w, &w.multiply(g, &GwaElem::monomial(Poly2::one(), -i)))
    }

    /// m⊗n ↦ Σ m·w′ ⊗ w″·n for an entry Σ w′⊗w″ of a W^e matrix.
    pub fn apply_entry(&self, w: &GwaAlgebra, entry: &EnvElem, j: i64, i: i64) -> BTreeMap<(i64, i64), Rational> {
        let mut out = BTreeMap::new();
        for (&(nl, nr), t) in entry.parts() {
            for (lm, rp) in t.split_by_left() {
                let left = GwaElem::monomial(Poly2::monomial(lm, rat(1)), nl);
                let right = GwaElem::monomial(rp, nr);
                let mv = self.m_act(w, j, &left);
                let nv = self.n_act(w, &right, i);
                for (a, ca) in &mv {
                    for (b, cb) in &nv {
                        add_scalar(&mut out, (*a, *b), ca * cb);
                    }
                }
            }
        }
        out
    }

    /// Image of a vector under the map with matrix `m` (rows = source).
    pub fn apply_matrix(&self, w: &GwaAlgebra, m: &EnvMatrix, v: &TensorVec) -> TensorVec {
        let mut out = TensorVec::new();
        for (&(k, j, i), c) in v {
            for col in 0..m.cols() {
                for ((a, b), d) in self.apply_entry(w, m.get(k, col), j, i) {
                    add_scalar(&mut out, (col, a, b), c * &d);
                }
            }
        }
        out
    }
}

/// (ε⊗ε)(Δ₁φ) and (ε⊗ε)(Δ₂φ) both vanish at a common zero.
pub fn epsilon_annihilation(w: &GwaAlgebra, lambda: &[Rational; 2]) -> Result<Report> {
    let qp = QuotientPair::new(w, lambda.clone())?;
    let checks = [1u8, 2]
        .into_iter()
        .map(|i| {
            let v = delta(w.phi(), i).eval_both(&qp.lambda);
            Check::from_bool(
                "(ε⊗ε)(Δᵢφ) = μ-image φᵢ(λ) = 0",
                format!("(ε⊗ε)(Δ{i}φ) = 0"),
                v.is_zero(),
                || format!("value {v}"),
            )
        })
        .collect();
    Ok(Report::new("ε-annihilation at λ", checks))
}

fn witness() -> TensorVec {
    TensorVec::from([((0, 0, 0), rat(1))])
}

/// t₂₁ and d^h₃₀ send (1̄⊗1̄, 0) to zero.
pub fn witness_cycle(w: &GwaAlgebra, ds: &DifferentialSet, qp: &QuotientPair) -> Report {
    let v = witness();
    let mut checks = Vec::new();
    for (kind, p, q, name) in [(MapKind::T, 2, 1, "t₂₁"), (MapKind::H, 3, 0, "d^h₃₀")] {
        let m = ds.get(kind, p, q).expect("map within depth");
        let img = qp.apply_matrix(w, m, &v);
        checks.push(Check::from_bool(
            "(1̄⊗1̄, 0) is a 4-cycle",
            format!("{name}(1̄⊗1̄, 0) = 0"),
            img.is_empty(),
            || format!("image {img:?}"),
        ));
    }
    let y_on_m = qp.m_act(w, 0, &GwaElem::y());
    checks.push(Check::from_bool("y ∈ I_r", "1̄◁y = 0 in M".into(), y_on_m.is_empty(), || format!("{y_on_m:?}")));
    let x_on_n = qp.n_act(w, &GwaElem::x(), 0);
    checks.push(Check::from_bool("x ∈ I_l", "x▷1̄ = 0 in N".into(), x_on_n.is_empty(), || format!("{x_on_n:?}")));
    Report::new("4-cycle in M⊗Tot𝒫⊗N", checks)
}

/// No combination of d^v₄₀ and d^h₄₀ images reaches (1̄⊗1̄, 0). Each entry
/// term of bidegree (a, b) moves x̄ʲ⊗ȳⁱ to x̄^{j+a}⊗ȳ^{i−b}, so only the
/// sources x̄^{−a}⊗ȳ^{b} can contribute to 1̄⊗1̄; M lives in degrees ≥ 0 and
/// N in degrees ≤ 0, which leaves a finite list.
pub fn not_boundary(w: &GwaAlgebra, ds: &DifferentialSet, qp: &QuotientPair) -> Report {
    let mut checks = Vec::new();
    let mut span: Vec<Rational> = Vec::new();
    for (kind, p, q, name) in [(MapKind::V, 4, 0, "d^v₄₀"), (MapKind::H, 4, 0, "d^h₄₀")] {
        let m = ds.get(kind, p, q).expect("map within depth");
        let mut sources = Vec::new();
        for k in 0..m.rows() {
            for &(a, b) in m.get(k, 0).parts().keys() {
                if a <= 0 && b >= 0 {
                    sources.push((k, -a, b));
                }
            }
        }
        for &(k, j, i) in &sources {
            let img = qp.apply_matrix(w, m, &TensorVec::from([((k, j, i), rat(1))]));
            span.push(img.get(&(0, 0, 0)).cloned().unwrap_or_else(Rational::zero));
        }
        checks.push(Check::pass(
            "degree-admissible boundary preimages",
            format!("{name}: {} admissible source basis vectors", sources.len()),
        ));
    }
    let all_zero = span.iter().all(|c| c.is_zero());
    checks.push(Check::from_bool(
        "(1̄⊗1̄, 0) ∉ im d",
        "1̄⊗1̄ coefficient of every admissible boundary is 0".into(),
        all_zero,
        || format!("coefficients {span:?}"),
    ));
    Report::new("not a boundary", checks)
}

/// The full chain ε-annihilation → 4-cycle → not a boundary.
pub fn witness_chain(w: &GwaAlgebra, lambda: &[Rational; 2]) -> Result<Report> {
    let mut report = epsilon_annihilation(w, lambda)?;
    let qp = QuotientPair::new(w, lambda.clone())?;
    let ds = DifferentialSet::build(w, 5)?;
    report.extend(witness_cycle(w, &ds, &qp));
    report.extend(not_boundary(w, &ds, &qp));
    report.title = "Tor₄(M, N) ≠ 0 witness".into();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::{AutGenerator, AutWord};

    fn origin() -> [Rational; 2] {
        [rat(0), rat(0)]
    }

    #[test]
    fn cusp_and_node_witnesses() {
        for phi in [Poly2::z1().pow(2), Poly2::z1() * Poly2::z2()] {
            for s in [AutWord::identity(), AutWord::new(vec![AutGenerator::affine_int([[2, 1], [0, 3]], [0, 0])])] {
                let w = GwaAlgebra::new(s, phi.clone());
                let r = witness_chain(&w, &origin()).unwrap();
                assert!(r.all_passed(), "{r}");
            }
        }
    }

    #[test]
    fn smooth_instance_has_no_common_zero() {
        let phi = &(&Poly2::z1().pow(2) + &Poly2::z2().pow(2)) - &Poly2::one();
        let w = GwaAlgebra::new(AutWord::identity(), phi);
        assert_eq!(epsilon_annihilation(&w, &origin()), Err(Error::NotACommonZero));
    }

    #[test]
    fn cycle_check_detects_off_locus_points() {
        let w = GwaAlgebra::new(AutWord::identity(), Poly2::z1().pow(2));
        let ds = DifferentialSet::build(&w, 5).unwrap();
        let qp = QuotientPair { lambda: [rat(1), rat(0)] };
        assert!(!witness_cycle(&w, &ds, &qp).all_passed());
    }

    #[test]
    fn module_bases() {
        let w = GwaAlgebra::new(AutWord::identity(), Poly2::z1().pow(2));
        let qp = QuotientPair::new(&w, origin()).unwrap();
        assert!(qp.m_act(&w, 0, &GwaElem::y()).is_empty());
        assert!(qp.n_act(&w, &GwaElem::x(), 0).is_empty());
        assert_eq!(qp.m_act(&w, 0, &GwaElem::x()), Vector::from([(1, rat(1))]));
    }
}
