//! The column-filtration E₁ page in row 2 and the reduction of
//! E₁^{12} ⊇ ker d¹ modulo im d⁰ to the canonical (c¹, c²) form.
//!
//! A class in E₁^{p2} is a sum of [c·m_a ⊗ m_b] with c ∈ B, where m_n is xⁿ
//! or y⁻ⁿ. Coefficients that sit on the right tensor factor are moved to the
//! left using the vertical relations, which identify w′⊗w″c with σᵗ(c)w′⊗w″.
//! The twist t depends on the component: t = 0 on E₁^{02} and E₁^{22}, and
//! t = +1, −1 on the two components of E₁^{12}. With these identifications
//! the horizontal differential d^h₀₂ induces d⁰ = (−x⊗1 + J(1⊗x); 1⊗y − J(y⊗1)).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::calculus::nc_jacobian;
use crate::envelope::{env_mul, EnvElem};
use crate::error::{Error, Result};
use crate::gwa::{rational_pow, GwaAlgebra, GwaElem};
use crate::poly::{Poly2, Rational};

/// Σ [c·m_a ⊗ m_b] keyed by (a, b).
pub type Component = BTreeMap<(i64, i64), Poly2>;

/// Twists of the vertical identification on the two components of E₁^{12}.
const TWISTS_12: [i64; 2] = [1, -1];

fn add_to(comp: &mut Component, key: (i64, i64), c: &Poly2) {
    if c.is_zero() {
        return;
    }
    let slot = comp.entry(key).or_default();
    *slot += c;
    if slot.is_zero() {
        comp.remove(&key);
    }
}

/// The E₁ class of an element of W^e under the twist-t identification.
pub fn project(w: &GwaAlgebra, e: &EnvElem, twist: i64) -> Component {
    let mut out = Component::new();
    for (&(a, b), t) in e.parts() {
        for (rm, left) in t.split_by_right() {
            let r = Poly2::monomial(rm, Rational::one());
            let moved = w.twist(&r, twist - b);
            add_to(&mut out, (a, b), &(&moved * &left));
        }
    }
    out
}

pub fn embed(comp: &Component) -> EnvElem {
    let mut e = EnvElem::zero();
    for (&(a, b), c) in comp {
        e.add_at((a, b), &c.tensor_left());
    }
    e
}

/// d⁰: E₁^{02} → E₁^{12}, induced by d^h₀₂ on a representative.
pub fn d0(w: &GwaAlgebra, u: &EnvElem) -> [Component; 2] {
    let jnc = EnvElem::from_tensor(nc_jacobian(w.sigma()));
    let x1 = EnvElem::left(&GwaElem::x());
    let one_x = EnvElem::right(&GwaElem::x());
    let y1 = EnvElem::left(&GwaElem::y());
    let one_y = EnvElem::right(&GwaElem::y());
    let e0 = &env_mul(w, &one_x, &jnc) - &x1;
    let e1 = &one_y - &env_mul(w, &y1, &jnc);
    [project(w, &env_mul(w, &e0, u), TWISTS_12[0]), project(w, &env_mul(w, &e1, u), TWISTS_12[1])]
}

/// d¹: E₁^{12} → E₁^{22}, induced by d^h₁₂ = (y⊗1, 1⊗x; 1⊗y, x⊗1).
pub fn d1(w: &GwaAlgebra, v: &[Component; 2]) -> [Component; 2] {
    let [v1, v2] = [embed(&v[0]), embed(&v[1])];
    let mul = |a: &EnvElem, b: &EnvElem| env_mul(w, a, b);
    let x1 = EnvElem::left(&GwaElem::x());
    let one_x = EnvElem::right(&GwaElem::x());
    let y1 = EnvElem::left(&GwaElem::y());
    let one_y = EnvElem::right(&GwaElem::y());
    [project(w, &(&mul(&y1, &v1) + &mul(&one_x, &v2)), 0), project(w, &(&mul(&one_y, &v1) + &mul(&x1, &v2)), 0)]
}

/// The four block families of a kernel element of d¹.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// ([a xⁱ⊗xʲ], [−φσ⁻¹(a) x^{i−1}⊗x^{j−1}]), i, j ≥ 1.
    A1,
    /// ([a xⁱ⊗yʲ], [−σ⁻¹(a) x^{i−1}⊗y^{j+1}]), i ≥ 1, j ≥ 0.
    A2,
    /// ([a yⁱ⊗xʲ], [−σ⁻¹(a) y^{i+1}⊗x^{j−1}]), i ≥ 0, j ≥ 1.
    A3,
    /// ([−σ(φ)σ(b) y^{i−1}⊗y^{j−1}], [b yⁱ⊗yʲ]), i, j ≥ 1.
    B4,
}

/// A class of ker d¹ in kernel-parameter form. The canonical form has only
/// A2 blocks with j = 0 (the c¹ᵢ) and A3 blocks with j = 1, i ≥ 1 (the c²ᵢ).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct E12Class {
    blocks: BTreeMap<(Family, i64, i64), Poly2>,
}

impl E12Class {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Σ c¹ᵢ-blocks + Σ c²ᵢ-blocks.
    pub fn canonical(c1: &BTreeMap<i64, Poly2>, c2: &BTreeMap<i64, Poly2>) -> Self {
        let mut e = Self::zero();
        for (i, c) in c1 {
            e.add(Family::A2, *i, 0, c);
        }
        for (i, c) in c2 {
            e.add(Family::A3, *i, 1, c);
        }
        e
    }

    pub fn add(&mut self, f: Family, i: i64, j: i64, c: &Poly2) {
        assert!(valid_index(f, i, j), "index ({i}, {j}) outside the range of {f:?}");
        if c.is_zero() {
            return;
        }
        let key = (f, i, j);
        let slot = self.blocks.entry(key).or_default();
        *slot += c;
        if slot.is_zero() {
            self.blocks.remove(&key);
        }
    }

    pub fn blocks(&self) -> &BTreeMap<(Family, i64, i64), Poly2> {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.blocks.keys().all(|&(f, i, j)| is_canonical_block(f, i, j))
    }

    pub fn c1(&self) -> BTreeMap<i64, Poly2> {
        self.blocks
            .iter()
            .filter(|((f, _, j), _)| *f == Family::A2 && *j == 0)
            .map(|((_, i, _), c)| (*i, c.clone()))
            .collect()
    }

    pub fn c2(&self) -> BTreeMap<i64, Poly2> {
        self.blocks
            .iter()
            .filter(|((f, i, j), _)| *f == Family::A3 && *j == 1 && *i >= 1)
            .map(|((_, i, _), c)| (*i, c.clone()))
            .collect()
    }
}

impl fmt::Display for E12Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.blocks.iter().map(|((fam, i, j), c)| format!("{fam:?}[{i},{j}]({c})")).collect();
        f.write_str(&parts.join(" + "))
    }
}

fn valid_index(f: Family, i: i64, j: i64) -> bool {
    match f {
        Family::A1 => i >= 1 && j >= 1,
        Family::A2 => i >= 1 && j >= 0,
        Family::A3 => i >= 0 && j >= 1,
        Family::B4 => i >= 1 && j >= 1,
    }
}

fn is_canonical_block(f: Family, i: i64, j: i64) -> bool {
    matches!((f, i, j), (Family::A2, _, 0)) || (f == Family::A3 && j == 1 && i >= 1)
}

fn x_pow(n: i64) -> i64 {
    n
}

fn y_pow(n: i64) -> i64 {
    -n
}

/// The two components of one block, as E₁ classes.
pub fn block(w: &GwaAlgebra, f: Family, i: i64, j: i64, c: &Poly2) -> [Component; 2] {
    let mut first = Component::new();
    let mut second = Component::new();
    let inv = |p: &Poly2| w.twist(p, -1);
    match f {
        Family::A1 => {
            add_to(&mut first, (x_pow(i), x_pow(j)), c);
            add_to(&mut second, (x_pow(i - 1), x_pow(j - 1)), &-&(w.phi() * &inv(c)));
        }
        Family::A2 => {
            add_to(&mut first, (x_pow(i), y_pow(j)), c);
            add_to(&mut second, (x_pow(i - 1), y_pow(j + 1)), &-&inv(c));
        }
        Family::A3 => {
            add_to(&mut first, (y_pow(i), x_pow(j)), c);
            add_to(&mut second, (y_pow(i + 1), x_pow(j - 1)), &-&inv(c));
        }
        Family::B4 => {
            add_to(&mut first, (y_pow(i - 1), y_pow(j - 1)), &-&(w.sigma_phi() * &w.twist(c, 1)));
            add_to(&mut second, (y_pow(i), y_pow(j)), c);
        }
    }
    [first, second]
}

/// The representative pair of a class.
pub fn representative(w: &GwaAlgebra, x: &E12Class) -> [Component; 2] {
    let mut out = [Component::new(), Component::new()];
    for (&(f, i, j), c) in &x.blocks {
        let [a, b] = block(w, f, i, j, c);
        for (k, v) in a {
            add_to(&mut out[0], k, &v);
        }
        for (k, v) in b {
            add_to(&mut out[1], k, &v);
        }
    }
    out
}

/// Reads the kernel parameters back off a representative pair. Fails if the
/// pair is not a sum of blocks, which includes every pair outside ker d¹.
pub fn decompose(w: &GwaAlgebra, pair: &[Component; 2]) -> Result<E12Class> {
    let mut x = E12Class::zero();
    for (&(a, b), c) in &pair[0] {
        match (a > 0, b > 0) {
            (true, true) => x.add(Family::A1, a, b, c),
            (true, false) => x.add(Family::A2, a, -b, c),
            (false, true) => x.add(Family::A3, -a, b, c),
            (false, false) => {}
        }
    }
    for (&(a, b), c) in &pair[1] {
        if a < 0 && b < 0 {
            x.add(Family::B4, -a, -b, c);
        }
    }
    if &representative(w, &x) != pair {
        return Err(Error::NotKernelForm("pair is not a sum of kernel blocks".into()));
    }
    Ok(x)
}

/// One rewrite modulo im d⁰: returns the replacement blocks and the
/// preimage u with block(before) − Σ block(after) = d⁰(u).
fn rewrite(w: &GwaAlgebra, f: Family, i: i64, j: i64, c: &Poly2) -> (Vec<(Family, i64, i64, Poly2)>, EnvElem) {
    let jac = w.jacobian();
    let jinv = jac.recip();
    let s = |p: &Poly2, n: i64| w.twist(p, n);
    let u_at = |coef: Poly2, a: i64, b: i64| EnvElem::monomial(coef.tensor_left(), a, b);
    match f {
        Family::A1 => {
            let nc = s(c, 1).scale(&jinv);
            let u = u_at(c.scale(&jinv), x_pow(i), x_pow(j - 1));
            if j >= 2 {
                (vec![(Family::A1, i + 1, j - 1, nc)], u)
            } else {
                (vec![(Family::A2, i + 1, 0, nc)], u)
            }
        }
        Family::A2 => {
            debug_assert!(j >= 1);
            let u = u_at(-&s(c, -1), x_pow(i - 1), y_pow(j));
            if i >= 2 {
                let nc = (w.sigma_phi() * &s(c, -1)).scale(&jac);
                (vec![(Family::A2, i - 1, j - 1, nc)], u)
            } else {
                let nc = s(c, -2).scale(&-&jac);
                (vec![(Family::B4, 1, j, nc)], u)
            }
        }
        Family::A3 => {
            debug_assert!(!(j == 1 && i >= 1));
            let u = u_at(c.scale(&jinv), y_pow(i), x_pow(j - 1));
            if i >= 1 {
                let nc = (w.sigma_phi() * &s(c, 1)).scale(&jinv);
                (vec![(Family::A3, i - 1, j - 1, nc)], u)
            } else if j >= 2 {
                (vec![(Family::A1, 1, j - 1, s(c, 1).scale(&jinv))], u)
            } else {
                (vec![(Family::A2, 1, 0, s(c, 1).scale(&jinv))], u)
            }
        }
        Family::B4 => {
            // Stored index (i, j) is the shifted (i−1, j−1) of the block's y-powers.
            let u = u_at(c.clone(), y_pow(i), y_pow(j - 1));
            if j >= 2 {
                (vec![(Family::B4, i + 1, j - 1, s(c, -1).scale(&jac))], u)
            } else {
                (vec![(Family::A3, i, 1, c.scale(&-&jac))], u)
            }
        }
    }
}

/// Upper bound on rewrite steps; the second-factor exponent strictly
/// decreases along every chain, so this only guards against bugs.
const STEP_BUDGET: usize = 100_000;

/// Canonical form together with the accumulated preimage u, so that
/// representative(x) − representative(result) = d⁰(u).
pub fn canonicalize_with_witness(w: &GwaAlgebra, x: &E12Class) -> (E12Class, EnvElem) {
    let mut work = x.clone();
    let mut u_total = EnvElem::zero();
    let mut steps = 0;
    loop {
        // Rewrite the block with the largest second-factor exponent first.
        let next = work
            .blocks
            .iter()
            .filter(|((f, i, j), _)| !is_canonical_block(*f, *i, *j))
            .max_by_key(|((f, i, j), _)| (*j, *f, *i))
            .map(|(k, c)| (*k, c.clone()));
        let Some(((f, i, j), c)) = next else { break };
        steps += 1;
        assert!(steps <= STEP_BUDGET, "canonicalization exceeded its step budget");
        work.blocks.remove(&(f, i, j));
        let (repl, u) = rewrite(w, f, i, j, &c);
        for (nf, ni, nj, nc) in repl {
            work.add(nf, ni, nj, &nc);
        }
        u_total += &u;
    }
    (work, u_total)
}

pub fn canonicalize_e12(w: &GwaAlgebra, x: &E12Class) -> E12Class {
    canonicalize_with_witness(w, x).0
}

/// Φ(ȳ) = Σ Jⁱσ⁻¹(c¹ᵢ)x^{i−1} + Σ J⁻ⁱc²ᵢyⁱ.
pub fn phi_map(w: &GwaAlgebra, y: &E12Class) -> GwaElem {
    let y = if y.is_canonical() { y.clone() } else { canonicalize_e12(w, y) };
    let j = w.jacobian();
    let mut out = GwaElem::zero();
    for (i, c) in y.c1() {
        out.add_at(i - 1, &w.twist(&c, -1).scale(&rational_pow(&j, i)));
    }
    for (i, c) in y.c2() {
        out.add_at(-i, &c.scale(&rational_pow(&j, -i)));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// w·ȳ or ȳ◁w for the bimodule structure induced by right multiplication
/// on W^e: ȳ◁w = [w′w⊗w″] and w·ȳ = [w′⊗ww″].
pub fn bimodule_action(w: &GwaAlgebra, y: &E12Class, g: &GwaElem, side: Side) -> Result<E12Class> {
    let factor = match side {
        Side::Right => EnvElem::left(g),
        Side::Left => EnvElem::right(g),
    };
    let rep = representative(w, y);
    let acted: [Component; 2] = [0, 1].map(|k| project(w, &env_mul(w, &embed(&rep[k]), &factor), TWISTS_12[k]));
    let x = decompose(w, &acted)?;
    Ok(canonicalize_e12(w, &x))
}

/// Whether the pair lies in ker d¹.
pub fn in_kernel(w: &GwaAlgebra, pair: &[Component; 2]) -> bool {
    d1(w, pair).iter().all(|c| c.is_empty())
}

/// Component-wise difference.
pub fn sub_pair(a: &[Component; 2], b: &[Component; 2]) -> [Component; 2] {
    let mut out = a.clone();
    for k in 0..2 {
        for (key, c) in &b[k] {
            add_to(&mut out[k], *key, &-c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::{AutGenerator, AutWord};
    use crate::poly::rat;

    fn alg() -> GwaAlgebra {
        let s = AutWord::new(vec![
            AutGenerator::elementary(1, Poly2::z2().pow(2)).unwrap(),
            AutGenerator::affine_int([[2, 1], [0, 3]], [1, -1]),
        ]);
        GwaAlgebra::new(s, &(Poly2::z1() * Poly2::z2()) + &Poly2::z2())
    }

    fn sample_coeffs() -> Vec<Poly2> {
        vec![Poly2::one(), Poly2::z1(), &Poly2::z2() - &Poly2::constant(rat(2))]
    }

    #[test]
    fn d0_matches_simplified_formula() {
        let w = alg();
        let j = w.jacobian();
        for c in sample_coeffs() {
            for (a, b) in [(0, 0), (2, 1), (-1, 2), (1, -3), (-2, -1)] {
                let u = EnvElem::monomial(c.tensor_left(), a, b);
                let x1 = EnvElem::left(&GwaElem::x());
                let jx = EnvElem::right(&GwaElem::x()).scale(&j);
                let y1j = EnvElem::left(&GwaElem::y()).scale(&j);
                let one_y = EnvElem::right(&GwaElem::y());
                let expected = [
                    project(&w, &env_mul(&w, &(&jx - &x1), &u), 1),
                    project(&w, &env_mul(&w, &(&one_y - &y1j), &u), -1),
                ];
                assert_eq!(d0(&w, &u), expected, "u = {u}");
            }
        }
    }

    #[test]
    fn d1_after_d0_vanishes() {
        let w = alg();
        for c in sample_coeffs() {
            for (a, b) in [(0, 0), (2, 1), (-1, 2), (1, -3), (-2, -1)] {
                let u = EnvElem::monomial(c.tensor_left(), a, b);
                assert!(in_kernel(&w, &d0(&w, &u)));
            }
        }
    }

    #[test]
    fn blocks_lie_in_kernel() {
        let w = alg();
        for f in [Family::A1, Family::A2, Family::A3, Family::B4] {
            for (i, j) in [(1, 1), (2, 1), (1, 3), (3, 2)] {
                for c in sample_coeffs() {
                    assert!(in_kernel(&w, &block(&w, f, i, j, &c)), "{f:?} ({i},{j})");
                }
            }
            assert!(in_kernel(&w, &block(&w, Family::A2, 2, 0, &Poly2::z1())));
            assert!(in_kernel(&w, &block(&w, Family::A3, 0, 2, &Poly2::z1())));
        }
    }

    #[test]
    fn each_rewrite_differs_by_a_boundary() {
        let w = alg();
        for f in [Family::A1, Family::A2, Family::A3, Family::B4] {
            for (i, j) in [(0, 1), (0, 3), (1, 0), (1, 1), (2, 1), (1, 3), (3, 2)] {
                if !valid_index(f, i, j) || is_canonical_block(f, i, j) {
                    continue;
                }
                for c in sample_coeffs() {
                    let before = block(&w, f, i, j, &c);
                    let (after, u) = rewrite(&w, f, i, j, &c);
                    let mut x = E12Class::zero();
                    for (nf, ni, nj, nc) in after {
                        x.add(nf, ni, nj, &nc);
                    }
                    let diff = sub_pair(&before, &representative(&w, &x));
                    assert_eq!(diff, d0(&w, &u), "{f:?} ({i},{j}) c = {c}");
                }
            }
        }
    }

    #[test]
    fn canonical_input_is_unchanged() {
        let w = alg();
        let c1 = BTreeMap::from([(1, Poly2::z1()), (3, Poly2::one())]);
        let c2 = BTreeMap::from([(2, Poly2::z2())]);
        let y = E12Class::canonical(&c1, &c2);
        assert_eq!(canonicalize_e12(&w, &y), y);
    }

    #[test]
    fn phi_examples() {
        let w = alg();
        let j = w.jacobian();
        let y = E12Class::canonical(&BTreeMap::from([(1, Poly2::one())]), &BTreeMap::new());
        assert_eq!(phi_map(&w, &y), GwaElem::from_poly(Poly2::constant(j.clone())));
        let y = E12Class::canonical(&BTreeMap::new(), &BTreeMap::from([(2, Poly2::z1())]));
        assert_eq!(phi_map(&w, &y), GwaElem::monomial(Poly2::z1().scale(&rational_pow(&j, -2)), -2));
        assert!(phi_map(&w, &E12Class::zero()).is_zero());
    }
}
