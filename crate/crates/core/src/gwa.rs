//! Normal-form arithmetic in W = B(σ, φ).
//!
//! An element is stored as a map from ℤ-degree n to its B-coefficient, with
//! n > 0 meaning xⁿ, n < 0 meaning y⁻ⁿ and n = 0 the B part. Coefficients
//! always sit on the left.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::aut::AutWord;
use crate::poly::{Poly2, Rational};

pub struct GwaAlgebra {
    sigma: AutWord,
    phi: Poly2,
    sigma_phi: Poly2,
    mixed: RwLock<HashMap<(i64, i64), Arc<Poly2>>>,
    phi_twists: RwLock<HashMap<i64, Arc<Poly2>>>,
}

impl GwaAlgebra {
    pub fn new(sigma: AutWord, phi: Poly2) -> Self {
        let sigma_phi = sigma.apply(&phi, 1);
        GwaAlgebra {
            sigma,
            phi,
            sigma_phi,
            mixed: RwLock::new(HashMap::new()),
            phi_twists: RwLock::new(HashMap::new()),
        }
    }

    pub fn sigma(&self) -> &AutWord {
        &self.sigma
    }

    pub fn phi(&self) -> &Poly2 {
        &self.phi
    }

    pub fn sigma_phi(&self) -> &Poly2 {
        &self.sigma_phi
    }

    pub fn jacobian(&self) -> Rational {
        self.sigma.jacobian()
    }

    /// σⁿ(b).
    pub fn twist(&self, b: &Poly2, n: i64) -> Poly2 {
        self.sigma.apply(b, n)
    }

    /// σᵏ(φ), memoized.
    pub fn phi_twist(&self, k: i64) -> Arc<Poly2> {
        if let Some(p) = self.phi_twists.read().expect("cache poisoned").get(&k) {
            return p.clone();
        }
        let p = Arc::new(self.sigma.apply(&self.phi, k));
        self.phi_twists.write().expect("cache poisoned").insert(k, p.clone());
        p
    }

    /// The coefficient c with m_a · m_b = c · m_{a+b}, where m_n is xⁿ or y⁻ⁿ.
    pub fn mixed_coeff(&self, a: i64, b: i64) -> Arc<Poly2> {
        if a >= 0 && b >= 0 || a <= 0 && b <= 0 {
            return Arc::new(Poly2::one());
        }
        if let Some(p) = self.mixed.read().expect("cache poisoned").get(&(a, b)) {
            return p.clone();
        }
        let twists: Vec<i64> = if a > 0 {
            // x^j y^i
            let (j, i) = (a, -b);
            if j >= i {
                (1..=i).map(|k| k + j - i).collect()
            } else {
                (1..=j).collect()
            }
        } else {
            // y^i x^j
            let (i, j) = (-a, b);
            if i >= j {
                (0..j).map(|k| -(i - j) - k).collect()
            } else {
                (0..i).map(|k| -k).collect()
            }
        };
        let mut c = Poly2::one();
        for k in twists {
            c = &c * &*self.phi_twist(k);
        }
        let c = Arc::new(c);
        self.mixed.write().expect("cache poisoned").insert((a, b), c.clone());
        c
    }

    pub fn multiply(&self, u: &GwaElem, v: &GwaElem) -> GwaElem {
        let mut out = GwaElem::zero();
        for (a, p) in &u.parts {
            for (b, q) in &v.parts {
                let c = self.mixed_coeff(*a, *b);
                let t = &(p * &self.twist(q, *a)) * &*c;
                out.add_at(a + b, &t);
            }
        }
        out
    }

    /// ν(w): aₙ mₙ ↦ Jⁿ aₙ mₙ.
    pub fn nakayama_apply(&self, w: &GwaElem) -> GwaElem {
        let j = self.jacobian();
        let mut out = GwaElem::zero();
        for (n, p) in &w.parts {
            out.add_at(*n, &p.scale(&rational_pow(&j, *n)));
        }
        out
    }
}

impl Clone for GwaAlgebra {
    fn clone(&self) -> Self {
        GwaAlgebra::new(self.sigma.clone(), self.phi.clone())
    }
}

impl fmt::Debug for GwaAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GwaAlgebra(sigma = {}, phi = {})", self.sigma, self.phi)
    }
}

/// rⁿ for any integer n; r must be nonzero when n < 0.
pub fn rational_pow(r: &Rational, n: i64) -> Rational {
    if n >= 0 {
        num_traits::pow(r.clone(), n as usize)
    } else {
        num_traits::pow(r.recip(), (-n) as usize)
    }
}

#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct GwaElem {
    parts: BTreeMap<i64, Poly2>,
}

impl GwaElem {
    pub fn zero() -> Self {
        GwaElem { parts: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly2::one())
    }

    pub fn from_poly(p: Poly2) -> Self {
        Self::monomial(p, 0)
    }

    /// p·xⁿ (n > 0), p·y⁻ⁿ (n < 0) or p (n = 0).
    pub fn monomial(p: Poly2, n: i64) -> Self {
        let mut e = Self::zero();
        e.add_at(n, &p);
        e
    }

    pub fn x() -> Self {
        Self::monomial(Poly2::one(), 1)
    }

    pub fn y() -> Self {
        Self::monomial(Poly2::one(), -1)
    }

    pub fn from_parts<I: IntoIterator<Item = (i64, Poly2)>>(it: I) -> Self {
        let mut e = Self::zero();
        for (n, p) in it {
            e.add_at(n, &p);
        }
        e
    }

    pub fn add_at(&mut self, n: i64, p: &Poly2) {
        if p.is_zero() {
            return;
        }
        let slot = self.parts.entry(n).or_default();
        *slot += p;
        if slot.is_zero() {
            self.parts.remove(&n);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &BTreeMap<i64, Poly2> {
        &self.parts
    }

    pub fn coeff(&self, n: i64) -> Poly2 {
        self.parts.get(&n).cloned().unwrap_or_default()
    }

    pub fn mid(&self) -> Poly2 {
        self.coeff(0)
    }

    /// i ↦ aᵢ for the yⁱ terms.
    pub fn y_part(&self) -> BTreeMap<i64, Poly2> {
        self.parts.range(..0).map(|(n, p)| (-n, p.clone())).collect()
    }

    /// j ↦ bⱼ for the xʲ terms.
    pub fn x_part(&self) -> BTreeMap<i64, Poly2> {
        self.parts.range(1..).map(|(n, p)| (*n, p.clone())).collect()
    }

    pub fn graded_component(&self, n: i64) -> GwaElem {
        Self::monomial(self.coeff(n), n)
    }

    pub fn scale(&self, c: &Rational) -> GwaElem {
        if c.is_zero() {
            return Self::zero();
        }
        GwaElem { parts: self.parts.iter().map(|(n, p)| (*n, p.scale(c))).collect() }
    }

    /// Left multiplication by b ∈ B.
    pub fn left_mul_poly(&self, b: &Poly2) -> GwaElem {
        GwaElem::from_parts(self.parts.iter().map(|(n, p)| (*n, b * p)))
    }
}

impl std::ops::Add for &GwaElem {
    type Output = GwaElem;
    fn add(self, rhs: &GwaElem) -> GwaElem {
        let mut out = self.clone();
        for (n, p) in &rhs.parts {
            out.add_at(*n, p);
        }
        out
    }
}

impl std::ops::Sub for &GwaElem {
    type Output = GwaElem;
    fn sub(self, rhs: &GwaElem) -> GwaElem {
        let mut out = self.clone();
        for (n, p) in &rhs.parts {
            out.add_at(*n, &-p);
        }
        out
    }
}

impl std::ops::Neg for &GwaElem {
    type Output = GwaElem;
    fn neg(self) -> GwaElem {
        self.scale(&-Rational::one())
    }
}

fn fmt_power(n: i64) -> String {
    match n {
        0 => String::new(),
        1 => "x".into(),
        -1 => "y".into(),
        n if n > 0 => format!("x^{n}"),
        n => format!("y^{}", -n),
    }
}

impl fmt::Display for GwaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        // y-powers from highest, then B part, then x-powers.
        for (n, p) in &self.parts {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let m = fmt_power(*n);
            if m.is_empty() {
                write!(f, "({p})")?;
            } else if *p == Poly2::one() {
                f.write_str(&m)?;
            } else {
                write!(f, "({p})*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GwaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GwaElem({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::AutGenerator;
    use crate::poly::rat;

    fn shifted() -> GwaAlgebra {
        let s = AutWord::new(vec![AutGenerator::affine_int([[1, 0], [0, 2]], [1, 0])]);
        GwaAlgebra::new(s, Poly2::z1() * Poly2::z2() + Poly2::one())
    }

    #[test]
    fn defining_relations() {
        let w = shifted();
        assert_eq!(w.multiply(&GwaElem::y(), &GwaElem::x()), GwaElem::from_poly(w.phi().clone()));
        assert_eq!(w.multiply(&GwaElem::x(), &GwaElem::y()), GwaElem::from_poly(w.sigma_phi().clone()));
        let z1 = GwaElem::from_poly(Poly2::z1());
        assert_eq!(w.multiply(&GwaElem::x(), &z1), GwaElem::monomial(Poly2::z1() + Poly2::one(), 1));
    }

    #[test]
    fn x2_y2_with_identity_sigma() {
        let w = GwaAlgebra::new(AutWord::identity(), Poly2::z1() * Poly2::z2());
        let x2 = GwaElem::monomial(Poly2::one(), 2);
        let y2 = GwaElem::monomial(Poly2::one(), -2);
        assert_eq!(w.multiply(&x2, &y2), GwaElem::from_poly((Poly2::z1() * Poly2::z2()).pow(2)));
    }

    #[test]
    fn graded_components() {
        let w = GwaElem::from_parts([(-2, Poly2::constant(rat(3))), (0, Poly2::z1()), (1, Poly2::z2())]);
        assert_eq!(w.graded_component(1), GwaElem::monomial(Poly2::z2(), 1));
        assert!(w.graded_component(5).is_zero());
        let sum = (-2..=1).fold(GwaElem::zero(), |acc, n| &acc + &w.graded_component(n));
        assert_eq!(sum, w);
    }

    #[test]
    fn nakayama_examples() {
        let w = shifted();
        let j = w.jacobian();
        assert_eq!(w.nakayama_apply(&GwaElem::x()), GwaElem::x().scale(&j));
        let b = GwaElem::from_poly(Poly2::z1() * Poly2::z2());
        assert_eq!(w.nakayama_apply(&b), b);
        let yx = w.multiply(&GwaElem::y(), &GwaElem::x());
        let nu = w.multiply(&w.nakayama_apply(&GwaElem::y()), &w.nakayama_apply(&GwaElem::x()));
        assert_eq!(w.nakayama_apply(&yx), nu);
    }
}
