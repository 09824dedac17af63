//! Sparse polynomials with exact rational coefficients.
//!
//! `Poly<2>` models B = Q[z1,z2]; `Poly<4>` models B⊗B, with exponents
//! `[i, j, k, l]` standing for z1^i z2^j ⊗ z1^k z2^l.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mono<const N: usize>(pub [u32; N]);

impl<const N: usize> Mono<N> {
    pub fn one() -> Self {
        Mono([0; N])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Mono(e)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Self {
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0.iter()) {
            *a -= b;
        }
        Mono(e)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = (*a).max(*b);
        }
        Mono(e)
    }
}

impl<const N: usize> Ord for Mono<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl<const N: usize> PartialOrd for Mono<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly<const N: usize> {
    terms: BTreeMap<Mono<N>, Rational>,
}

pub type Poly2 = Poly<2>;
pub type Poly4 = Poly<4>;

impl<const N: usize> Poly<N> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Mono::one(), c)
    }

    pub fn monomial(m: Mono<N>, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// The variable with index `i` (0-based).
    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        Self::monomial(Mono(e), Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono<N>, Rational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono<N>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono<N>) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.coeff(&Mono::one()))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, m: Mono<N>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn mul_term(&self, m: &Mono<N>, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative in the variable with 0-based index `i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut d = m.0;
            d[i] -= 1;
            out.add_term(Mono(d), c * rat(e as i64));
        }
        out
    }

    pub fn eval(&self, point: &[Rational; N]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, e) in point.iter().zip(m.0.iter()) {
                if *e > 0 {
                    t *= num_traits::pow(x.clone(), *e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`; the images may live in any
    /// polynomial ring of the same family.
    pub fn substitute<const M: usize>(&self, images: &[Poly<M>; N]) -> Poly<M> {
        let mut powers: Vec<Vec<Poly<M>>> = images.iter().map(|p| vec![Poly::one(), p.clone()]).collect();
        let mut out = Poly::<M>::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::<M>::constant(c.clone());
            for (v, e) in m.0.iter().enumerate() {
                let e = *e as usize;
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e {
                    let next = &powers[v][powers[v].len() - 1] * &images[v];
                    powers[v].push(next);
                }
                t = &t * &powers[v][e];
            }
            out += &t;
        }
        out
    }

    /// Leading term under the graded-lex order used for storage.
    pub fn leading(&self) -> Option<(&Mono<N>, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Smallest bound on coefficient numerators and denominators.
    pub fn height(&self) -> BigInt {
        self.terms.values().map(|c| c.numer().abs().max(c.denom().clone())).max().unwrap_or_else(BigInt::zero)
    }
}

impl Poly2 {
    pub fn z1() -> Self {
        Self::var(0)
    }

    pub fn z2() -> Self {
        Self::var(1)
    }

    pub fn term(i: u32, j: u32, c: Rational) -> Self {
        Self::monomial(Mono([i, j]), c)
    }

    /// p ⊗ 1.
    pub fn tensor_left(&self) -> Poly4 {
        Poly4::from_terms(self.terms().map(|(m, c)| (Mono([m.0[0], m.0[1], 0, 0]), c.clone())))
    }

    /// 1 ⊗ p.
    pub fn tensor_right(&self) -> Poly4 {
        Poly4::from_terms(self.terms().map(|(m, c)| (Mono([0, 0, m.0[0], m.0[1]]), c.clone())))
    }

    /// p ⊗ q.
    pub fn tensor(&self, q: &Poly2) -> Poly4 {
        let mut out = Poly4::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in q.terms() {
                out.add_term(Mono([a.0[0], a.0[1], b.0[0], b.0[1]]), ca * cb);
            }
        }
        out
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms().any(|(m, _)| m.0[i] > 0)
    }
}

impl Poly4 {
    /// Multiplication map B⊗B → B.
    pub fn mu(&self) -> Poly2 {
        Poly2::from_terms(self.terms().map(|(m, c)| (Mono([m.0[0] + m.0[2], m.0[1] + m.0[3]]), c.clone())))
    }

    /// Groups terms as Σ_r L_r ⊗ r by right monomial r.
    pub fn split_by_right(&self) -> BTreeMap<Mono<2>, Poly2> {
        let mut out: BTreeMap<Mono<2>, Poly2> = BTreeMap::new();
        for (m, c) in self.terms() {
            out.entry(Mono([m.0[2], m.0[3]])).or_default().add_term(Mono([m.0[0], m.0[1]]), c.clone());
        }
        out
    }

    /// Groups terms as Σ_l l ⊗ R_l by left monomial l.
    pub fn split_by_left(&self) -> BTreeMap<Mono<2>, Poly2> {
        let mut out: BTreeMap<Mono<2>, Poly2> = BTreeMap::new();
        for (m, c) in self.terms() {
            out.entry(Mono([m.0[0], m.0[1]])).or_default().add_term(Mono([m.0[2], m.0[3]]), c.clone());
        }
        out
    }

    /// Applies linear maps `u ⊗ v` factorwise.
    pub fn map_factors<U, V>(&self, mut u: U, mut v: V) -> Poly4
    where
        U: FnMut(&Poly2) -> Poly2,
        V: FnMut(&Poly2) -> Poly2,
    {
        let mut left_cache: BTreeMap<Mono<2>, Poly2> = BTreeMap::new();
        let mut out = Poly4::zero();
        for (r, left) in self.split_by_right() {
            let vr = v(&Poly2::monomial(r, Rational::one()));
            if vr.is_zero() {
                continue;
            }
            let mut ul = Poly2::zero();
            for (l, c) in left.terms() {
                let img = left_cache.entry(*l).or_insert_with(|| u(&Poly2::monomial(*l, Rational::one())));
                ul += &img.scale(c);
            }
            out += &ul.tensor(&vr);
        }
        out
    }

    /// Evaluates both tensor factors at the same point and multiplies.
    pub fn eval_both(&self, point: &[Rational; 2]) -> Rational {
        self.mu().eval(point)
    }
}

impl<const N: usize> AddAssign<&Poly<N>> for Poly<N> {
    fn add_assign(&mut self, rhs: &Poly<N>) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl<const N: usize> SubAssign<&Poly<N>> for Poly<N> {
    fn sub_assign(&mut self, rhs: &Poly<N>) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl<const N: usize> Add for &Poly<N> {
    type Output = Poly<N>;
    fn add(self, rhs: &Poly<N>) -> Poly<N> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<const N: usize> Sub for &Poly<N> {
    type Output = Poly<N>;
    fn sub(self, rhs: &Poly<N>) -> Poly<N> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<const N: usize> Neg for &Poly<N> {
    type Output = Poly<N>;
    fn neg(self) -> Poly<N> {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

impl<const N: usize> Mul for &Poly<N> {
    type Output = Poly<N>;
    fn mul(self, rhs: &Poly<N>) -> Poly<N> {
        let (small, big) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = Poly::zero();
        for (m, c) in &small.terms {
            for (k, d) in &big.terms {
                out.add_term(m.mul(k), c * d);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl<const N: usize> $tr for Poly<N> {
            type Output = Poly<N>;
            fn $f(self, rhs: Poly<N>) -> Poly<N> { (&self).$f(&rhs) }
        }
        impl<const N: usize> $tr<&Poly<N>> for Poly<N> {
            type Output = Poly<N>;
            fn $f(self, rhs: &Poly<N>) -> Poly<N> { (&self).$f(rhs) }
        }
        impl<const N: usize> $tr<Poly<N>> for &Poly<N> {
            type Output = Poly<N>;
            fn $f(self, rhs: Poly<N>) -> Poly<N> { self.$f(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<const N: usize> Neg for Poly<N> {
    type Output = Poly<N>;
    fn neg(self) -> Poly<N> {
        -&self
    }
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_mono(e: &[u32], names: &[&str]) -> String {
    let mut parts = Vec::new();
    for (x, n) in e.iter().zip(names) {
        match x {
            0 => {}
            1 => parts.push(n.to_string()),
            k => parts.push(format!("{n}^{k}")),
        }
    }
    parts.join("*")
}

fn fmt_poly(terms: &BTreeMap<impl Sized, Rational>, monos: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, ((_, c), m)) in terms.iter().rev().zip(monos.into_iter().rev()).enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if m.is_empty() {
            s.push_str(&fmt_rational(&a));
        } else if a.is_one() {
            s.push_str(&m);
        } else {
            s.push_str(&fmt_rational(&a));
            s.push('*');
            s.push_str(&m);
        }
    }
    s
}

impl fmt::Display for Poly<2> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let monos = self.terms.keys().map(|m| fmt_mono(&m.0, &["z1", "z2"])).collect();
        f.write_str(&fmt_poly(&self.terms, monos))
    }
}

impl fmt::Display for Poly<4> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let monos = self
            .terms
            .keys()
            .map(|m| {
                let l = fmt_mono(&m.0[..2], &["z1", "z2"]);
                let r = fmt_mono(&m.0[2..], &["z1", "z2"]);
                format!(
                    "({})⊗({})",
                    if l.is_empty() { "1".into() } else { l },
                    if r.is_empty() { "1".into() } else { r }
                )
            })
            .collect::<Vec<_>>();
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Monomials are never empty here, so render explicit unit coefficients.
        let mut s = String::new();
        for (i, ((_, c), m)) in self.terms.iter().rev().zip(monos.into_iter().rev()).enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() {
                s.push_str(&fmt_rational(&a));
                s.push('*');
            }
            s.push_str(&m);
        }
        f.write_str(&s)
    }
}

impl<const N: usize> fmt::Debug for Poly<N>
where
    Poly<N>: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Renders a rational as `a` or `a/b`.
pub fn format_rational(c: &Rational) -> String {
    fmt_rational(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z1() -> Poly2 {
        Poly2::z1()
    }
    fn z2() -> Poly2 {
        Poly2::z2()
    }

    #[test]
    fn difference_of_squares() {
        let p = (&z1() + &z2()) * (&z1() - &z2());
        assert_eq!(p, z1().pow(2) - z2().pow(2));
    }

    #[test]
    fn add_zero_is_identity() {
        let p = &z1() * &z2() + Poly2::constant(rat(3));
        assert_eq!(&p + &Poly2::zero(), p);
    }

    #[test]
    fn partial_examples() {
        assert_eq!((z1().pow(2) * z2()).partial(0), (z1() * z2()).scale(&rat(2)));
        assert!(Poly2::constant(rat(7)).partial(0).is_zero());
        let p = z1().pow(3) + z2().pow(3) - (z1() * z2()).scale(&rat(3));
        assert_eq!(p.partial(1), z2().pow(2).scale(&rat(3)) - z1().scale(&rat(3)));
    }

    #[test]
    fn eval_examples() {
        assert_eq!((z1().pow(2) + z2()).eval(&[rat(2), rat(3)]), rat(7));
        assert!(Poly2::zero().eval(&[ratio(1, 3), rat(5)]).is_zero());
        let p = z1() * z2() - Poly2::one();
        assert!(p.eval(&[ratio(1, 2), rat(2)]).is_zero());
    }

    #[test]
    fn display_is_descending_grlex() {
        let p = z1().pow(2) * z2() - z2().scale(&ratio(3, 2)) + Poly2::one();
        assert_eq!(p.to_string(), "z1^2*z2 - 3/2*z2 + 1");
        let t = z1().tensor(&z2()) - Poly2::one().tensor(&Poly2::one());
        assert_eq!(t.to_string(), "(z1)⊗(z2) - (1)⊗(1)");
    }

    #[test]
    fn tensor_embeddings_and_mu() {
        let p = z1().pow(2) + z2();
        let q = z1() - Poly2::constant(rat(4));
        assert_eq!(p.tensor_left() * q.tensor_left(), (&p * &q).tensor_left());
        assert_eq!(p.tensor(&q).mu(), &p * &q);
    }
}
