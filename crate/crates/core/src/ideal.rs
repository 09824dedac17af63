//! Gröbner bases over ℚ[z₁, z₂] with cofactor tracking, ideal membership of
//! 1, and the smoothness test (φ, φ₁, φ₂) = B.
//!
//! In two variables graded reverse lex with z₁ > z₂ coincides with the
//! graded lex order polynomials are stored in, so `Poly::leading` is the
//! leading term for this module.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gwa::GwaAlgebra;
use crate::poly::{Mono, Poly2, Rational};

/// A Gröbner basis where `generators[k] = Σᵢ cofactors[k][i]·inputs[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GBasis {
    pub generators: Vec<Poly2>,
    pub cofactors: Vec<Vec<Poly2>>,
    pub inputs: Vec<Poly2>,
}

/// α·φ + β₁·φ₁ + β₂·φ₂ = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub alpha: Poly2,
    pub beta1: Poly2,
    pub beta2: Poly2,
}

impl Certificate {
    pub fn verify(&self, phi: &Poly2) -> bool {
        let [p1, p2] = derivatives(phi);
        let lhs = &(&(&self.alpha * phi) + &(&self.beta1 * &p1)) + &(&self.beta2 * &p2);
        lhs == Poly2::one()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotSmoothReason {
    ZeroPhi,
    ProperIdeal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Smooth(Certificate),
    NotSmooth { reason: NotSmoothReason, common_zero: Option<[Rational; 2]> },
}

impl Verdict {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Verdict::Smooth(_))
    }
}

pub fn derivatives(phi: &Poly2) -> [Poly2; 2] {
    [phi.partial(0), phi.partial(1)]
}

fn lead(p: &Poly2) -> (Mono<2>, Rational) {
    let (m, c) = p.leading().expect("nonzero polynomial");
    (*m, c.clone())
}

fn combine(acc: &mut [Poly2], other: &[Poly2], m: &Mono<2>, c: &Rational) {
    for (a, o) in acc.iter_mut().zip(other) {
        *a -= &o.mul_term(m, c);
    }
}

/// Fully reduces p by the basis; returns the remainder and updates the
/// cofactor vector of p alongside.
fn reduce(p: &Poly2, cof: &mut [Poly2], basis: &[(Poly2, Vec<Poly2>)]) -> Poly2 {
    let mut rem = Poly2::zero();
    let mut p = p.clone();
    while let Some((m, c)) = p.leading().map(|(m, c)| (*m, c.clone())) {
        let divisor = basis.iter().find(|(g, _)| lead(g).0.divides(&m));
        match divisor {
            Some((g, gc)) => {
                let (gm, gcoef) = lead(g);
                let q = gm.quotient_of(&m);
                let k = &c / &gcoef;
                p -= &g.mul_term(&q, &k);
                combine(cof, gc, &q, &k);
            }
            None => {
                let t = Poly2::monomial(m, c);
                p -= &t;
                rem += &t;
            }
        }
    }
    rem
}

fn unit_vector(n: usize, i: usize, c: Rational) -> Vec<Poly2> {
    (0..n).map(|k| if k == i { Poly2::constant(c.clone()) } else { Poly2::zero() }).collect()
}

/// Reduced Gröbner basis of the ideal generated by `gens`, with cofactors.
pub fn buchberger(gens: &[Poly2]) -> Result<GBasis> {
    let n = gens.len();
    if gens.iter().all(|g| g.is_zero()) {
        return Err(Error::EmptyInput);
    }
    let mut basis: Vec<(Poly2, Vec<Poly2>)> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, g)| (g.clone(), unit_vector(n, i, Rational::one())))
        .collect();

    // A nonzero constant generator settles the ideal at once.
    if let Some((g, c)) = basis.iter().find(|(g, _)| g.is_constant()) {
        let k = g.constant_value().expect("constant").recip();
        let cof = c.iter().map(|p| p.scale(&k)).collect();
        return Ok(GBasis { generators: vec![Poly2::one()], cofactors: vec![cof], inputs: gens.to_vec() });
    }

    // Pairs ordered by the degree of their lcm, then by index.
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let pair_key = |basis: &[(Poly2, Vec<Poly2>)], i: usize, j: usize| {
        let l = lead(&basis[i].0).0.lcm(&lead(&basis[j].0).0);
        (l.degree(), i, j)
    };
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert(pair_key(&basis, i, j));
        }
    }
    while let Some(key) = pairs.iter().next().copied() {
        pairs.remove(&key);
        let (_, i, j) = key;
        let (mi, ci) = lead(&basis[i].0);
        let (mj, cj) = lead(&basis[j].0);
        let l = mi.lcm(&mj);
        // Coprime leading monomials: the S-polynomial reduces to zero.
        if l == mi.mul(&mj) {
            continue;
        }
        let qi = mi.quotient_of(&l);
        let qj = mj.quotient_of(&l);
        let ki = ci.recip();
        let kj = cj.recip();
        let s = &basis[i].0.mul_term(&qi, &ki) - &basis[j].0.mul_term(&qj, &kj);
        let mut cof: Vec<Poly2> = vec![Poly2::zero(); n];
        combine(&mut cof, &basis[i].1, &qi, &-&ki);
        combine(&mut cof, &basis[j].1, &qj, &kj);
        let r = reduce(&s, &mut cof, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            let k = r.constant_value().expect("constant").recip();
            let cof = cof.iter().map(|p| p.scale(&k)).collect();
            return Ok(GBasis { generators: vec![Poly2::one()], cofactors: vec![cof], inputs: gens.to_vec() });
        }
        basis.push((r, cof));
        let new = basis.len() - 1;
        for i in 0..new {
            pairs.insert(pair_key(&basis, i, new));
        }
    }

    // Minimize: drop elements whose leading monomial is divisible by another's.
    let mut keep: Vec<(Poly2, Vec<Poly2>)> = Vec::new();
    for (idx, (g, c)) in basis.iter().enumerate() {
        let m = lead(g).0;
        let redundant = basis.iter().enumerate().any(|(k, (h, _))| {
            let hm = lead(h).0;
            k != idx && hm.divides(&m) && (hm != m || k < idx)
        });
        if !redundant {
            keep.push((g.clone(), c.clone()));
        }
    }
    // Interreduce and make monic.
    let mut reduced: Vec<(Poly2, Vec<Poly2>)> = Vec::new();
    for k in 0..keep.len() {
        let others: Vec<(Poly2, Vec<Poly2>)> =
            keep.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, e)| e.clone()).collect();
        let (g, c) = &keep[k];
        let (m, lc) = lead(g);
        let tail = g - &Poly2::monomial(m, lc.clone());
        let mut cof = c.clone();
        let tail_rem = reduce(&tail, &mut cof, &others);
        let g = &Poly2::monomial(m, lc.clone()) + &tail_rem;
        let k = lc.recip();
        reduced.push((g.scale(&k), cof.iter().map(|p| p.scale(&k)).collect()));
    }
    reduced.sort_by_key(|a| lead(&a.0).0);
    let (generators, cofactors) = reduced.into_iter().unzip();
    Ok(GBasis { generators, cofactors, inputs: gens.to_vec() })
}

impl GBasis {
    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0] == Poly2::one()
    }

    /// Checks every generator against its cofactor expansion.
    pub fn verify_cofactors(&self) -> bool {
        self.generators.iter().zip(&self.cofactors).all(|(g, c)| {
            let sum = c.iter().zip(&self.inputs).fold(Poly2::zero(), |acc, (a, f)| &acc + &(a * f));
            &sum == g
        })
    }
}

/// Whether 1 lies in the ideal, with cofactors re-verified by expansion.
pub fn contains_one(gens: &[Poly2]) -> (bool, Option<Vec<Poly2>>) {
    let Ok(gb) = buchberger(gens) else {
        return (false, None);
    };
    if !gb.is_unit() {
        return (false, None);
    }
    let cof = gb.cofactors[0].clone();
    let sum = cof.iter().zip(gens).fold(Poly2::zero(), |acc, (a, f)| &acc + &(a * f));
    assert_eq!(sum, Poly2::one(), "cofactor bookkeeping produced an invalid certificate");
    (true, Some(cof))
}

/// Rationals with |numerator| ≤ bound and 1 ≤ denominator ≤ bound, by
/// increasing height, then absolute value, then sign.
fn small_rationals(bound: i64) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    for n in -bound..=bound {
        for d in 1..=bound {
            let r = Rational::new(BigInt::from(n), BigInt::from(d));
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    let height = |r: &Rational| r.numer().abs().max(r.denom().clone());
    out.sort_by(|a, b| height(a).cmp(&height(b)).then(a.abs().cmp(&b.abs())).then(b.cmp(a)));
    out
}

/// Best-effort search for a rational common zero on a bounded grid.
pub fn rational_common_zero(gens: &[Poly2], bound: i64) -> Option<[Rational; 2]> {
    let cands = small_rationals(bound);
    let height = |r: &Rational| r.numer().abs().max(r.denom().clone());
    let mut pairs: Vec<(&Rational, &Rational)> = cands.iter().flat_map(|a| cands.iter().map(move |b| (a, b))).collect();
    pairs.sort_by_key(|(a, b)| height(a).max(height(b)));
    pairs
        .into_iter()
        .find(|(a, b)| {
            let pt = [(*a).clone(), (*b).clone()];
            gens.iter().all(|g| g.eval(&pt).is_zero())
        })
        .map(|(a, b)| [a.clone(), b.clone()])
}

/// W is smooth iff (φ, φ₁, φ₂) is the unit ideal.
pub fn smoothness_test(w: &GwaAlgebra) -> Verdict {
    let phi = w.phi();
    if phi.is_zero() {
        return Verdict::NotSmooth { reason: NotSmoothReason::ZeroPhi, common_zero: None };
    }
    let [p1, p2] = derivatives(phi);
    let gens = [phi.clone(), p1.clone(), p2.clone()];
    match contains_one(&gens) {
        (true, Some(c)) => {
            let cert = Certificate { alpha: c[0].clone(), beta1: c[1].clone(), beta2: c[2].clone() };
            debug_assert!(cert.verify(phi));
            Verdict::Smooth(cert)
        }
        _ => Verdict::NotSmooth { reason: NotSmoothReason::ProperIdeal, common_zero: rational_common_zero(&gens, 8) },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    fn z1() -> Poly2 {
        Poly2::z1()
    }
    fn z2() -> Poly2 {
        Poly2::z2()
    }

    #[test]
    fn already_a_basis() {
        let gb = buchberger(&[z1(), z2()]).unwrap();
        assert_eq!(gb.generators, vec![z2(), z1()]);
        assert!(gb.verify_cofactors());
    }

    #[test]
    fn redundant_generator_drops() {
        let gb = buchberger(&[z1().pow(2), z1().scale(&rat(2))]).unwrap();
        assert_eq!(gb.generators, vec![z1()]);
        assert!(gb.verify_cofactors());
    }

    #[test]
    fn circle_certificate() {
        let phi = &(&z1().pow(2) + &z2().pow(2)) - &Poly2::one();
        let (ok, cof) = contains_one(&[phi.clone(), phi.partial(0), phi.partial(1)]);
        assert!(ok);
        let half = ratio(1, 2);
        assert_eq!(cof.unwrap(), vec![Poly2::constant(rat(-1)), z1().scale(&half), z2().scale(&half)]);
    }

    #[test]
    fn empty_input() {
        assert_eq!(buchberger(&[]), Err(Error::EmptyInput));
        assert_eq!(buchberger(&[Poly2::zero()]), Err(Error::EmptyInput));
    }

    #[test]
    fn proper_ideals() {
        for phi in [z1().pow(2), z1() * z2()] {
            let gens = [phi.clone(), phi.partial(0), phi.partial(1)];
            assert!(!contains_one(&gens).0);
            assert_eq!(rational_common_zero(&gens, 8), Some([rat(0), rat(0)]));
        }
    }
}
