//! Seeded samplers for randomized property runs.
//!
//! Automorphisms are drawn from the triangular (de Jonquières) subgroup
//! z₁ ↦ a·z₁ + p(z₂), z₂ ↦ d·z₂ + e, or from affine words. Mixing elementary
//! generators on both axes makes the degree of σⁿ grow like 2ⁿ, which puts
//! GWA products out of reach even for small n.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::aut::{AutGenerator, AutWord};
use crate::cohomology::Cochain3;
use crate::envelope::EnvElem;
use crate::gwa::GwaElem;
use crate::poly::{ratio, Mono, Poly2, Poly4, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaFamily {
    Triangular,
    Affine,
    /// Elementary generators on both axes plus affine ones. Fine for a
    /// single application of σ, far too expensive for GWA products.
    Mixed,
}

#[derive(Clone, Debug)]
pub struct Bounds {
    pub height: i64,
    pub degree: u32,
    pub word_length: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { height: 5, degree: 3, word_length: 3 }
    }
}

pub struct Sampler {
    rng: ChaCha8Rng,
    pub bounds: Bounds,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), bounds: Bounds::default() }
    }

    /// Independent stream per trial, so parallel runs match sequential ones.
    pub fn for_trial(seed: u64, trial: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        Sampler { rng, bounds: Bounds::default() }
    }

    pub fn with_bounds(mut self, bounds: Bounds) -> Self {
        self.bounds = bounds;
        self
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn rational(&mut self) -> Rational {
        let h = self.bounds.height;
        ratio(self.rng.gen_range(-h..=h), self.rng.gen_range(1..=h))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        let h = self.bounds.height;
        let mut n = 0;
        while n == 0 {
            n = self.rng.gen_range(-h..=h);
        }
        ratio(n, self.rng.gen_range(1..=h))
    }

    pub fn small_int(&mut self) -> Rational {
        let h = self.bounds.height;
        ratio(self.rng.gen_range(-h..=h), 1)
    }

    /// Random polynomial of total degree ≤ `degree` with up to `terms` terms.
    pub fn poly(&mut self, degree: u32, terms: usize) -> Poly2 {
        let mut p = Poly2::zero();
        for _ in 0..terms {
            let a = self.rng.gen_range(0..=degree);
            let b = self.rng.gen_range(0..=degree - a);
            let c = self.rational();
            p.add_term(Mono([a, b]), c);
        }
        p
    }

    pub fn nonzero_poly(&mut self, degree: u32, terms: usize) -> Poly2 {
        loop {
            let p = self.poly(degree, terms.max(1));
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// A univariate polynomial in z_var (0-based) of degree ≤ `degree`.
    pub fn poly_in(&mut self, var: usize, degree: u32) -> Poly2 {
        let mut p = Poly2::zero();
        for e in 0..=degree {
            if self.rng.gen_bool(0.6) {
                let mut m = [0, 0];
                m[var] = e;
                let c = self.small_int();
                p.add_term(Mono(m), c);
            }
        }
        p
    }

    fn affine_generator(&mut self, triangular: bool) -> AutGenerator {
        loop {
            let m = [
                [self.nonzero_rational(), self.small_int()],
                [if triangular { Rational::from_integer(0.into()) } else { self.small_int() }, self.nonzero_rational()],
            ];
            let t = [self.small_int(), self.small_int()];
            if let Ok(g) = AutGenerator::affine(m, t) {
                return g;
            }
        }
    }

    pub fn aut_word(&mut self, family: SigmaFamily) -> AutWord {
        let len = self.rng.gen_range(1..=self.bounds.word_length);
        let factors = (0..len)
            .map(|_| match family {
                SigmaFamily::Affine => self.affine_generator(false),
                SigmaFamily::Mixed => match self.rng.gen_range(0..3) {
                    0 => self.affine_generator(false),
                    k => {
                        let shift = self.poly_in(2 - k, self.bounds.degree.min(2));
                        AutGenerator::elementary(k as u8, shift).expect("shift avoids own variable")
                    }
                },
                SigmaFamily::Triangular => {
                    if self.rng.gen_bool(0.5) {
                        let deg = self.bounds.degree.min(2);
                        let shift = self.poly_in(1, deg);
                        AutGenerator::elementary(1, shift).expect("shift avoids z1")
                    } else {
                        self.affine_generator(true)
                    }
                }
            })
            .collect();
        AutWord::new(factors)
    }

    pub fn sigma(&mut self) -> AutWord {
        let family = if self.rng.gen_bool(0.5) { SigmaFamily::Triangular } else { SigmaFamily::Affine };
        match family {
            // Affine words of length > 1 stay cheap; keep them short anyway.
            SigmaFamily::Affine => {
                let g = self.affine_generator(false);
                AutWord::new(vec![g])
            }
            _ => self.aut_word(SigmaFamily::Triangular),
        }
    }

    /// Random GWA element with degrees in [-span, span].
    pub fn gwa_elem(&mut self, span: i64, degree: u32, terms: usize) -> GwaElem {
        let mut e = GwaElem::zero();
        for _ in 0..terms {
            let n = self.rng.gen_range(-span..=span);
            let p = self.poly(degree, 2);
            e.add_at(n, &p);
        }
        e
    }

    /// Random W^e element supported in bidegrees [-span, span]².
    pub fn env_elem(&mut self, span: i64, degree: u32, terms: usize) -> EnvElem {
        let mut e = EnvElem::zero();
        for _ in 0..terms {
            let a = self.rng.gen_range(-span..=span);
            let b = self.rng.gen_range(-span..=span);
            let mut m = [0u32; 4];
            let mut left = degree;
            for slot in m.iter_mut() {
                *slot = self.rng.gen_range(0..=left);
                left -= *slot;
            }
            let c = self.rational();
            e.add_at((a, b), &Poly4::monomial(Mono(m), c));
        }
        e
    }

    /// A sparse degree-3 cochain: each slot is zero with probability 1/2.
    pub fn cochain3(&mut self) -> Cochain3 {
        let mut n = Cochain3::default();
        let slots = n.n12.iter_mut().chain(n.n21.iter_mut()).chain(n.n30.iter_mut());
        for slot in slots {
            if self.rng.gen_bool(0.5) {
                *slot = EnvElem::zero();
                continue;
            }
            let terms = self.rng.gen_range(1..=2);
            let mut e = EnvElem::zero();
            for _ in 0..terms {
                let a = self.rng.gen_range(-1..=1);
                let b = self.rng.gen_range(-1..=1);
                let mut m = [0u32; 4];
                m[self.rng.gen_range(0..4)] = self.rng.gen_range(0..=1);
                let c = self.rational();
                e.add_at((a, b), &Poly4::monomial(Mono(m), c));
            }
            *slot = e;
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_draws() {
        let a: Vec<String> = (0..5).map(|t| Sampler::for_trial(7, t).sigma().to_string()).collect();
        let b: Vec<String> = (0..5).map(|t| Sampler::for_trial(7, t).sigma().to_string()).collect();
        assert_eq!(a, b);
        assert_ne!(Sampler::new(1).poly(3, 4), Sampler::new(2).poly(3, 4));
    }

    #[test]
    fn triangular_words_keep_z2_linear() {
        let mut s = Sampler::new(3);
        for _ in 0..20 {
            let w = s.aut_word(SigmaFamily::Triangular);
            let img = &w.images()[1];
            assert!(img.degree().unwrap_or(0) <= 1 && !img.uses_var(0));
        }
    }
}
