//! σ-independence of verdicts and witnesses, canonical forms of E₁ classes,
//! and ν multiplicativity on sampled inputs.

use proptest::prelude::*;
use rand::Rng;

use gwalab_core::aut::AutWord;
use gwalab_core::cohomology::e12::{canonicalize_with_witness, d0, representative, sub_pair, Family};
use gwalab_core::cohomology::{canonicalize_e12, E12Class};
use gwalab_core::gwa::GwaAlgebra;
use gwalab_core::ideal::smoothness_test;
use gwalab_core::pipeline::analyze;
use gwalab_core::poly::{rat, Poly2, Rational};
use gwalab_core::random::Sampler;
use gwalab_core::tor::witness_chain;

fn fixtures() -> Vec<Poly2> {
    let (z1, z2) = (Poly2::z1(), Poly2::z2());
    vec![
        &(&z1.pow(2) + &z2.pow(2)) - &Poly2::one(),
        &z1 + &Poly2::constant(rat(5)),
        &(&z1 * &z2) + &Poly2::one(),
        z1.pow(2),
        &z1 * &z2,
        &z1.pow(2) - &z2.pow(3),
        Poly2::zero(),
    ]
}

fn random_class(s: &mut Sampler) -> E12Class {
    let mut x = E12Class::zero();
    let families = [Family::A1, Family::A2, Family::A3, Family::B4];
    for _ in 0..3 {
        let f = families[s.rng().gen_range(0..4)];
        let (lo_i, lo_j) = match f {
            Family::A1 | Family::B4 => (1, 1),
            Family::A2 => (1, 0),
            Family::A3 => (0, 1),
        };
        let i = lo_i + s.rng().gen_range(0..2);
        let j = lo_j + s.rng().gen_range(0..3);
        let c = s.poly(1, 2);
        x.add(f, i, j, &c);
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verdict_is_sigma_independent(seed in any::<u64>(), k in 0usize..7) {
        let phi = fixtures()[k].clone();
        let base = smoothness_test(&GwaAlgebra::new(AutWord::identity(), phi.clone()));
        let sigma = Sampler::new(seed).sigma();
        let w = GwaAlgebra::new(sigma, phi.clone());
        let v = smoothness_test(&w);
        prop_assert_eq!(v.is_smooth(), base.is_smooth());
        let r = analyze(&w);
        prop_assert_eq!(r.smooth, base.is_smooth());
        prop_assert_eq!(r.calabi_yau, r.smooth && w.jacobian() == Rational::from_integer(1.into()));
        prop_assert_eq!(r.infinite_global_dimension, !r.smooth);
    }

    #[test]
    fn witness_is_sigma_independent(seed in any::<u64>(), k in 3usize..6) {
        let phi = fixtures()[k].clone();
        let w = GwaAlgebra::new(Sampler::new(seed).sigma(), phi);
        let chain = witness_chain(&w, &[rat(0), rat(0)]).unwrap();
        prop_assert!(chain.all_passed(), "{}", chain);
    }

    #[test]
    fn canonical_form_is_idempotent_and_cohomologous(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let w = GwaAlgebra::new(s.sigma(), s.nonzero_poly(2, 3));
        let x = random_class(&mut s);
        let (c, u) = canonicalize_with_witness(&w, &x);
        prop_assert!(c.is_canonical());
        prop_assert_eq!(canonicalize_e12(&w, &c), c.clone());
        let diff = sub_pair(&representative(&w, &x), &representative(&w, &c));
        prop_assert_eq!(diff, d0(&w, &u));
    }

    #[test]
    fn nakayama_is_multiplicative(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let w = GwaAlgebra::new(s.sigma(), s.nonzero_poly(2, 3));
        let (a, b) = (s.gwa_elem(2, 2, 3), s.gwa_elem(2, 2, 3));
        prop_assert_eq!(
            w.nakayama_apply(&w.multiply(&a, &b)),
            w.multiply(&w.nakayama_apply(&a), &w.nakayama_apply(&b))
        );
    }
}
