//! Invariants of the base ring, automorphisms, calculus, W and W^e on
//! sampled inputs.

use proptest::prelude::*;

use gwalab_core::aut::AutWord;
use gwalab_core::envelope::env_mul;
use gwalab_core::gwa::{GwaAlgebra, GwaElem};
use gwalab_core::poly::{ratio, Mono, Poly2, Rational};
use gwalab_core::random::{Sampler, SigmaFamily};
use gwalab_core::suites::calculus_identities;

fn poly() -> impl Strategy<Value = Poly2> {
    prop::collection::vec((0u32..4, 0u32..4, -6i64..=6, 1i64..=4), 0..5).prop_map(|terms| {
        let mut p = Poly2::zero();
        for (a, b, n, d) in terms {
            p.add_term(Mono([a, b]), ratio(n, d));
        }
        p
    })
}

fn point() -> impl Strategy<Value = [Rational; 2]> {
    ((-5i64..=5, 1i64..=3), (-5i64..=5, 1i64..=3)).prop_map(|((a, b), (c, d))| [ratio(a, b), ratio(c, d)])
}

fn triangular_algebra(seed: u64) -> GwaAlgebra {
    let mut s = Sampler::new(seed);
    let sigma = s.sigma();
    let phi = s.nonzero_poly(2, 3);
    GwaAlgebra::new(sigma, phi)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn eval_is_a_ring_map(a in poly(), b in poly(), pt in point()) {
        prop_assert_eq!((&a * &b).eval(&pt), a.eval(&pt) * b.eval(&pt));
        prop_assert_eq!((&a + &b).eval(&pt), a.eval(&pt) + b.eval(&pt));
    }

    #[test]
    fn leibniz_rule(a in poly(), b in poly()) {
        for i in 0..2 {
            prop_assert_eq!((&a * &b).partial(i), &(&a.partial(i) * &b) + &(&a * &b.partial(i)));
        }
    }

    #[test]
    fn automorphism_inverse_and_jacobian(seed in any::<u64>(), p in poly()) {
        let mut s = Sampler::new(seed);
        let sigma = s.aut_word(SigmaFamily::Mixed);
        let tau = s.aut_word(SigmaFamily::Mixed);
        // A ring map fixing z1 and z2 is the identity; σ⁻¹σ(p) itself can reach degree ~100.
        for z in [Poly2::z1(), Poly2::z2()] {
            prop_assert_eq!(sigma.inverse().apply(&sigma.apply(&z, 1), 1), z.clone());
            prop_assert_eq!(sigma.apply(&sigma.inverse().apply(&z, 1), 1), z);
        }
        prop_assert_eq!(sigma.apply(&p, -1), sigma.inverse().apply(&p, 1));
        prop_assert_eq!(sigma.compose(&tau).jacobian(), sigma.jacobian() * tau.jacobian());
        prop_assert_eq!(sigma.symbolic_jacobian(), Poly2::constant(sigma.jacobian()));
    }

    #[test]
    fn automorphism_is_a_ring_map(seed in any::<u64>(), a in poly(), b in poly()) {
        let sigma = Sampler::new(seed).aut_word(SigmaFamily::Mixed);
        prop_assert_eq!(sigma.apply(&(&a * &b), 1), &sigma.apply(&a, 1) * &sigma.apply(&b, 1));
    }

    #[test]
    fn calculus_identities_hold(seed in any::<u64>(), phi in poly()) {
        let sigma = Sampler::new(seed).aut_word(SigmaFamily::Mixed);
        for c in calculus_identities(&sigma, &phi, "prop") {
            prop_assert!(c.passed, "{}: {:?}", c.label, c.detail);
        }
    }

    #[test]
    fn gwa_relations(seed in any::<u64>(), b in poly()) {
        let w = triangular_algebra(seed);
        let (x, y) = (GwaElem::x(), GwaElem::y());
        let bb = GwaElem::from_poly(b.clone());
        prop_assert_eq!(w.multiply(&y, &x), GwaElem::from_poly(w.phi().clone()));
        prop_assert_eq!(w.multiply(&x, &y), GwaElem::from_poly(w.sigma_phi().clone()));
        prop_assert_eq!(w.multiply(&x, &bb), w.multiply(&GwaElem::from_poly(w.twist(&b, 1)), &x));
        prop_assert_eq!(w.multiply(&y, &bb), w.multiply(&GwaElem::from_poly(w.twist(&b, -1)), &y));
    }

    #[test]
    fn gwa_associativity(seed in any::<u64>()) {
        let w = triangular_algebra(seed);
        let mut s = Sampler::new(seed ^ 1);
        let (a, b, c) = (s.gwa_elem(2, 2, 2), s.gwa_elem(2, 2, 2), s.gwa_elem(2, 2, 2));
        prop_assert_eq!(w.multiply(&w.multiply(&a, &b), &c), w.multiply(&a, &w.multiply(&b, &c)));
    }

    #[test]
    fn enveloping_associativity(seed in any::<u64>()) {
        let w = triangular_algebra(seed);
        let mut s = Sampler::new(seed ^ 2);
        let (a, b, c) = (s.env_elem(1, 1, 2), s.env_elem(1, 1, 2), s.env_elem(1, 1, 2));
        prop_assert_eq!(env_mul(&w, &env_mul(&w, &a, &b), &c), env_mul(&w, &a, &env_mul(&w, &b, &c)));
    }
}

#[test]
fn identity_word_is_identity() {
    let p = &Poly2::z1() * &Poly2::z2();
    assert_eq!(AutWord::identity().apply(&p, 5), p);
}
