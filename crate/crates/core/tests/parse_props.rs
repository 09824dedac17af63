//! Printed polynomials, automorphism words and W elements parse back to the
//! same values.

use std::collections::BTreeMap;

use proptest::prelude::*;

use gwalab_core::parse::{parse_gwa_elem, parse_poly, parse_word, standard_bindings};
use gwalab_core::random::{Sampler, SigmaFamily};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_round_trip(seed in any::<u64>()) {
        let p = Sampler::new(seed).poly(4, 5);
        prop_assert_eq!(parse_poly(&p.to_string(), &BTreeMap::new()).unwrap(), p);
    }

    #[test]
    fn word_round_trip(seed in any::<u64>()) {
        let sigma = Sampler::new(seed).aut_word(SigmaFamily::Mixed);
        let back = parse_word(&sigma.to_string(), &BTreeMap::new()).unwrap();
        prop_assert_eq!(back.images(), sigma.images());
        prop_assert_eq!(back.to_string(), sigma.to_string());
    }

    #[test]
    fn gwa_element_round_trip(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let w = gwalab_core::gwa::GwaAlgebra::new(s.sigma(), s.nonzero_poly(2, 3));
        let e = s.gwa_elem(3, 2, 3);
        let back = parse_gwa_elem(&w, &e.to_string(), &standard_bindings(), &BTreeMap::new()).unwrap();
        prop_assert_eq!(back, e);
    }
}
