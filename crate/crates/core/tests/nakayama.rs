use std::collections::BTreeMap;

use gwalab_core::aut::{AutGenerator, AutWord};
use gwalab_core::cohomology::{bimodule_action, phi_map, E12Class, Side};
use gwalab_core::gwa::{GwaAlgebra, GwaElem};
use gwalab_core::poly::{rat, Poly2};

fn alg() -> GwaAlgebra {
    let s = AutWord::new(vec![
        AutGenerator::elementary(1, Poly2::z2().pow(2)).unwrap(),
        AutGenerator::affine_int([[2, 1], [0, 3]], [1, -1]),
    ]);
    GwaAlgebra::new(s, &(Poly2::z1() * Poly2::z2()) + &Poly2::z2())
}

fn gens() -> Vec<GwaElem> {
    vec![GwaElem::x(), GwaElem::y(), GwaElem::from_poly(Poly2::z1()), GwaElem::from_poly(Poly2::z2())]
}

fn classes() -> Vec<E12Class> {
    vec![
        E12Class::canonical(&BTreeMap::from([(1, Poly2::one())]), &BTreeMap::new()),
        E12Class::canonical(
            &BTreeMap::from([(2, Poly2::z1())]),
            &BTreeMap::from([(1, Poly2::z2() + Poly2::constant(rat(3)))]),
        ),
        E12Class::canonical(&BTreeMap::new(), &BTreeMap::from([(2, Poly2::one()), (1, Poly2::z1())])),
    ]
}

#[test]
fn right_action_matches_nakayama_twist() {
    let w = alg();
    for y in classes() {
        for g in gens() {
            let lhs = phi_map(&w, &bimodule_action(&w, &y, &g, Side::Right).unwrap());
            let rhs = w.multiply(&phi_map(&w, &y), &w.nakayama_apply(&g));
            assert_eq!(lhs, rhs, "class {y}, generator {g}");
        }
    }
}

#[test]
fn left_action_matches_multiplication() {
    let w = alg();
    for y in classes() {
        for g in gens() {
            let lhs = phi_map(&w, &bimodule_action(&w, &y, &g, Side::Left).unwrap());
            let rhs = w.multiply(&g, &phi_map(&w, &y));
            assert_eq!(lhs, rhs, "class {y}, generator {g}");
        }
    }
}
