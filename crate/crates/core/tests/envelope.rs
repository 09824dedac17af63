use gwalab_core::aut::{AutGenerator, AutWord};
use gwalab_core::envelope::{DifferentialSet, EnvElem};
use gwalab_core::gwa::{GwaAlgebra, GwaElem};
use gwalab_core::poly::Poly2;

fn instance() -> GwaAlgebra {
    let s = AutWord::new(vec![
        AutGenerator::elementary(1, Poly2::z2().pow(2)).unwrap(),
        AutGenerator::affine_int([[1, 1], [0, 2]], [1, 0]),
    ]);
    GwaAlgebra::new(s, Poly2::z1() * Poly2::z2() + Poly2::z1().pow(2) + Poly2::one())
}

#[test]
fn homotopy_identities_hold() {
    let w = instance();
    let ds = DifferentialSet::build(&w, 5).unwrap();
    let r = ds.verify_homotopy(&w);
    println!("{r}");
    assert!(r.all_passed());
}

#[test]
fn total_complex_squares_to_zero() {
    let w = instance();
    let ds = DifferentialSet::build(&w, 5).unwrap();
    let r = ds.total_d_squared(&w);
    println!("{r}");
    assert!(r.all_passed());
}

#[test]
fn worked_products() {
    let w = instance();
    let ds = DifferentialSet::build(&w, 5).unwrap();
    let phi = GwaElem::from_poly(w.phi().clone());
    let sphi = GwaElem::from_poly(w.sigma_phi().clone());
    let m = ds.dh(0, 0).unwrap().compose(&w, ds.dh(1, 0).unwrap()).unwrap();
    assert_eq!(m.get(0, 0), &(&EnvElem::right(&phi) - &EnvElem::left(&phi)));
    assert_eq!(m.get(1, 0), &(&EnvElem::right(&sphi) - &EnvElem::left(&sphi)));
    let m = ds.dv(0, 0).unwrap().compose(&w, ds.t(0, 1).unwrap()).unwrap();
    assert_eq!(m.get(0, 0), &(&EnvElem::left(&phi) - &EnvElem::right(&phi)));
    assert_eq!(m.get(1, 0), &(&EnvElem::left(&sphi) - &EnvElem::right(&sphi)));
}
