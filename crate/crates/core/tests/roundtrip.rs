use gwalab_core::aut::{AutGenerator, AutWord};
use gwalab_core::cohomology::{build_n, cochain_d3, is_cocycle4, CochainComplex};
use gwalab_core::gwa::GwaAlgebra;
use gwalab_core::ideal::{smoothness_test, Verdict};
use gwalab_core::poly::{rat, Poly2};
use gwalab_core::random::Sampler;

fn smooth_instances() -> Vec<GwaAlgebra> {
    let z1 = Poly2::z1();
    let z2 = Poly2::z2();
    vec![
        GwaAlgebra::new(AutWord::identity(), &(&z1.pow(2) + &z2.pow(2)) - &Poly2::one()),
        GwaAlgebra::new(
            AutWord::new(vec![AutGenerator::affine_int([[2, 0], [0, 3]], [0, 0])]),
            &z1 + &Poly2::constant(rat(5)),
        ),
        GwaAlgebra::new(
            AutWord::new(vec![
                AutGenerator::elementary(1, z2.pow(2)).unwrap(),
                AutGenerator::affine_int([[1, 1], [0, 2]], [1, 0]),
            ]),
            &(&z1 * &z2) + &Poly2::one(),
        ),
    ]
}

#[test]
fn random_coboundaries_round_trip() {
    for (k, w) in smooth_instances().iter().enumerate() {
        let Verdict::Smooth(cert) = smoothness_test(w) else { panic!("instance {k} should be smooth") };
        let cx = CochainComplex::new(w).unwrap();
        for trial in 0..20 {
            let mut s = Sampler::for_trial(11, (k * 100 + trial) as u64);
            let n0 = s.cochain3();
            let m = cochain_d3(&cx, &n0);
            let r = is_cocycle4(w, &m);
            assert!(r.all_passed(), "instance {k} trial {trial}: {r}");
            let n = build_n(w, &cert, &m).unwrap();
            assert_eq!(cochain_d3(&cx, &n), m, "instance {k} trial {trial}");
        }
    }
}
