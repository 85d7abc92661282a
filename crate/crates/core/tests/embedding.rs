use num_complex::Complex64;
use proptest::prelude::*;
use tricover::algebra::moebius_act;
use tricover::ball::{embed_j, BallPoint};
use tricover::reflection::{all_generators, apply, Word};
use tricover::sampling::Sampler;
use tricover::symplectic::{lift_unitary, w_matrix};

fn point(seed: u64) -> BallPoint {
    Sampler::new(seed).ball_point(0.1).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn image_is_in_siegel_space(seed in any::<u64>()) {
        let tau = embed_j(&point(seed)).unwrap();
        let t = tau.tau();
        prop_assert!((t - t.transpose()).camax() < 1e-13);
        prop_assert!(tau.lambda_min() > 0.0);
    }

    #[test]
    fn projective_rescaling_does_not_move_the_image(seed in any::<u64>(), re in -3.0f64..3.0, im in -3.0f64..3.0) {
        prop_assume!(re.abs() + im.abs() > 0.1);
        let x = point(seed);
        let c = Complex64::new(re, im);
        let y = BallPoint::from_vector(&(x.coords() * c)).unwrap();
        prop_assert!(embed_j(&x).unwrap().max_abs_diff(&embed_j(&y).unwrap()) < 1e-12);
    }

    #[test]
    fn lifted_words_act_compatibly(seed in any::<u64>(), picks in proptest::collection::vec(0usize..20, 1..4)) {
        let gens = all_generators();
        let w = Word(picks.iter().map(|&k| gens[k]).collect());
        let m = w.evaluate();
        let x = point(seed);
        let gx = BallPoint::from_vector(&apply(&m, x.coords())).unwrap();
        let (moved, _) = moebius_act(&lift_unitary(&m).to_f64(), &embed_j(&x).unwrap()).unwrap();
        let target = embed_j(&gx).unwrap();
        let scale = target.tau().camax().max(1.0);
        prop_assert!(moved.max_abs_diff(&target) < 1e-10 * scale);
    }
}

#[test]
fn w_commutes_with_every_lift() {
    let w = w_matrix();
    for g in all_generators() {
        let l = lift_unitary(&g.matrix());
        assert!(l.is_integral() && l.is_symplectic(), "{g}");
        assert_eq!(&l.g8 * &w, &w * &l.g8, "{g}");
    }
}
