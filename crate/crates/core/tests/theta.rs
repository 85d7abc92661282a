use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use tricover::ball::embed_j;
use tricover::sampling::Sampler;
use tricover::theta::{all_labeled_characteristics, theta_general, ClassTag, ThetaConfig};

fn tau(seed: u64) -> tricover::algebra::SiegelPoint {
    embed_j(&Sampler::new(seed).ball_point(0.1).unwrap()).unwrap()
}

fn sixths() -> impl Strategy<Value = [f64; 4]> {
    proptest::array::uniform4(-5i32..=5).prop_map(|v| v.map(|k| k as f64 / 6.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn integer_shift_of_b_is_a_phase(seed in any::<u64>(), a in sixths(), b in sixths(), m in proptest::array::uniform4(-2i32..=2)) {
        let cfg = ThetaConfig::default();
        let t = tau(seed);
        let base = theta_general(a, b, &t, &cfg).unwrap();
        let shifted = theta_general(a, [0, 1, 2, 3].map(|i| b[i] + m[i] as f64), &t, &cfg).unwrap();
        let phase = Complex64::from_polar(1.0, 2.0 * PI * (0..4).map(|i| a[i] * m[i] as f64).sum::<f64>());
        prop_assert!((shifted.value - base.value * phase).norm() < 1e-11 * (1.0 + base.value.norm()));
    }

    #[test]
    fn constants_are_even(seed in any::<u64>(), a in sixths(), b in sixths()) {
        let cfg = ThetaConfig::default();
        let t = tau(seed);
        let p = theta_general(a, b, &t, &cfg).unwrap().value;
        let m = theta_general(a.map(|x| -x), b.map(|x| -x), &t, &cfg).unwrap().value;
        prop_assert!((p - m).norm() < 1e-11 * (1.0 + p.norm()));
    }

    #[test]
    fn tail_bound_covers_the_truncation(seed in any::<u64>(), a in sixths(), b in sixths()) {
        let t = tau(seed);
        let rough = theta_general(a, b, &t, &ThetaConfig::with_eps(1e-5)).unwrap();
        let fine = theta_general(a, b, &t, &ThetaConfig::with_eps(1e-14)).unwrap();
        prop_assert!(rough.tail_bound <= 1e-5);
        prop_assert!((rough.value - fine.value).norm() <= rough.tail_bound + fine.tail_bound + 1e-13);
    }
}

#[test]
fn label_classes_have_the_expected_sizes() {
    let all = all_labeled_characteristics();
    assert_eq!(all.len(), 81);
    let count = |c: ClassTag| all.iter().filter(|l| l.label.class() == c).count();
    assert_eq!(count(ClassTag::TriplePairing), 30);
    assert_eq!(count(ClassTag::Square), 30);
    assert_eq!(count(ClassTag::Triple), 20);
    assert_eq!(count(ClassTag::Full), 1);
    let mut keys: Vec<_> = all.iter().map(|l| l.characteristic.key()).collect();
    keys.sort();
    keys.dedup();
    assert_eq!(keys.len(), 81);
}

#[test]
fn thetas_near_the_floor_are_refused() {
    let t = tau(1);
    let cfg = ThetaConfig { lambda_floor: t.lambda_min() * 2.0, ..ThetaConfig::default() };
    assert!(matches!(theta_general([0.0; 4], [0.0; 4], &t, &cfg), Err(tricover::Error::BoundaryProximity { .. })));
}
