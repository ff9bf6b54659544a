use fpdiff::analysis::fitted_exponent;
use fpdiff::{gl_rule, hr_rule};
use proptest::prelude::*;

const GRID: [usize; 3] = [500, 1000, 2000];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn low_moments_are_exact(n in 1usize..=2000) {
        let r = gl_rule(n).unwrap();
        let first = r.integrate(|x| x);
        prop_assert!(first.abs() <= 1e-13, "n={n}: {first:e}");
        if n >= 2 {
            let second = r.integrate(|x| x * x);
            prop_assert!((second - 2.0 / 3.0).abs() <= 1e-12, "n={n}: {second}");
        }
    }

    #[test]
    fn first_gaps_increase(k in 1usize..=3, extra in 0usize..=1994) {
        let n = 2 * k + extra;
        let x = gl_rule(n).unwrap().nodes().to_vec();
        let mut gaps = vec![x[0] + 1.0];
        gaps.extend((1..k).map(|i| x[i] - x[i - 1]));
        prop_assert!(gaps[0] > 0.0);
        for w in gaps.windows(2) {
            prop_assert!(w[0] < w[1], "n={n}: {gaps:?}");
        }
    }

    #[test]
    fn end_weights_are_equal_and_smallest(n in 1usize..=2000) {
        let r = gl_rule(n).unwrap();
        let w = r.weights();
        prop_assert_eq!(w[0], w[n - 1]);
        prop_assert!(w.iter().all(|&v| v >= w[0]));
    }

    #[test]
    fn half_range_rules_fill_each_half(n in 1usize..=500) {
        let r = hr_rule(n).unwrap();
        let (left, right) = r.nodes().split_at(n);
        prop_assert!(left.iter().all(|&x| -1.0 < x && x < 0.0));
        prop_assert!(right.iter().all(|&x| 0.0 < x && x < 1.0));
        let half: f64 = r.weights()[..n].iter().sum();
        prop_assert!((half - 1.0).abs() <= 1e-13);
    }
}

#[test]
fn first_node_offset_decays_quadratically() {
    let pairs: Vec<(usize, f64)> = GRID
        .iter()
        .map(|&n| (n, gl_rule(n).unwrap().nodes()[0] + 1.0))
        .collect();
    let p = fitted_exponent(&pairs).unwrap();
    assert!((1.9..=2.1).contains(&p), "{p}");
}

#[test]
fn smallest_weight_decays_quadratically() {
    let pairs: Vec<(usize, f64)> = GRID
        .iter()
        .map(|&n| (n, gl_rule(n).unwrap().weights()[0]))
        .collect();
    let p = fitted_exponent(&pairs).unwrap();
    assert!((1.9..=2.1).contains(&p), "{p}");
}
