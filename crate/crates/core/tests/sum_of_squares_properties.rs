use liespec::sum_of_squares::{
    convolve, count_brute, count_divisor_formula, count_theta, growth_report, theta_series,
    Variant,
};
use liespec::Error;
use num_bigint::BigUint;
use num_traits::Zero;
use proptest::prelude::*;

/// Ordered tuples in `[-b, b]^s` (or `[1, b]^s`) with square sum `r`, by
/// plain odometer enumeration.
fn odometer_count(s: usize, r: u64, variant: Variant) -> u64 {
    let b = (r as f64).sqrt() as i64 + 1;
    let lo = match variant {
        Variant::AllIntegers => -b,
        Variant::PositiveOnly => 1,
    };
    let mut x = vec![lo; s];
    let mut count = 0;
    loop {
        if x.iter().map(|v| (v * v) as u64).sum::<u64>() == r {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == s {
                return count;
            }
            x[i] += 1;
            if x[i] <= b {
                break;
            }
            x[i] = lo;
            i += 1;
        }
    }
}

#[test]
fn brute_force_matches_odometer() {
    for s in 1..=4 {
        for variant in Variant::ALL {
            let t = count_brute(s, 40, variant).unwrap();
            for r in 0..=40 {
                assert_eq!(
                    t.counts[r as usize],
                    BigUint::from(odometer_count(s, r, variant)),
                    "s = {s}, R = {r}, {variant}"
                );
            }
        }
    }
}

#[test]
fn theta_examples() {
    let t = count_theta(3, 9, Variant::AllIntegers).unwrap();
    assert_eq!(t.counts[9], BigUint::from(30u32));
    assert_eq!(odometer_count(3, 9, Variant::AllIntegers), 30);
}

#[test]
fn five_squares_eventually_represent_everything() {
    let t = count_theta(5, 3000, Variant::AllIntegers).unwrap();
    assert_eq!(t.largest_zero(), None);
    // positive five-square representations miss a finite set; 33 is the largest
    let p = count_theta(5, 3000, Variant::PositiveOnly).unwrap();
    assert_eq!(p.largest_zero(), Some(33));
    for r in [33u64, 34, 100, 2999] {
        let b = count_brute(5, r, Variant::PositiveOnly).unwrap();
        assert_eq!(b.counts[r as usize], p.counts[r as usize]);
    }
}

#[test]
fn divisor_backends_match_brute_force() {
    for s in [2, 4] {
        let d = count_divisor_formula(s, 2000).unwrap();
        let b = count_brute(s, 2000, Variant::AllIntegers).unwrap();
        assert_eq!(d.first_mismatch(&b), None, "s = {s}");
    }
}

#[test]
fn divisor_rejects_other_s() {
    for s in [1, 3, 5] {
        assert_eq!(count_divisor_formula(s, 10).unwrap_err(), Error::UnsupportedS(s));
    }
}

#[test]
fn growth_envelopes_for_five_and_six() {
    for s in [5, 6] {
        let r = growth_report(s, 100, 3000).unwrap();
        assert!(r.min_ratio > 0.0 && r.min_ratio.is_finite());
        assert!(r.max_ratio.is_finite());
        assert!(r.zero_counts.is_empty());
    }
}

#[test]
fn four_square_growth_is_bounded() {
    let r = growth_report(4, 10, 3000).unwrap();
    assert!(r.max_ratio.is_finite() && r.max_ratio > 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn convolution_recursion(s in 1usize..=6, r_max in 0u64..400, positive in any::<bool>()) {
        let variant = if positive { Variant::PositiveOnly } else { Variant::AllIntegers };
        let theta = theta_series(r_max, variant).unwrap();
        let a = count_theta(s, r_max, variant).unwrap();
        let b = count_theta(s + 1, r_max, variant).unwrap();
        prop_assert_eq!(convolve(&a.counts, &theta), b.counts);
    }

    #[test]
    fn all_integer_counts_dominate(s in 1usize..=6, r_max in 0u64..400) {
        let all = count_theta(s, r_max, Variant::AllIntegers).unwrap();
        let pos = count_theta(s, r_max, Variant::PositiveOnly).unwrap();
        prop_assert_eq!(&all.counts[0], &BigUint::from(1u32));
        prop_assert!(pos.counts[0].is_zero());
        for (a, p) in all.counts.iter().zip(&pos.counts) {
            prop_assert!(a >= p);
        }
    }

    #[test]
    fn one_square_counts_are_even(r_max in 1u64..2000) {
        let t = count_brute(1, r_max, Variant::AllIntegers).unwrap();
        let two = BigUint::from(2u32);
        for c in &t.counts[1..] {
            prop_assert!((c % &two).is_zero());
        }
    }

    #[test]
    fn brute_and_theta_agree(s in 1usize..=5, r_max in 0u64..600, positive in any::<bool>()) {
        let variant = if positive { Variant::PositiveOnly } else { Variant::AllIntegers };
        let a = count_brute(s, r_max, variant).unwrap();
        let b = count_theta(s, r_max, variant).unwrap();
        prop_assert_eq!(a.counts, b.counts);
    }
}
