mod common;

use common::negative_cf;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use floercone::{
    c1_plus_one_surgery, c1_positive_integer_surgery, c1_surgery_cobordism, characterize_all_minus_two,
    locate_contact_class, negative_expansion, positive_expansion, rational, reduce_emn, smooth_coefficient, DgsKind,
    FloerError, LegendrianData,
};

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Brute-force check that `r = −x/y` is `−1/ℓ`: search `ℓ` directly.
fn is_minus_one_over(r: &BigRational) -> bool {
    (1..=200).any(|l| *r == rational(-1, l))
}

#[test]
fn negative_examples() {
    let e = negative_expansion(&rational(-2, 1)).unwrap();
    assert_eq!((e.a.clone(), e.stabilizations.clone()), (vec![-3], vec![1]));
    let e = negative_expansion(&rational(-1, 1)).unwrap();
    assert_eq!((e.a.clone(), e.stabilizations.clone()), (vec![-2], vec![0]));
    let e = negative_expansion(&rational(-7, 2)).unwrap();
    assert_eq!((e.a.clone(), e.stabilizations.clone()), (vec![-5, -2], vec![3, 0]));
    assert_eq!(e.kind, DgsKind::Negative);
    assert!(e.surgery_signs.iter().all(|&s| s == -1));
}

#[test]
fn positive_examples() {
    let e = positive_expansion(&rational(5, 4)).unwrap();
    assert_eq!((e.e, e.a.clone(), e.stabilizations.clone()), (1, vec![-5], vec![4]));
    let e = positive_expansion(&rational(1, 1)).unwrap();
    assert_eq!((e.e, e.a.len()), (1, 0));
    assert_eq!(e.surgery_signs, vec![1]);
    let e = positive_expansion(&rational(2, 1)).unwrap();
    assert_eq!((e.e, e.a.clone(), e.stabilizations.clone()), (1, vec![-2], vec![1]));
    assert_eq!(e.surgery_signs, vec![1, -1]);
    for n in 1..=10 {
        let e = positive_expansion(&rational(n + 1, n)).unwrap();
        assert_eq!(e.e, 1);
        assert_eq!(e.stabilizations[0], n as u64);
        assert_eq!(e.evaluate(), rational(n + 1, n));
    }
}

#[test]
fn all_minus_two_examples() {
    assert!(characterize_all_minus_two(&rational(-1, 3)).unwrap());
    assert!(characterize_all_minus_two(&rational(-1, 1)).unwrap());
    assert!(!characterize_all_minus_two(&rational(-2, 3)).unwrap());
    assert_eq!(negative_expansion(&rational(-1, 3)).unwrap().a, vec![-2, -2, -2]);
}

#[test]
fn smooth_coefficients() {
    let l = LegendrianData::new("L", 1, 0);
    assert_eq!(smooth_coefficient(&l, &rational(-2, 1)).unwrap().value, rational(-1, 1));
    let p = LegendrianData::new("P", 0, -1);
    for k in 1..=6 {
        let s = smooth_coefficient(&p, &rational(k + 1, k)).unwrap();
        assert_eq!(s.value, rational(k + 1, k));
        assert!(!s.excluded);
    }
    for m in [1, 3, 5] {
        let s = smooth_coefficient(&LegendrianData::new("L", m, 0), &rational(-m, 1)).unwrap();
        assert!(s.value.is_zero() && s.excluded);
    }
}

#[test]
fn contact_class_location() {
    for k in 1..=6 {
        let loc = locate_contact_class(&LegendrianData::new("P", 0, -1), -(k + 1), k).unwrap();
        assert_eq!(loc.t, -1);
        assert_eq!(loc.vertex.label(), "B[-1]");
    }
    for q in [1, 3] {
        assert_eq!(locate_contact_class(&LegendrianData::new("L", 1, 0), 5, q).unwrap().t, -1);
    }
    assert!(matches!(locate_contact_class(&LegendrianData::new("L", 0, 0), 3, 1), Err(FloerError::ParityError(_))));
}

#[test]
fn c1_formulas() {
    for k in 1..=6 {
        assert_eq!(c1_surgery_cobordism(&LegendrianData::new("P", 0, -1), k + 1, k), 0);
    }
    assert_eq!(c1_surgery_cobordism(&LegendrianData::new("L", 0, 0), 1, 1), 0);
    assert_eq!(c1_surgery_cobordism(&LegendrianData::new("L", 1, 0), 5, 2), 2);
    assert_eq!(c1_positive_integer_surgery(&LegendrianData::new("L", 0, 0), 1), 0);
    assert_eq!(c1_positive_integer_surgery(&LegendrianData::new("m", 0, -1), 2), 0);
    let mut l = LegendrianData::new("L", 0, 1);
    l.y = 3;
    assert_eq!(c1_positive_integer_surgery(&l, 2), 6);
    for rot in [0, -1, 2] {
        assert_eq!(c1_plus_one_surgery(&LegendrianData::new("L", 0, rot)), rot);
    }
}

#[test]
fn emn_reduction() {
    assert_eq!(reduce_emn(1, &rational(-2, 1)).unwrap().value, rational(-2, 1));
    assert_eq!(reduce_emn(3, &rational(-2, 1)).unwrap().value, rational(-4, 1));
    assert!(matches!(reduce_emn(3, &rational(-3, 1)), Err(FloerError::ExcludedCoefficient(_))));
    assert!(reduce_emn(1, &rational(-1, 1)).is_err());
    assert!(matches!(reduce_emn(2, &rational(-2, 1)), Err(FloerError::BadParameter(_))));
}

#[test]
fn stabilization_keeps_tb_minus_rot() {
    let l = LegendrianData::new("L", 1, 0);
    for k in 0..6 {
        let s = l.stabilized(k);
        assert_eq!(s.tb - s.rot, l.tb - l.rot);
    }
    assert_eq!(l.push_off().tb, l.tb);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn negative_round_trip(num in 1i64..100_000, den in 1i64..1_000) {
        let r = -BigRational::new(BigInt::from(num), BigInt::from(den));
        prop_assume!(r > big(-100));
        let e = negative_expansion(&r).unwrap();
        prop_assert!(e.a.iter().all(|&a| a <= -2));
        let mut shifted = e.a.clone();
        shifted[0] += 1;
        prop_assert_eq!(negative_cf(&shifted), r.clone());
        prop_assert_eq!(e.evaluate(), r.clone());
        for (a, s) in e.a.iter().zip(&e.stabilizations) {
            prop_assert_eq!(*s as i64, (a + 2).abs());
        }
        let all_two = e.a.iter().all(|&a| a == -2);
        prop_assert_eq!(characterize_all_minus_two(&r).unwrap(), all_two);
        if den <= 200 {
            prop_assert_eq!(all_two, is_minus_one_over(&r));
        }
    }

    #[test]
    fn positive_round_trip(num in 1i64..10_000, den in 1i64..1_000) {
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        let e = positive_expansion(&r).unwrap();
        prop_assert_eq!(e.evaluate(), r.clone());
        prop_assert!(e.e >= 1);
        prop_assert_eq!(e.surgery_signs.len(), e.e as usize + e.a.len());
        // e is minimal with 1/r − e ≤ 0.
        let inv = r.recip();
        prop_assert!(!(inv.clone() - big(e.e as i64)).is_positive());
        prop_assert!((inv - big(e.e as i64 - 1)).is_positive());
    }
}
