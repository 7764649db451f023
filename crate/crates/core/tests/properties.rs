//! Property tests for the exact kernels: order consistency, canonical
//! uniqueness, floor correctness, matrix laws, and the periodic-string
//! comparison against direct surd comparison.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use alphacf::{
    alt_compare, cf_expand, cf_value, periodic_compare, qn_compare, surd_of_periodic, twin,
    MobiusMatrix, PQString, QuadraticNumber,
};

fn pq(digits: Vec<u64>) -> PQString {
    PQString::new(digits).unwrap()
}

fn digit() -> impl Strategy<Value = u64> {
    1u64..=9
}

fn string(max_len: usize) -> impl Strategy<Value = PQString> {
    prop::collection::vec(digit(), 1..=max_len).prop_map(pq)
}

fn surd() -> impl Strategy<Value = QuadraticNumber> {
    // (a + b sqrt(d)) / c with d <= 10^4; the constructor canonicalizes
    (-50i64..=50, -20i64..=20, 1i64..=40, 2i64..=10_000).prop_map(|(a, b, c, d)| {
        QuadraticNumber::new(BigInt::from(a), BigInt::from(b), BigInt::from(c), BigInt::from(d))
            .unwrap()
    })
}

proptest! {
    #[test]
    fn floor_sandwich(x in surd()) {
        let k = x.floor();
        let lo = QuadraticNumber::from_rational(&BigRational::from(k.clone()));
        let hi = QuadraticNumber::from_rational(&BigRational::from(&k + 1));
        prop_assert!(qn_compare(&lo, &x) != Ordering::Greater);
        prop_assert!(qn_compare(&x, &hi) == Ordering::Less);
    }

    #[test]
    fn canonical_uniqueness(x in surd(), k in 1i64..=30) {
        // scaling all coefficients by k must canonicalize back to x
        let y = QuadraticNumber::new(
            x.coeff_a() * BigInt::from(k),
            x.coeff_b() * BigInt::from(k),
            x.denom() * BigInt::from(k),
            x.radicand().clone(),
        ).unwrap();
        prop_assert_eq!(&y, &x);
        prop_assert_eq!(qn_compare(&y, &x), Ordering::Equal);
    }

    #[test]
    fn comparison_is_antisymmetric_and_matches_floats(x in surd(), y in surd()) {
        let ord = qn_compare(&x, &y);
        prop_assert_eq!(ord, qn_compare(&y, &x).reverse());
        // the float approximations must not contradict a decisive exact
        // comparison by more than rounding noise
        let (fx, fy) = (x.to_f64(), y.to_f64());
        match ord {
            Ordering::Less => prop_assert!(fx <= fy + 1e-9),
            Ordering::Greater => prop_assert!(fx + 1e-9 >= fy),
            Ordering::Equal => prop_assert!((fx - fy).abs() < 1e-9),
        }
    }

    #[test]
    fn mobius_composition(x in surd(), entries in prop::array::uniform8(-9i64..=9)) {
        let m1 = MobiusMatrix::new(entries[0], entries[1], entries[2], entries[3]);
        let m2 = MobiusMatrix::new(entries[4], entries[5], entries[6], entries[7]);
        prop_assert_eq!(m1.mul(&m2).det(), m1.det() * m2.det());
        let inner = m2.apply(&x);
        let outer = inner.as_ref().ok().and_then(|v| m1.apply(v).ok());
        let combined = m1.mul(&m2).apply(&x);
        if let (Some(a), Ok(b)) = (outer, combined) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn alt_order_matches_value_order(len in 1usize..=8, seed in prop::collection::vec((1u64..=9, 1u64..=9), 8)) {
        let s = pq(seed.iter().take(len).map(|p| p.0).collect());
        let t = pq(seed.iter().take(len).map(|p| p.1).collect());
        let by_string = alt_compare(&s, &t).unwrap();
        let by_value = cf_value(&s).cmp(&cf_value(&t));
        prop_assert_eq!(by_string, by_value);
    }

    #[test]
    fn periodic_compare_matches_surds(s in string(6), t in string(6)) {
        let by_string = periodic_compare(&s, &t);
        let by_value = qn_compare(&surd_of_periodic(&s).unwrap(), &surd_of_periodic(&t).unwrap());
        prop_assert_eq!(by_string, by_value);
    }

    #[test]
    fn common_period_means_equal_surds(p in string(3), reps in 1usize..=3) {
        let s = p.repeated(reps).unwrap();
        let t = p.repeated(reps + 1).unwrap();
        prop_assert_eq!(periodic_compare(&s, &t), Ordering::Equal);
        prop_assert_eq!(surd_of_periodic(&s).unwrap(), surd_of_periodic(&t).unwrap());
    }

    #[test]
    fn twin_preserves_value_and_flips_parity(s in string(8)) {
        let t = twin(&s);
        prop_assert_eq!(cf_value(&t), cf_value(&s));
        if s.digits() != [1] {
            prop_assert_eq!((s.len() + t.len()) % 2, 1);
            prop_assert_eq!(twin(&t), s);
        }
    }

    #[test]
    fn expand_value_round_trip(p in 1u64..=400, q in 1u64..=400) {
        prop_assume!(p <= q);
        let r = BigRational::new(BigInt::from(p), BigInt::from(q));
        let tw = cf_expand(&r).unwrap();
        prop_assert_eq!(cf_value(tw.even()), r.clone());
        prop_assert_eq!(cf_value(tw.odd()), r.clone());
        if !tw.is_unit() {
            // exactly one of the twins ends in a digit >= 2
            prop_assert!((tw.even().last() >= 2) != (tw.odd().last() >= 2));
        }
    }

    #[test]
    fn power_sequence_orders_around_surd(s in string(4), kmax in 2usize..=4) {
        let surd = surd_of_periodic(&s).unwrap();
        let values: Vec<BigRational> =
            (1..=kmax).map(|k| cf_value(&s.repeated(k).unwrap())).collect();
        let as_qn: Vec<QuadraticNumber> =
            values.iter().map(QuadraticNumber::from_rational).collect();
        if s.len() % 2 == 0 {
            // even period: the finite values increase toward the surd
            for w in values.windows(2) {
                prop_assert!(w[0] < w[1]);
            }
            for v in &as_qn {
                prop_assert_eq!(qn_compare(v, &surd), Ordering::Less);
            }
        } else {
            // odd period: odd powers sit above the surd, even powers below
            for (i, v) in as_qn.iter().enumerate() {
                let expected = if (i + 1) % 2 == 1 { Ordering::Greater } else { Ordering::Less };
                prop_assert_eq!(qn_compare(v, &surd), expected);
            }
            // the surd always lies strictly between consecutive powers
            for w in as_qn.windows(2) {
                let lo = qn_compare(&w[0], &surd);
                let hi = qn_compare(&w[1], &surd);
                prop_assert_eq!(lo, hi.reverse());
            }
        }
    }
}
