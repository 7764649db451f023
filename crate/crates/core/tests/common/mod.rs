#![allow(dead_code)]

//! Shared brute-force oracles for the integration suites. These are kept
//! independent of the decision procedures they validate: maximality is
//! decided here by raw interval containment, and pseudocenters by direct
//! denominator scans.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use alphacf::intervals::{interval_of, QuadraticInterval};
use alphacf::QuadraticNumber;

/// All reduced fractions in `(0, 1]` with denominator at most `max_den`,
/// sorted ascending.
pub fn farey(max_den: u64) -> Vec<BigRational> {
    let mut out = Vec::new();
    for q in 1..=max_den {
        for p in 1..=q {
            if num_integer::gcd(p, q) == 1 {
                out.push(BigRational::new(BigInt::from(p), BigInt::from(q)));
            }
        }
    }
    out.sort();
    out
}

pub struct ContainmentOracle {
    pub rationals: Vec<BigRational>,
    pub intervals: Vec<QuadraticInterval>,
    /// `true` when no interval of smaller denominator contains this one.
    pub maximal: Vec<bool>,
}

/// Brute-force maximality: an interval is maximal iff no interval generated
/// by a rational of smaller denominator contains it. Candidate pairs are
/// found by locating, for every `b`, all rationals lying strictly inside
/// the interval of `b` (a containment `I_a` inside `I_b` forces `a` there),
/// then checking full containment exactly.
pub fn containment_oracle(max_den: u64) -> ContainmentOracle {
    let rationals = farey(max_den);
    let intervals: Vec<QuadraticInterval> =
        rationals.iter().map(|r| interval_of(r).unwrap()).collect();
    let mut covered = vec![false; rationals.len()];
    for (j, outer) in intervals.iter().enumerate() {
        let den_b = rationals[j].denom().clone();
        let lo = rationals.partition_point(|r| {
            QuadraticNumber::from_rational(r).cmp(outer.left()) != std::cmp::Ordering::Greater
        });
        let hi = rationals.partition_point(|r| {
            QuadraticNumber::from_rational(r).cmp(outer.right()) == std::cmp::Ordering::Less
        });
        for i in lo..hi {
            if i == j || rationals[i].denom() <= &den_b {
                continue;
            }
            if outer.contains_interval(&intervals[i]) {
                covered[i] = true;
            }
        }
    }
    let maximal = covered.iter().map(|c| !c).collect();
    ContainmentOracle { rationals, intervals, maximal }
}

/// Minimal-denominator rational strictly inside `(lo, hi)` by direct scan
/// over denominators, verifying membership exactly.
pub fn brute_pseudocenter(lo: &QuadraticNumber, hi: &QuadraticNumber) -> BigRational {
    let lo_f = lo.to_f64();
    let hi_f = hi.to_f64();
    for q in 1u64..100_000 {
        let p_min = ((lo_f * q as f64).floor() as i64 - 1).max(0);
        let p_max = (hi_f * q as f64).ceil() as i64 + 1;
        let mut hits = Vec::new();
        for p in p_min..=p_max {
            if p <= 0 {
                continue;
            }
            let r = BigRational::new(BigInt::from(p), BigInt::from(q));
            // skip fractions that reduce to a smaller denominator
            if r.denom().to_u64() != Some(q) {
                continue;
            }
            let rq = QuadraticNumber::from_rational(&r);
            if lo.cmp(&rq) == std::cmp::Ordering::Less && rq.cmp(hi) == std::cmp::Ordering::Less {
                hits.push(r);
            }
        }
        if !hits.is_empty() {
            assert_eq!(hits.len(), 1, "pseudocenter must be unique at minimal denominator");
            return hits.pop().unwrap();
        }
    }
    panic!("no rational found inside the interval");
}

/// Whether `prefix` is a digit prefix of `s`.
pub fn is_prefix(prefix: &[u64], s: &[u64]) -> bool {
    prefix.len() <= s.len() && prefix.iter().zip(s).all(|(a, b)| a == b)
}
