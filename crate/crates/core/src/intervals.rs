//! Quadratic intervals: construction, maximality, containment, period
//! doubling, bounded-type classification, and the horocycle sandwich.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quadratic::QuadraticNumber;
use crate::strings::{cf_expand, cf_value, is_maximal_string, surd_of_periodic, PQString};

/// The open interval generated by a rational in `(0, 1]`: its endpoints are
/// the purely periodic surds of the two twin expansions, and the rational is
/// the unique minimal-denominator point inside. The generator 1 produces the
/// special half-open interval `((sqrt(5)-1)/2, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticInterval {
    pseudocenter: BigRational,
    even: PQString,
    odd: PQString,
    left: QuadraticNumber,
    right: QuadraticNumber,
    unit: bool,
}

impl QuadraticInterval {
    pub fn pseudocenter(&self) -> &BigRational {
        &self.pseudocenter
    }

    /// The even-length expansion of the pseudocenter (whose periodic surd is
    /// the right endpoint).
    pub fn even_string(&self) -> &PQString {
        &self.even
    }

    /// The odd-length expansion (whose periodic surd is the left endpoint).
    pub fn odd_string(&self) -> &PQString {
        &self.odd
    }

    pub fn left(&self) -> &QuadraticNumber {
        &self.left
    }

    pub fn right(&self) -> &QuadraticNumber {
        &self.right
    }

    /// Whether this is the special interval generated by 1 (right-closed).
    pub fn is_unit_interval(&self) -> bool {
        self.unit
    }

    pub fn contains(&self, x: &QuadraticNumber) -> bool {
        if self.left.cmp(x) != Ordering::Less {
            return false;
        }
        match x.cmp(&self.right) {
            Ordering::Less => true,
            Ordering::Equal => self.unit,
            Ordering::Greater => false,
        }
    }

    pub fn contains_rational(&self, r: &BigRational) -> bool {
        self.contains(&QuadraticNumber::from_rational(r))
    }

    /// Interval containment (not necessarily strict).
    pub fn contains_interval(&self, other: &QuadraticInterval) -> bool {
        self.left.cmp(&other.left) != Ordering::Greater
            && other.right.cmp(&self.right) != Ordering::Greater
    }

    /// Whether the interval meets the half-open range `(lo, hi]`.
    pub fn intersects(&self, range: &ParamRange) -> bool {
        self.left.cmp(&range.hi) == Ordering::Less && self.right.cmp(&range.lo) == Ordering::Greater
    }

    pub fn is_disjoint_from(&self, other: &QuadraticInterval) -> bool {
        self.right.cmp(&other.left) != Ordering::Greater
            || other.right.cmp(&self.left) != Ordering::Greater
    }
}

/// A half-open parameter window `(lo, hi]` inside `(0, 1]`. The bounds are
/// exact values, so windows delimited by quadratic surds are expressible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamRange {
    lo: QuadraticNumber,
    hi: QuadraticNumber,
}

impl ParamRange {
    pub fn new(lo: QuadraticNumber, hi: QuadraticNumber) -> Result<Self> {
        if lo.signum() != Ordering::Greater {
            return Err(Error::Domain("range lower bound must be positive".into()));
        }
        if hi.cmp(&QuadraticNumber::one()) == Ordering::Greater {
            return Err(Error::Domain("range upper bound must be at most 1".into()));
        }
        if lo.cmp(&hi) != Ordering::Less {
            return Err(Error::Domain("range lower bound must be below upper bound".into()));
        }
        Ok(ParamRange { lo, hi })
    }

    pub fn from_rationals(lo: &BigRational, hi: &BigRational) -> Result<Self> {
        ParamRange::new(QuadraticNumber::from_rational(lo), QuadraticNumber::from_rational(hi))
    }

    pub fn lo(&self) -> &QuadraticNumber {
        &self.lo
    }

    pub fn hi(&self) -> &QuadraticNumber {
        &self.hi
    }

    pub fn contains(&self, x: &QuadraticNumber) -> bool {
        self.lo.cmp(x) == Ordering::Less && x.cmp(&self.hi) != Ordering::Greater
    }
}

/// Builds the quadratic interval generated by `r` in `(0, 1]`.
pub fn interval_of(r: &BigRational) -> Result<QuadraticInterval> {
    let tw = cf_expand(r)?;
    if tw.is_unit() {
        return Ok(QuadraticInterval {
            pseudocenter: r.clone(),
            even: tw.even().clone(),
            odd: tw.odd().clone(),
            left: QuadraticNumber::golden(),
            right: QuadraticNumber::one(),
            unit: true,
        });
    }
    let left = surd_of_periodic(tw.odd())?;
    let right = surd_of_periodic(tw.even())?;
    let pc = QuadraticNumber::from_rational(r);
    assert!(
        left.cmp(&pc) == Ordering::Less && pc.cmp(&right) == Ordering::Less,
        "pseudocenter must sit strictly between the interval endpoints"
    );
    Ok(QuadraticInterval {
        pseudocenter: r.clone(),
        even: tw.even().clone(),
        odd: tw.odd().clone(),
        left,
        right,
        unit: false,
    })
}

/// Whether `r` generates a maximal quadratic interval. The cyclic string
/// test is evaluated on both twin expansions, which must agree.
pub fn is_maximal(r: &BigRational) -> Result<bool> {
    let tw = cf_expand(r)?;
    if tw.is_unit() {
        return Ok(true);
    }
    let even_verdict = is_maximal_string(tw.even());
    let odd_verdict = is_maximal_string(tw.odd());
    assert_eq!(
        even_verdict, odd_verdict,
        "the maximality test must agree on both expansions of {r}"
    );
    Ok(even_verdict)
}

/// The unique maximal quadratic interval containing the interval of `r`.
///
/// Candidate containers are generated from the prefixes of both expansions
/// of `r` (every container's pseudocenter is a convergent of `r`), filtered
/// by exact interval containment and by maximality.
pub fn maximal_container(r: &BigRational) -> Result<QuadraticInterval> {
    let target = interval_of(r)?;
    let tw = cf_expand(r)?;
    let mut candidates: Vec<BigRational> = Vec::new();
    for s in [tw.even(), tw.odd()] {
        for len in 1..=s.len() {
            let value = cf_value(&s.prefix(len)?);
            if !candidates.contains(&value) {
                candidates.push(value);
            }
        }
    }
    let mut hits: Vec<QuadraticInterval> = Vec::new();
    for b in &candidates {
        if !is_maximal(b)? {
            continue;
        }
        let candidate = interval_of(b)?;
        if candidate.contains_interval(&target) {
            hits.push(candidate);
        }
    }
    if hits.len() != 1 {
        return Err(Error::Internal(format!(
            "expected exactly one maximal container for {r}, found {}",
            hits.len()
        )));
    }
    Ok(hits.into_iter().next().unwrap())
}

/// Minimal-denominator rational strictly inside the open interval
/// `(lo, hi)`, found by mediant descent on the Stern-Brocot tree.
pub fn pseudocenter_between(lo: &QuadraticNumber, hi: &QuadraticNumber) -> Result<BigRational> {
    if lo.cmp(hi) != Ordering::Less {
        return Err(Error::Domain("empty interval has no pseudocenter".into()));
    }
    if lo.signum() == Ordering::Less {
        return Err(Error::Domain("pseudocenter search requires a positive interval".into()));
    }
    let (mut ln, mut ld) = (BigInt::zero(), BigInt::one());
    let (mut rn, mut rd) = (BigInt::one(), BigInt::zero());
    loop {
        let mn = &ln + &rn;
        let md = &ld + &rd;
        let m = QuadraticNumber::from_rational(&BigRational::new(mn.clone(), md.clone()));
        if m.cmp(lo) != Ordering::Greater {
            ln = mn;
            ld = md;
        } else if m.cmp(hi) != Ordering::Less {
            rn = mn;
            rd = md;
        } else {
            return Ok(BigRational::new(mn, md));
        }
    }
}

/// The pseudocenter of the next interval in the period-doubling chain:
/// the value of the odd expansion concatenated with itself. Requires a
/// maximal input; the output is again maximal and its interval shares the
/// input interval's left endpoint.
pub fn period_double(r: &BigRational) -> Result<BigRational> {
    if !is_maximal(r)? {
        return Err(Error::NotMaximal(r.clone()));
    }
    let tw = cf_expand(r)?;
    let doubled = tw.odd().concat(tw.odd());
    let out = cf_value(&doubled);
    assert!(
        is_maximal_string(&doubled),
        "period doubling of a maximal pseudocenter must stay maximal"
    );
    Ok(out)
}

/// A chain of adjacent intervals produced by iterated period doubling,
/// together with an exact rational bracket for the chain's limit point.
#[derive(Clone, Debug)]
pub struct DoublingChain {
    pub intervals: Vec<QuadraticInterval>,
    pub limit_lo: BigRational,
    pub limit_hi: BigRational,
}

/// Iterates [`period_double`] `depth - 1` times starting from `r`.
///
/// Consecutive intervals share exactly one endpoint (checked exactly). The
/// limit bracket comes from the digit cylinder of the next odd expansion
/// beyond the chain: every later pseudocenter extends that digit prefix.
pub fn doubling_chain(r: &BigRational, depth: usize) -> Result<DoublingChain> {
    if depth == 0 {
        return Err(Error::Domain("doubling chain depth must be at least 1".into()));
    }
    let mut pseudocenters = vec![r.clone()];
    for _ in 1..depth {
        let next = period_double(pseudocenters.last().unwrap())?;
        pseudocenters.push(next);
    }
    let mut intervals = Vec::with_capacity(depth);
    for pc in &pseudocenters {
        intervals.push(interval_of(pc)?);
    }
    for pair in intervals.windows(2) {
        assert_eq!(
            pair[1].right(),
            pair[0].left(),
            "consecutive doubling intervals must share an endpoint"
        );
        assert_ne!(pair[1].left(), pair[0].right(), "chain intervals meet in one point only");
    }
    // Digit prefix stabilization: the odd expansion of the next pseudocenter
    // is a prefix of every later one, so the limit lies strictly inside its
    // cylinder, between [0; B, 1] and [0; B].
    let beyond = period_double(pseudocenters.last().unwrap())?;
    let b = cf_expand(&beyond)?.odd().clone();
    let hi = cf_value(&b);
    let lo = cf_value(&b.inc_last());
    assert!(lo < hi);
    let last = intervals.last().unwrap();
    let shifted = QuadraticNumber::from_rational(&(&hi - &lo)).add(last.left());
    assert!(
        shifted.cmp(last.right()) == Ordering::Less,
        "limit bracket must be narrower than the last interval"
    );
    Ok(DoublingChain { intervals, limit_lo: lo, limit_hi: hi })
}

/// Verdict of the bounded-type test on a digit prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedTypeVerdict {
    /// Some digit exceeds the first digit: the number lies inside the
    /// quadratic interval generated by the witness rational.
    Violates { witness: BigRational },
    /// All later digits stay strictly below the first digit: the number is
    /// in no quadratic interval.
    Safe,
    /// Some digit equals the first digit and none exceeds it.
    Undecided,
}

/// Classifies a digit prefix against the bounded-type criteria: digits above
/// the first digit certify membership in a quadratic interval; digits all
/// strictly below it certify avoidance of every quadratic interval.
pub fn bounded_type_check(prefix: &PQString) -> BoundedTypeVerdict {
    let digits = prefix.digits();
    let a1 = digits[0];
    for (i, &d) in digits.iter().enumerate().skip(1) {
        if d > a1 {
            let witness = cf_value(&prefix.prefix(i).expect("nonempty strict prefix"));
            return BoundedTypeVerdict::Violates { witness };
        }
    }
    if digits.iter().skip(1).all(|&d| d < a1) {
        BoundedTypeVerdict::Safe
    } else {
        BoundedTypeVerdict::Undecided
    }
}

/// Checks the two-sided ball sandwich around `p/q` in the band
/// `(1/(n+1), 1/n)`: the ball of radius `1/((n+2) q^2)` must sit inside the
/// interval of `p/q`, which must sit inside the ball of radius
/// `1/((n-1) q^2)`. All four endpoint comparisons are exact.
pub fn horocycle_bounds_check(r: &BigRational, n: u64) -> Result<bool> {
    if n < 2 {
        return Err(Error::Domain("band index must be at least 2".into()));
    }
    let lo = BigRational::new(BigInt::one(), BigInt::from(n + 1));
    let hi = BigRational::new(BigInt::one(), BigInt::from(n));
    if !(r > &lo && r < &hi) {
        return Err(Error::Domain(format!("{r} is not strictly inside (1/{}, 1/{n})", n + 1)));
    }
    let interval = interval_of(r)?;
    let q2 = r.denom() * r.denom();
    let inner = BigRational::new(BigInt::one(), BigInt::from(n + 2) * &q2);
    let outer = BigRational::new(BigInt::one(), BigInt::from(n - 1) * &q2);
    let qn = |v: BigRational| QuadraticNumber::from_rational(&v);
    let inner_ok = interval.left().cmp(&qn(r - &inner)) != Ordering::Greater
        && qn(r + &inner).cmp(interval.right()) != Ordering::Greater;
    let outer_ok = qn(r - &outer).cmp(interval.left()) != Ordering::Greater
        && interval.right().cmp(&qn(r + &outer)) != Ordering::Greater;
    Ok(inner_ok && outer_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadratic::qn_compare;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn pq(digits: &[u64]) -> PQString {
        PQString::from_digits(digits).unwrap()
    }

    #[test]
    fn interval_of_one_third() {
        let iv = interval_of(&rat(1, 3)).unwrap();
        assert_eq!(iv.left().to_string(), "(-3+1*sqrt(13))/2");
        assert_eq!(iv.right().to_string(), "(-1+1*sqrt(3))/2");
        assert_eq!(iv.odd_string(), &pq(&[3]));
        assert_eq!(iv.even_string(), &pq(&[2, 1]));
        assert!(!iv.is_unit_interval());
    }

    #[test]
    fn interval_of_unit() {
        let iv = interval_of(&rat(1, 1)).unwrap();
        assert!(iv.is_unit_interval());
        assert_eq!(iv.left(), &QuadraticNumber::golden());
        assert_eq!(iv.right(), &QuadraticNumber::one());
        // right-closed: contains 1, open at the left endpoint
        assert!(iv.contains(&QuadraticNumber::one()));
        assert!(!iv.contains(&QuadraticNumber::golden()));
    }

    #[test]
    fn interval_of_one_half() {
        let iv = interval_of(&rat(1, 2)).unwrap();
        assert_eq!(iv.left().to_string(), "(-1+1*sqrt(2))/1");
        assert_eq!(iv.right(), &QuadraticNumber::golden());
    }

    #[test]
    fn interval_rejects_out_of_domain() {
        assert!(interval_of(&rat(0, 1)).is_err());
        assert!(interval_of(&rat(5, 4)).is_err());
    }

    #[test]
    fn maximality_examples() {
        assert!(is_maximal(&rat(1, 3)).unwrap());
        assert!(!is_maximal(&rat(2, 3)).unwrap());
        for n in 1..=20 {
            assert!(is_maximal(&rat(1, n)).unwrap(), "1/{n} must be maximal");
        }
    }

    #[test]
    fn container_examples() {
        // 2/3 sits inside the unit interval
        let c = maximal_container(&rat(2, 3)).unwrap();
        assert!(c.is_unit_interval());
        // a maximal rational is its own container
        let c = maximal_container(&rat(1, 3)).unwrap();
        assert_eq!(c.pseudocenter(), &rat(1, 3));
        // deeper examples, both with expansions starting with digit 1
        let c = maximal_container(&rat(8, 11)).unwrap();
        assert!(c.is_unit_interval());
        let c = maximal_container(&rat(7, 10)).unwrap();
        assert!(c.is_unit_interval());
    }

    #[test]
    fn pseudocenter_of_decimal_interval() {
        let lo = QuadraticNumber::from_rational(&rat(3, 10));
        let hi = QuadraticNumber::from_rational(&rat(2, 5));
        assert_eq!(pseudocenter_between(&lo, &hi).unwrap(), rat(1, 3));
    }

    #[test]
    fn pseudocenter_between_surds() {
        // gap between [0; 2,1 repeated] and [0; 2 repeated]
        let lo = surd_of_periodic(&pq(&[2, 1])).unwrap();
        let hi = surd_of_periodic(&pq(&[2])).unwrap();
        assert_eq!(pseudocenter_between(&lo, &hi).unwrap(), rat(2, 5));
    }

    #[test]
    fn period_double_examples() {
        assert_eq!(period_double(&rat(1, 2)).unwrap(), rat(2, 5));
        assert_eq!(period_double(&rat(1, 3)).unwrap(), rat(3, 10));
        // the doubled string of 2/5 is [2,1,1,2,1,1], whose value is 12/31
        assert_eq!(period_double(&rat(2, 5)).unwrap(), rat(12, 31));
        assert!(matches!(period_double(&rat(2, 3)), Err(Error::NotMaximal(_))));
    }

    #[test]
    fn doubling_chain_from_one_half() {
        let chain = doubling_chain(&rat(1, 2), 3).unwrap();
        let pcs: Vec<_> = chain.intervals.iter().map(|iv| iv.pseudocenter().clone()).collect();
        assert_eq!(pcs, vec![rat(1, 2), rat(2, 5), rat(12, 31)]);
        // adjacency: right endpoint of the second equals left endpoint of the first
        assert_eq!(chain.intervals[1].right(), chain.intervals[0].left());
        assert_eq!(chain.intervals[1].right().to_string(), "(-1+1*sqrt(2))/1");
        // the bracket pins the limit below every chain pseudocenter
        assert!(chain.limit_hi < rat(12, 31));
        assert!(chain.limit_lo < chain.limit_hi);
        // bracket width is below the last interval's length
        let width = &chain.limit_hi - &chain.limit_lo;
        let last = &chain.intervals[2];
        let shifted = QuadraticNumber::from_rational(&width).add(last.left());
        assert_eq!(qn_compare(&shifted, last.right()), Ordering::Less);
    }

    #[test]
    fn doubling_chain_depth_one() {
        let chain = doubling_chain(&rat(1, 3), 1).unwrap();
        assert_eq!(chain.intervals.len(), 1);
        assert_eq!(chain.intervals[0].pseudocenter(), &rat(1, 3));
    }

    #[test]
    fn bounded_type_examples() {
        assert_eq!(
            bounded_type_check(&pq(&[2, 3, 1])),
            BoundedTypeVerdict::Violates { witness: rat(1, 2) }
        );
        assert_eq!(bounded_type_check(&pq(&[3, 2, 2, 2])), BoundedTypeVerdict::Safe);
        assert_eq!(bounded_type_check(&pq(&[2, 2, 2])), BoundedTypeVerdict::Undecided);
    }

    #[test]
    fn horocycle_example() {
        // 2/5 lies in (1/3, 1/2)
        assert!(horocycle_bounds_check(&rat(2, 5), 2).unwrap());
        // 1/3 is a band endpoint, not strictly inside (1/4, 1/3)
        assert!(horocycle_bounds_check(&rat(1, 3), 3).is_err());
    }

    #[test]
    fn interval_membership_and_intersection() {
        let iv = interval_of(&rat(1, 3)).unwrap();
        assert!(iv.contains_rational(&rat(1, 3)));
        assert!(iv.contains_rational(&rat(7, 20)));
        assert!(!iv.contains_rational(&rat(2, 5)));
        let range = ParamRange::from_rationals(&rat(3, 10), &rat(7, 10)).unwrap();
        assert!(iv.intersects(&range));
        let high = ParamRange::from_rationals(&rat(2, 5), &rat(7, 10)).unwrap();
        assert!(!interval_of(&rat(1, 4)).unwrap().intersects(&high));
    }
}
