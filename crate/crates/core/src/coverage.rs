//! Certified coverage bounds for bisection outcomes.
//!
//! Interval lengths are sums of surd differences across distinct quadratic
//! fields, so they are reported as rational enclosures obtained from
//! directed-rounding endpoint approximations rather than as exact values.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::bisection::bisection_enumerate;
use crate::error::Result;
use crate::intervals::ParamRange;
use crate::quadratic::QuadraticNumber;

/// Coverage of a range by the enumerated intervals at one denominator
/// bound: certified lower/upper bounds for the covered length and for the
/// residual (uncovered) length.
#[derive(Clone, Debug)]
pub struct CoverageRow {
    pub den_max: u64,
    pub interval_count: usize,
    pub covered_lo: BigRational,
    pub covered_hi: BigRational,
    pub residual_lo: BigRational,
    pub residual_hi: BigRational,
}

impl CoverageRow {
    /// Guaranteed bound on the width of the covered-length enclosure.
    pub fn enclosure_width(&self) -> BigRational {
        &self.covered_hi - &self.covered_lo
    }
}

fn max_q(a: &QuadraticNumber, b: &QuadraticNumber) -> QuadraticNumber {
    if a.cmp(b) == Ordering::Less {
        b.clone()
    } else {
        a.clone()
    }
}

fn min_q(a: &QuadraticNumber, b: &QuadraticNumber) -> QuadraticNumber {
    if a.cmp(b) == Ordering::Greater {
        b.clone()
    } else {
        a.clone()
    }
}

/// Sums the lengths of the enumerated intervals clipped to the range, with
/// the covered-length enclosure certified to width below `10^-precision`.
pub fn coverage(range: &ParamRange, den_max: u64, precision: u32) -> Result<CoverageRow> {
    let outcome = bisection_enumerate(range, den_max)?;
    let count = outcome.intervals.len().max(1);
    // guard digits: each clipped interval contributes two endpoint
    // enclosures of width <= 10^-k each
    let guard = (4 * count + 4).to_string().len() as u32 + 1;
    let k = precision + guard;

    let mut covered_lo = BigRational::zero();
    let mut covered_hi = BigRational::zero();
    for iv in &outcome.intervals {
        let lo_end = max_q(iv.left(), range.lo());
        let hi_end = min_q(iv.right(), range.hi());
        if lo_end.cmp(&hi_end) != Ordering::Less {
            continue;
        }
        let (a_lo, a_hi) = lo_end.enclosure(k);
        let (b_lo, b_hi) = hi_end.enclosure(k);
        let term_lo = &b_lo - &a_hi;
        let term_lo = if term_lo.is_negative() { BigRational::zero() } else { term_lo };
        covered_lo += term_lo;
        covered_hi += &b_hi - &a_lo;
    }
    let (r_lo, r_hi) = {
        let (lo_lo, lo_hi) = range.lo().enclosure(k);
        let (hi_lo, hi_hi) = range.hi().enclosure(k);
        (&hi_lo - &lo_hi, &hi_hi - &lo_lo)
    };
    let residual_lo = {
        let v = &r_lo - &covered_hi;
        if v.is_negative() {
            BigRational::zero()
        } else {
            v
        }
    };
    let residual_hi = {
        let v = &r_hi - &covered_lo;
        if v.is_negative() {
            BigRational::zero()
        } else {
            v
        }
    };
    let row = CoverageRow {
        den_max,
        interval_count: outcome.intervals.len(),
        covered_lo,
        covered_hi,
        residual_lo,
        residual_hi,
    };
    let tol = BigRational::new(BigInt::from(1), BigInt::from(10u32).pow(precision));
    assert!(row.enclosure_width() <= tol, "coverage enclosure exceeded requested precision");
    Ok(row)
}

/// Decimal rendering of a rational, truncated toward zero at `digits`
/// fractional digits.
pub fn decimal_string(r: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (r * BigRational::from(scale.clone())).trunc().to_integer();
    let neg = scaled.is_negative();
    let abs = scaled.abs();
    let (int_part, frac_part) = num_integer::Integer::div_rem(&abs, &scale);
    let frac_str = format!("{:0>width$}", frac_part.to_string(), width = digits as usize);
    format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac_str)
}

/// Midpoint of an enclosure as f64 (for display only).
pub fn enclosure_midpoint_f64(lo: &BigRational, hi: &BigRational) -> f64 {
    ((lo + hi) / BigRational::from(BigInt::from(2))).to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn unit_interval_coverage() {
        // on ((sqrt(5)-1)/2, 1] the covered length is 1 - (sqrt(5)-1)/2
        let range =
            ParamRange::new(QuadraticNumber::golden(), QuadraticNumber::one()).unwrap();
        let row = coverage(&range, 10, 6).unwrap();
        assert_eq!(row.interval_count, 1);
        let mid = enclosure_midpoint_f64(&row.covered_lo, &row.covered_hi);
        assert!((mid - 0.381_966_011).abs() < 1e-6);
    }

    #[test]
    fn two_interval_coverage() {
        // on (0.4, 1] with shallow bisection: unit interval plus I_{1/2},
        // total length 1 - (sqrt(2)-1)
        let range = ParamRange::from_rationals(&rat(2, 5), &BigRational::one()).unwrap();
        let row = coverage(&range, 2, 6).unwrap();
        let mid = enclosure_midpoint_f64(&row.covered_lo, &row.covered_hi);
        assert!((mid - 0.585_786_437).abs() < 1e-6, "got {mid}");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&rat(1, 3), 6), "0.333333");
        assert_eq!(decimal_string(&rat(-1, 2), 3), "-0.500");
        assert_eq!(decimal_string(&rat(7, 1), 2), "7.00");
    }
}
