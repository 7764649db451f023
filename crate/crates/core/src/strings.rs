//! Finite strings of partial quotients, twin expansions, the alternating
//! lexicographic order, and the cyclic maximality criterion.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::mobius::{MobiusMatrix, Sign};
use crate::quadratic::QuadraticNumber;

/// A nonempty finite string of positive partial quotients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PQString {
    digits: Vec<u64>,
}

impl PQString {
    pub fn new(digits: Vec<u64>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::Domain("empty partial-quotient string".into()));
        }
        if digits.contains(&0) {
            return Err(Error::Domain("partial quotients must be positive".into()));
        }
        Ok(PQString { digits })
    }

    pub fn from_digits(digits: &[u64]) -> Result<Self> {
        PQString::new(digits.to_vec())
    }

    pub fn single(d: u64) -> Self {
        PQString::new(vec![d]).expect("positive digit")
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn last(&self) -> u64 {
        *self.digits.last().expect("nonempty")
    }

    pub fn concat(&self, other: &PQString) -> PQString {
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        PQString { digits }
    }

    pub fn repeated(&self, k: usize) -> Result<PQString> {
        if k == 0 {
            return Err(Error::Domain("cannot repeat a string zero times".into()));
        }
        let mut digits = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            digits.extend_from_slice(&self.digits);
        }
        Ok(PQString { digits })
    }

    pub fn rotate_left(&self, k: usize) -> PQString {
        let k = k % self.len();
        let mut digits = self.digits[k..].to_vec();
        digits.extend_from_slice(&self.digits[..k]);
        PQString { digits }
    }

    /// The string with its last digit incremented; `[0; inc_last(S)] = [0; S, 1]`.
    pub fn inc_last(&self) -> PQString {
        let mut digits = self.digits.clone();
        *digits.last_mut().expect("nonempty") += 1;
        PQString { digits }
    }

    pub fn prefix(&self, len: usize) -> Result<PQString> {
        if len == 0 || len > self.len() {
            return Err(Error::Domain(format!("invalid prefix length {len}")));
        }
        PQString::new(self.digits[..len].to_vec())
    }

    /// Length of the smallest period `p` such that the string is a power of
    /// its first `p` digits.
    pub fn smallest_period(&self) -> usize {
        let n = self.len();
        'outer: for p in 1..=n {
            if !n.is_multiple_of(p) {
                continue;
            }
            for i in p..n {
                if self.digits[i] != self.digits[i - p] {
                    continue 'outer;
                }
            }
            return p;
        }
        n
    }

    /// Infinite periodic digit stream generated by this string.
    pub fn cycle(&self) -> impl Iterator<Item = u64> + '_ {
        self.digits.iter().copied().cycle()
    }

    /// Rendering of the periodic continued fraction this string generates,
    /// e.g. `per[2,1]` for `[0; 2,1,2,1,...]`.
    pub fn periodic_notation(&self) -> String {
        format!("per{self}")
    }
}

impl fmt::Display for PQString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for PQString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Domain(format!("expected [a1,a2,...], got {s:?}")))?;
        let digits: Vec<u64> = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Domain(format!("bad digit {t:?}")))
            })
            .collect::<Result<_>>()?;
        PQString::new(digits)
    }
}

/// The two finite continued-fraction expansions of a rational in `(0, 1]`.
///
/// For every rational except 1 these have opposite parities and differ by
/// splitting the last digit (`a_n = a_n - 1, 1`). The rational 1 has the
/// single expansion `[1]`, stored in both slots and flagged by `is_unit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinExpansion {
    even: PQString,
    odd: PQString,
    unit: bool,
}

impl TwinExpansion {
    pub fn even(&self) -> &PQString {
        &self.even
    }

    pub fn odd(&self) -> &PQString {
        &self.odd
    }

    pub fn is_unit(&self) -> bool {
        self.unit
    }

    /// The expansion ending in a digit >= 2 (the Euclidean one); `[1]` for 1.
    pub fn canonical(&self) -> &PQString {
        if self.unit || self.even.last() >= 2 {
            &self.even
        } else {
            &self.odd
        }
    }
}

/// Both continued-fraction expansions of `r` in `(0, 1]`.
pub fn cf_expand(r: &BigRational) -> Result<TwinExpansion> {
    if !r.is_positive() || r > &BigRational::one() {
        return Err(Error::Domain(format!("{r} is outside (0, 1]")));
    }
    if r == &BigRational::one() {
        let one = PQString::single(1);
        return Ok(TwinExpansion { even: one.clone(), odd: one, unit: true });
    }
    // Euclidean expansion of p/q with 0 < p < q; the last digit is >= 2.
    let mut p = r.numer().clone();
    let mut q = r.denom().clone();
    let mut digits = Vec::new();
    while !p.is_zero() {
        let (d, rem) = num_integer::Integer::div_rem(&q, &p);
        digits.push(d.to_u64().ok_or(Error::DigitOverflow)?);
        q = p;
        p = rem;
    }
    let canonical = PQString::new(digits)?;
    let other = twin(&canonical);
    let (even, odd) = if canonical.len() % 2 == 0 {
        (canonical, other)
    } else {
        (other, canonical)
    };
    debug_assert_eq!(even.len() % 2, 0);
    debug_assert_eq!(odd.len() % 2, 1);
    Ok(TwinExpansion { even, odd, unit: false })
}

/// The Mobius matrix of a string: the product of its digit matrices. Its
/// columns are the last two convergents of `[0; S]`.
pub fn string_matrix(s: &PQString) -> MobiusMatrix {
    let mut m = MobiusMatrix::identity();
    for d in s.digits() {
        m = m.mul(&MobiusMatrix::digit(Sign::Pos, &BigInt::from(*d)));
    }
    m
}

/// Exact value of the finite continued fraction `[0; S]`.
pub fn cf_value(s: &PQString) -> BigRational {
    let m = string_matrix(s);
    BigRational::new(m.p12, m.p22)
}

/// The other expansion of the same rational: split or merge the trailing 1.
/// By convention `twin([1]) = [1]` (the degenerate case).
pub fn twin(s: &PQString) -> PQString {
    let digits = s.digits();
    if digits == [1] {
        return s.clone();
    }
    let mut out = digits.to_vec();
    if s.last() >= 2 {
        *out.last_mut().unwrap() -= 1;
        out.push(1);
    } else {
        out.pop();
        *out.last_mut().unwrap() += 1;
    }
    PQString::new(out).expect("twin of a valid string is valid")
}

/// Alternating lexicographic order on equal-length strings: at the first
/// differing position (1-based), even positions order by digit ascending and
/// odd positions by digit descending. Matches the order of the cf values.
pub fn alt_compare(s: &PQString, t: &PQString) -> Result<Ordering> {
    if s.len() != t.len() {
        return Err(Error::LengthMismatch(s.len(), t.len()));
    }
    Ok(alt_compare_slices(s.digits(), t.digits()))
}

fn alt_compare_slices(s: &[u64], t: &[u64]) -> Ordering {
    for (i, (a, b)) in s.iter().zip(t.iter()).enumerate() {
        if a != b {
            // position i+1 in 1-based indexing
            return if (i + 1) % 2 == 0 { a.cmp(b) } else { b.cmp(a) };
        }
    }
    Ordering::Equal
}

/// Exact order of the purely periodic values `[0; S repeated]` versus
/// `[0; T repeated]`, decided by comparing the equal-length strings `ST`
/// and `TS`. Equality holds exactly when `ST = TS` (a common period).
pub fn periodic_compare(s: &PQString, t: &PQString) -> Ordering {
    let st = s.concat(t);
    let ts = t.concat(s);
    alt_compare_slices(st.digits(), ts.digits())
}

/// The purely periodic quadratic surd `x = [0; S repeated]`: the positive
/// root of `q21 x^2 + (q22 - q11) x - q12 = 0` for the string's matrix.
pub fn surd_of_periodic(s: &PQString) -> Result<QuadraticNumber> {
    let m = string_matrix(s);
    // x = [0; S + x] means x = (p11 x + p12)/(p21 x + p22)
    let two_q = BigInt::from(2) * &m.p21;
    let lin = &m.p22 - &m.p11;
    let delta = &lin * &lin + BigInt::from(4) * &m.p21 * &m.p12;
    let x = QuadraticNumber::new(-lin, BigInt::one(), two_q, delta)?;
    debug_assert!(x.signum() == Ordering::Greater && x < QuadraticNumber::one());
    Ok(x)
}

/// Whether `[0; A]` generates a maximal quadratic interval.
///
/// Scans every split `A = ST` into nonempty pieces: the rotated string `TS`
/// must be strictly larger in the alternating order, except for the exact
/// doubling case `A = SS` with `|S|` odd, where equality is allowed.
pub fn is_maximal_string(a: &PQString) -> bool {
    let n = a.len();
    for k in 1..n {
        let rotated = a.rotate_left(k);
        match alt_compare_slices(a.digits(), rotated.digits()) {
            Ordering::Less => {}
            Ordering::Greater => return false,
            Ordering::Equal => {
                // Equality with n = 2k forces the two halves to coincide;
                // allowed only when the repeated half has odd length.
                if !(n == 2 * k && k % 2 == 1) {
                    return false;
                }
            }
        }
    }
    true
}
