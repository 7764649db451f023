//! Exact elements of real quadratic fields.
//!
//! A [`QuadraticNumber`] stores `(a + b*sqrt(d))/c` with arbitrary-precision
//! integer coefficients in a unique canonical form, so that equality is
//! structural and every comparison is decided by integer sign analysis —
//! no floating point enters any predicate.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial-division bound for extracting the square part of a radicand.
/// Radicands whose factorization cannot be settled below this bound are
/// rejected rather than silently mis-reduced.
pub const SQUAREFREE_BOUND: u64 = 1_000_000;

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = SQUAREFREE_BOUND as usize + 1;
        let mut sieve = vec![true; n];
        let mut out = Vec::new();
        for p in 2..n {
            if sieve[p] {
                out.push(p as u64);
                let mut q = p * p;
                while q < n {
                    sieve[q] = false;
                    q += p;
                }
            }
        }
        out
    })
}

fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

fn is_square_u64(m: u64) -> Option<u64> {
    let s = (m as f64).sqrt() as u64;
    (s.saturating_sub(1)..=s + 1).find(|&c| c.checked_mul(c) == Some(m))
}

fn squarefree_split_u64(mut m: u64) -> Option<(u64, u64)> {
    let mut square: u64 = 1;
    let mut free: u64 = 1;
    for &p in primes() {
        if p * p * p > m {
            if let Some(s) = is_square_u64(m) {
                return Some((square * s, free));
            }
            return Some((square, free * m));
        }
        let p2 = p * p;
        while m.is_multiple_of(p2) {
            m /= p2;
            square *= p;
        }
        if m.is_multiple_of(p) {
            m /= p;
            free *= p;
        }
    }
    if let Some(s) = is_square_u64(m) {
        return Some((square * s, free));
    }
    None
}

/// Splits `d >= 0` as `s^2 * d0` with `d0` square-free.
///
/// Trial division only runs over primes `p` with `p^3 <= remaining`: after
/// removing all smaller primes, a remainder below the cube of the next
/// prime has at most two prime factors and is square-free unless it is a
/// perfect square. Radicands that would need primes beyond
/// [`SQUAREFREE_BOUND`] are rejected.
fn squarefree_split(d: &BigInt) -> Result<(BigInt, BigInt)> {
    if d.is_zero() {
        return Ok((BigInt::one(), BigInt::zero()));
    }
    if let Some(m64) = d.to_u64() {
        return squarefree_split_u64(m64)
            .map(|(s, f)| (BigInt::from(s), BigInt::from(f)))
            .ok_or_else(|| Error::SquarefreeBound(d.clone()));
    }
    let mut m = d.clone();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    for &p in primes() {
        let pb = BigInt::from(p);
        if &pb * &pb * &pb > m {
            if let Some(s) = is_perfect_square(&m) {
                square *= s;
                m = BigInt::one();
            }
            free *= m;
            return Ok((square, free));
        }
        let mut e = 0u32;
        loop {
            let (q, r) = m.div_rem(&pb);
            if r.is_zero() {
                m = q;
                e += 1;
            } else {
                break;
            }
        }
        for _ in 0..e / 2 {
            square *= &pb;
        }
        if e % 2 == 1 {
            free *= &pb;
        }
    }
    // The remaining cofactor still admits a prime cube below it; a prime
    // beyond the bound would be needed to settle its square part.
    if let Some(s) = is_perfect_square(&m) {
        square *= s;
        return Ok((square, free));
    }
    Err(Error::SquarefreeBound(d.clone()))
}

/// Sign of `u + v*sqrt(p)` where `p >= 0` (and `p` square-free when `v != 0`).
fn sign_one_radical(u: &BigInt, v: &BigInt, p: &BigInt) -> Ordering {
    if v.is_zero() {
        return u.cmp(&BigInt::zero());
    }
    if u.is_zero() {
        return v.cmp(&BigInt::zero());
    }
    match (u.is_positive(), v.is_positive()) {
        (true, true) => Ordering::Greater,
        (false, false) => Ordering::Less,
        (true, false) => (u * u).cmp(&(v * v * p)),
        (false, true) => (v * v * p).cmp(&(u * u)),
    }
}

/// Sign of `u + v*sqrt(p) + w*sqrt(q)` with `p != q` square-free positive
/// non-squares wherever the matching coefficient is nonzero. Decided by
/// repeated squaring; the linear independence of `1, sqrt(p), sqrt(q)` over
/// the rationals makes every branch exact.
fn sign_two_radicals(u: &BigInt, v: &BigInt, p: &BigInt, w: &BigInt, q: &BigInt) -> Ordering {
    if v.is_zero() {
        return sign_one_radical(u, w, q);
    }
    if w.is_zero() {
        return sign_one_radical(u, v, p);
    }
    let left = sign_one_radical(u, v, p);
    let wsign = w.cmp(&BigInt::zero());
    match (left, wsign) {
        (Ordering::Equal, s) => s,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        (l, _) => {
            // Compare (u + v*sqrt(p))^2 against w^2 q; the square expands to
            // (u^2 + v^2 p) + 2uv*sqrt(p), a one-radical sign problem.
            let u2 = u * u + v * v * p - w * w * q;
            let v2 = BigInt::from(2) * u * v;
            let t = sign_one_radical(&u2, &v2, p);
            if l == Ordering::Greater {
                t
            } else {
                t.reverse()
            }
        }
    }
}

/// An exact element `(a + b*sqrt(d))/c` of a real quadratic field.
///
/// Canonical form: `c >= 1`, `gcd(a, b, c) = 1`, `d` square-free and not a
/// perfect square when `b != 0`, and `d = 0` when `b = 0` (the rational
/// case). Two values are numerically equal iff their fields are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl QuadraticNumber {
    /// Builds `(a + b*sqrt(d))/c` and canonicalizes.
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        if d.is_negative() && !b.is_zero() {
            return Err(Error::Domain("negative radicand".into()));
        }
        let (mut a, mut b, mut c) = (a, b, c);
        let mut d = if b.is_zero() { BigInt::zero() } else { d };
        if !b.is_zero() {
            let (s, d0) = squarefree_split(&d)?;
            b *= s;
            d = d0;
            if d.is_zero() {
                // sqrt(0) contributes nothing
                b = BigInt::zero();
            } else if d.is_one() {
                a += &b;
                b = BigInt::zero();
                d = BigInt::zero();
            }
        }
        if b.is_zero() {
            d = BigInt::zero();
        }
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        Ok(QuadraticNumber { a, b, c, d })
    }

    pub fn from_rational(r: &BigRational) -> Self {
        QuadraticNumber {
            a: r.numer().clone(),
            b: BigInt::zero(),
            c: r.denom().clone(),
            d: BigInt::zero(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        QuadraticNumber {
            a: BigInt::from(n),
            b: BigInt::zero(),
            c: BigInt::one(),
            d: BigInt::zero(),
        }
    }

    /// `sqrt(d)` as an exact value.
    pub fn sqrt(d: u64) -> Result<Self> {
        QuadraticNumber::new(BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::from(d))
    }

    /// `(sqrt(5) - 1) / 2`, the reciprocal golden ratio.
    pub fn golden() -> Self {
        QuadraticNumber::new(BigInt::from(-1), BigInt::one(), BigInt::from(2), BigInt::from(5))
            .expect("golden ratio is constructible")
    }

    pub fn zero() -> Self {
        QuadraticNumber::from_integer(0)
    }

    pub fn one() -> Self {
        QuadraticNumber::from_integer(1)
    }

    pub fn coeff_a(&self) -> &BigInt {
        &self.a
    }

    pub fn coeff_b(&self) -> &BigInt {
        &self.b
    }

    pub fn denom(&self) -> &BigInt {
        &self.c
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact rational value, when this element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(BigRational::new(self.a.clone(), self.c.clone()))
        } else {
            None
        }
    }

    /// Sign of the real value.
    pub fn signum(&self) -> Ordering {
        sign_one_radical(&self.a, &self.b, &self.d)
    }

    /// True when both operands live in one field (rationals embed anywhere).
    pub fn same_field(&self, other: &Self) -> bool {
        self.is_rational() || other.is_rational() || self.d == other.d
    }

    fn unified_d(&self, other: &Self) -> BigInt {
        if self.is_rational() {
            other.d.clone()
        } else {
            self.d.clone()
        }
    }

    fn check_field(&self, other: &Self) {
        assert!(
            self.same_field(other),
            "field mixing: sqrt({}) vs sqrt({})",
            self.d,
            other.d
        );
    }

    pub fn neg(&self) -> Self {
        QuadraticNumber {
            a: -&self.a,
            b: -&self.b,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    /// Exact sum; panics on field mixing (an internal invariant, callers
    /// validate fields once at the boundary).
    pub fn add(&self, other: &Self) -> Self {
        self.check_field(other);
        let d = self.unified_d(other);
        QuadraticNumber::new(
            &self.a * &other.c + &other.a * &self.c,
            &self.b * &other.c + &other.b * &self.c,
            &self.c * &other.c,
            d,
        )
        .expect("sum of canonical values is canonicalizable")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_field(other);
        let d = self.unified_d(other);
        QuadraticNumber::new(
            &self.a * &other.a + &self.b * &other.b * &d,
            &self.a * &other.b + &self.b * &other.a,
            &self.c * &other.c,
            d,
        )
        .expect("product of canonical values is canonicalizable")
    }

    /// Exact reciprocal, via the conjugate. Errors on zero.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Pole);
        }
        // 1 / ((a + b sqrt d)/c) = c (a - b sqrt d) / (a^2 - b^2 d)
        let norm = &self.a * &self.a - &self.b * &self.b * &self.d;
        QuadraticNumber::new(&self.c * &self.a, -(&self.c * &self.b), norm, self.d.clone())
    }

    pub fn add_rational(&self, r: &BigRational) -> Self {
        self.add(&QuadraticNumber::from_rational(r))
    }

    pub fn sub_int(&self, n: &BigInt) -> Self {
        QuadraticNumber {
            a: &self.a - n * &self.c,
            b: self.b.clone(),
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    /// Greatest integer `k <= self`, decided exactly.
    pub fn floor(&self) -> BigInt {
        let t = if self.b.is_zero() {
            BigInt::zero()
        } else if self.b.is_positive() {
            (&self.b * &self.b * &self.d).sqrt()
        } else {
            // b < 0: floor(b sqrt d) = -floor(|b| sqrt d) - 1, exact because
            // |b| sqrt(d) is irrational for canonical surds.
            -((&self.b * &self.b * &self.d).sqrt()) - 1
        };
        let k = (&self.a + t).div_floor(&self.c);
        debug_assert!({
            let kq = QuadraticNumber::from_rational(&BigRational::from(k.clone()));
            let kq1 = QuadraticNumber::from_rational(&BigRational::from(&k + 1));
            kq.cmp(self) != Ordering::Greater && self.cmp(&kq1) == Ordering::Less
        });
        k
    }

    /// Certified rational enclosure `[lo, hi]` with `hi - lo <= 10^-digits`.
    pub fn enclosure(&self, digits: u32) -> (BigRational, BigRational) {
        if self.b.is_zero() {
            let v = BigRational::new(self.a.clone(), self.c.clone());
            return (v.clone(), v);
        }
        // scale chosen so that |b| / (c * scale) <= 10^-digits
        let mut scale = BigInt::from(10u32).pow(digits);
        scale *= self.b.abs() + 1;
        let s = (&scale * &scale * &self.d).sqrt();
        let (lo_t, hi_t) = if self.b.is_positive() {
            (&self.b * &s, &self.b * (&s + 1))
        } else {
            (&self.b * (&s + 1), &self.b * &s)
        };
        let denom = &self.c * &scale;
        let lo = BigRational::new(&self.a * &scale + lo_t, denom.clone());
        let hi = BigRational::new(&self.a * &scale + hi_t, denom);
        (lo, hi)
    }

    /// Approximate f64 value (display and statistics only; never used by
    /// exact predicates).
    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(25);
        let mid = (lo + hi) / BigRational::from(BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }
}

impl Ord for QuadraticNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        // sign of self - other, with denominators cleared
        let u = &self.a * &other.c - &other.a * &self.c;
        let v = &self.b * &other.c;
        let w = -(&other.b * &self.c);
        if self.d == other.d || self.b.is_zero() || other.b.is_zero() {
            let d = self.unified_d(other);
            sign_one_radical(&u, &(&v + &w), &d)
        } else {
            sign_two_radicals(&u, &v, &self.d, &w, &other.d)
        }
    }
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact order of two values; cross-field comparisons are decided by sign
/// analysis with repeated squaring.
pub fn qn_compare(x: &QuadraticNumber, y: &QuadraticNumber) -> Ordering {
    x.cmp(y)
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            if self.c.is_one() {
                write!(f, "{}", self.a)
            } else {
                write!(f, "{}/{}", self.a, self.c)
            }
        } else if self.b.is_negative() {
            write!(f, "({}-{}*sqrt({}))/{}", self.a, self.b.abs(), self.d, self.c)
        } else {
            write!(f, "({}+{}*sqrt({}))/{}", self.a, self.b, self.d, self.c)
        }
    }
}

impl FromStr for QuadraticNumber {
    type Err = Error;

    /// Accepts `"p/q"`, a plain integer, or `"(a+b*sqrt(d))/c"` (also with
    /// `-` before the radical term).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            let close = rest
                .rfind(')')
                .ok_or_else(|| Error::Domain(format!("unbalanced parenthesis in {s:?}")))?;
            let (inner, tail) = (&rest[..close], &rest[close + 1..]);
            let c_str = tail
                .strip_prefix('/')
                .ok_or_else(|| Error::Domain(format!("missing denominator in {s:?}")))?;
            let c: BigInt = c_str
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("bad denominator in {s:?}")))?;
            // split inner as a +/- b*sqrt(d); the sign splitting must skip a
            // leading sign on a.
            let bytes = inner.as_bytes();
            let i = (1..bytes.len())
                .find(|&i| bytes[i] == b'+' || bytes[i] == b'-')
                .ok_or_else(|| Error::Domain(format!("missing radical term in {s:?}")))?;
            let a: BigInt = inner[..i]
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("bad integer part in {s:?}")))?;
            let sign = if bytes[i] == b'-' { -1 } else { 1 };
            let term = inner[i + 1..].trim();
            let (b_str, d_part) = term
                .split_once("*sqrt(")
                .ok_or_else(|| Error::Domain(format!("missing sqrt in {s:?}")))?;
            let d_str = d_part
                .strip_suffix(')')
                .ok_or_else(|| Error::Domain(format!("unbalanced sqrt in {s:?}")))?;
            let b: BigInt = b_str
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("bad radical coefficient in {s:?}")))?;
            let d: BigInt = d_str
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("bad radicand in {s:?}")))?;
            QuadraticNumber::new(a, BigInt::from(sign) * b, c, d)
        } else if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("bad numerator in {s:?}")))?;
            let q: BigInt = q
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("bad denominator in {s:?}")))?;
            if q.is_zero() {
                return Err(Error::Domain("zero denominator".into()));
            }
            Ok(QuadraticNumber::from_rational(&BigRational::new(p, q)))
        } else {
            let n: BigInt = s
                .parse()
                .map_err(|_| Error::Domain(format!("cannot parse {s:?}")))?;
            Ok(QuadraticNumber::from_rational(&BigRational::from(n)))
        }
    }
}

/// Renders a rational as `p/q`.
pub fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a plain integer.
pub fn rational_from_str(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("bad numerator in {s:?}")))?;
        let q: BigInt = q
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("bad denominator in {s:?}")))?;
        if q.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(BigRational::new(p, q))
    } else {
        let n: BigInt = s
            .parse()
            .map_err(|_| Error::Domain(format!("cannot parse {s:?} as rational")))?;
        Ok(BigRational::from(n))
    }
}

/// Parses a decimal string such as `0.35` into an exact rational.
pub fn rational_from_decimal(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let neg = int_part.starts_with('-');
        let int_part = int_part.trim_start_matches('-');
        let int_val: BigInt = if int_part.is_empty() {
            BigInt::zero()
        } else {
            int_part
                .parse()
                .map_err(|_| Error::Domain(format!("cannot parse decimal {s:?}")))?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Domain(format!("cannot parse decimal {s:?}")));
        }
        let frac_val: BigInt = frac_part
            .parse()
            .map_err(|_| Error::Domain(format!("cannot parse decimal {s:?}")))?;
        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mut v = BigRational::new(int_val * &denom + frac_val, denom);
        if neg {
            v = -v;
        }
        Ok(v)
    } else {
        rational_from_str(s)
    }
}
