//! Exact orbits of the alpha-continued fraction maps and the matching
//! analysis built on them.
//!
//! For a parameter `alpha` in `(0, 1]`, the map acts on `[alpha-1, alpha]`
//! by `x -> eps/x - c` with `eps = sign(x)` and
//! `c = floor(1/|x| + 1 - alpha)`, fixing 0. Orbits of exact points stay in
//! one quadratic field, so every statement below is decided exactly.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intervals::{interval_of, is_maximal, pseudocenter_between, QuadraticInterval};
use crate::mobius::{MobiusMatrix, Sign};
use crate::quadratic::QuadraticNumber;
use crate::strings::{cf_expand, surd_of_periodic};

/// Hard cap on orbit length; exceeding it signals a precondition violation.
pub const ORBIT_STEP_CAP: usize = 10_000;

/// One step of an encoded orbit: the digit pair `(epsilon, c)` consumed from
/// the previous point, the resulting point, and the cumulative matrix whose
/// columns are the convergents so far.
#[derive(Clone, Debug)]
pub struct OrbitStep {
    pub point: QuadraticNumber,
    pub epsilon: Sign,
    pub c: BigInt,
    pub cumulative: MobiusMatrix,
}

/// Matching exponents `(N, M)`: the step counts after which the orbits of
/// the pseudocenter and of the pseudocenter minus one reach zero. For the
/// generator 1 the second orbit starts at zero, so `M = 0`; in every other
/// maximal case both are positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MatchingExponents {
    pub n: u64,
    pub m: u64,
}

/// Local monotonicity class of the entropy over a matching interval,
/// determined by the sign of `M - N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EntropyClass {
    #[serde(rename = "inc")]
    Increasing,
    #[serde(rename = "const")]
    Constant,
    #[serde(rename = "dec")]
    Decreasing,
}

impl fmt::Display for EntropyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EntropyClass::Increasing => "inc",
            EntropyClass::Constant => "const",
            EntropyClass::Decreasing => "dec",
        };
        write!(f, "{s}")
    }
}

impl FromStr for EntropyClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inc" => Ok(EntropyClass::Increasing),
            "const" => Ok(EntropyClass::Constant),
            "dec" => Ok(EntropyClass::Decreasing),
            other => Err(Error::Domain(format!("unknown entropy class {other:?}"))),
        }
    }
}

/// Verdicts of the three classical matching conditions at one parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NnVerdicts {
    pub c1: bool,
    pub c2: bool,
    pub c3: bool,
}

/// Full matching verdict for one maximal interval.
#[derive(Clone, Debug)]
pub struct MatchingReport {
    pub exponents: MatchingExponents,
    pub algebraic_ok: bool,
    pub orbit_match_ok: bool,
    pub nn: NnVerdicts,
    pub entropy_class: EntropyClass,
}

fn check_alpha(alpha: &QuadraticNumber) -> Result<()> {
    if alpha.signum() != Ordering::Greater
        || alpha.cmp(&QuadraticNumber::one()) == Ordering::Greater
    {
        return Err(Error::Domain(format!("parameter {alpha} is outside (0, 1]")));
    }
    Ok(())
}

fn check_point(alpha: &QuadraticNumber, x: &QuadraticNumber) -> Result<()> {
    if !alpha.same_field(x) {
        return Err(Error::FieldMismatch(alpha.radicand().clone(), x.radicand().clone()));
    }
    let lower = alpha.sub_int(&BigInt::one());
    if lower.cmp(x) == Ordering::Greater || x.cmp(alpha) == Ordering::Greater {
        return Err(Error::Domain(format!("point {x} is outside [{alpha}-1, {alpha}]")));
    }
    Ok(())
}

/// One exact step of the map: returns `(next, epsilon, c)`. Zero is fixed
/// and reported with the conventional pair `(+1, 0)`.
pub fn t_alpha_step(
    alpha: &QuadraticNumber,
    x: &QuadraticNumber,
) -> Result<(QuadraticNumber, Sign, BigInt)> {
    check_alpha(alpha)?;
    check_point(alpha, x)?;
    if x.is_zero() {
        return Ok((QuadraticNumber::zero(), Sign::Pos, BigInt::zero()));
    }
    let eps = Sign::of(x);
    let inv = x.recip()?;
    let inv_abs = if eps == Sign::Neg { inv.neg() } else { inv };
    // c = floor(1/|x| + 1 - alpha)
    let c = inv_abs.add(&QuadraticNumber::one()).sub(alpha).floor();
    let next = inv_abs.sub(&QuadraticNumber::from_rational(&BigRational::from(c.clone())));
    debug_assert!(check_point(alpha, &next).is_ok());
    Ok((next, eps, c))
}

/// Encodes up to `n` steps of the orbit of `x` under the map of `alpha`,
/// stopping early if the orbit reaches zero (no further digits exist).
///
/// Every step is validated against the inversion identity: applying the
/// cumulative matrix to the current point recovers the starting point. When
/// `alpha` is below the golden point, the convergent denominators are
/// checked to grow strictly.
pub fn encode_orbit(
    alpha: &QuadraticNumber,
    x: &QuadraticNumber,
    n: usize,
) -> Result<Vec<OrbitStep>> {
    check_alpha(alpha)?;
    check_point(alpha, x)?;
    let golden = QuadraticNumber::golden();
    let check_denominators = alpha.cmp(&golden) == Ordering::Less;
    let mut steps = Vec::new();
    let mut current = x.clone();
    let mut cumulative = MobiusMatrix::identity();
    for _ in 0..n {
        if current.is_zero() {
            break;
        }
        let (next, eps, c) = t_alpha_step(alpha, &current)?;
        cumulative = cumulative.mul(&MobiusMatrix::digit(eps, &c));
        assert_eq!(
            cumulative.apply(&next)?,
            *x,
            "inversion identity must hold along the orbit"
        );
        if check_denominators {
            assert!(
                cumulative.p22 > cumulative.p21 && cumulative.p21 >= BigInt::one(),
                "convergent denominators must grow strictly below the golden point"
            );
        }
        steps.push(OrbitStep { point: next.clone(), epsilon: eps, c, cumulative: cumulative.clone() });
        current = next;
    }
    Ok(steps)
}

/// The orbit points `x, T(x), ..., T^n(x)` with zero absorbing.
pub fn orbit_points(
    alpha: &QuadraticNumber,
    x: &QuadraticNumber,
    n: usize,
) -> Result<Vec<QuadraticNumber>> {
    check_alpha(alpha)?;
    check_point(alpha, x)?;
    let mut points = vec![x.clone()];
    let mut current = x.clone();
    for _ in 0..n {
        let (next, _, _) = t_alpha_step(alpha, &current)?;
        points.push(next.clone());
        current = next;
    }
    Ok(points)
}

/// Matching exponents of a maximal pseudocenter, from the digit sums of the
/// even-length expansion: `N` sums the even positions and `M` the odd ones
/// (1-based). The odd-length expansion yields the same pair through the
/// shifted sums, which is asserted.
pub fn matching_exponents(r: &BigRational) -> Result<MatchingExponents> {
    if !is_maximal(r)? {
        return Err(Error::NotMaximal(r.clone()));
    }
    let tw = cf_expand(r)?;
    if tw.is_unit() {
        // single expansion [1], odd length: N = 1 + 0, M = -1 + 1
        return Ok(MatchingExponents { n: 1, m: 0 });
    }
    let even = tw.even().digits();
    let n: u64 = even.iter().skip(1).step_by(2).sum();
    let m: u64 = even.iter().step_by(2).sum();
    let odd = tw.odd().digits();
    let n_odd: u64 = 1 + odd.iter().skip(1).step_by(2).sum::<u64>();
    let m_odd: u64 = odd.iter().step_by(2).sum::<u64>() - 1;
    assert_eq!((n, m), (n_odd, m_odd), "both expansions must give the same exponents");
    Ok(MatchingExponents { n, m })
}

/// Entropy monotonicity from the exponents: increasing when `N < M`,
/// constant when `N = M`, decreasing when `N > M`.
pub fn classify_entropy(exponents: &MatchingExponents) -> EntropyClass {
    match exponents.m.cmp(&exponents.n) {
        Ordering::Greater => EntropyClass::Increasing,
        Ordering::Equal => EntropyClass::Constant,
        Ordering::Less => EntropyClass::Decreasing,
    }
}

/// Exact orbit tables of the pseudocenter and of the pseudocenter minus
/// one under their own map, run until they reach zero. The lengths equal
/// the matching exponents, which is asserted; every step carries the
/// inversion-identity check of [`encode_orbit`].
pub fn pseudocenter_orbit_table(r: &BigRational) -> Result<(Vec<OrbitStep>, Vec<OrbitStep>)> {
    let exps = matching_exponents(r)?;
    let alpha = QuadraticNumber::from_rational(r);
    let table_a = encode_orbit(&alpha, &alpha, ORBIT_STEP_CAP)?;
    if !table_a.last().map(|s| s.point.is_zero()).unwrap_or(false) {
        return Err(Error::StepCap(ORBIT_STEP_CAP));
    }
    let start_b = alpha.sub_int(&BigInt::one());
    let table_b = encode_orbit(&alpha, &start_b, ORBIT_STEP_CAP)?;
    if !table_b.last().map(|s| s.point.is_zero()).unwrap_or(start_b.is_zero()) {
        return Err(Error::StepCap(ORBIT_STEP_CAP));
    }
    assert_eq!(
        (table_a.len() as u64, table_b.len() as u64),
        (exps.n, exps.m),
        "orbit lengths must equal the matching exponents for {r}"
    );
    Ok((table_a, table_b))
}

fn cumulative_matrix(alpha: &QuadraticNumber, x: &QuadraticNumber, steps: u64) -> Result<Option<MobiusMatrix>> {
    if steps == 0 {
        return Ok(Some(MobiusMatrix::identity()));
    }
    let encoded = encode_orbit(alpha, x, steps as usize)?;
    if encoded.len() < steps as usize {
        // the orbit reached zero too early; the matrix is undefined
        return Ok(None);
    }
    Ok(Some(encoded.last().unwrap().cumulative.clone()))
}

fn left_shear() -> MobiusMatrix {
    MobiusMatrix::new(1, 1, 0, 1)
}

fn right_shear() -> MobiusMatrix {
    MobiusMatrix::new(-1, 0, 1, 1)
}

/// Checks the algebraic matching identity of order `(N, M)` at `alpha`:
/// the cumulative matrix of `N` steps from `alpha` must equal the matrix of
/// `M` steps from `alpha - 1` conjugated by the two unit shears.
pub fn verify_algebraic_matching(
    alpha: &QuadraticNumber,
    exponents: &MatchingExponents,
) -> Result<bool> {
    check_alpha(alpha)?;
    let m_a = cumulative_matrix(alpha, alpha, exponents.n)?;
    let m_b = cumulative_matrix(alpha, &alpha.sub_int(&BigInt::one()), exponents.m)?;
    match (m_a, m_b) {
        (Some(ma), Some(mb)) => Ok(ma == left_shear().mul(&mb).mul(&right_shear())),
        _ => Ok(false),
    }
}

/// Checks the orbit identity `T^(N+1)(alpha) = T^(M+1)(alpha - 1)` exactly,
/// with zero absorbing.
pub fn verify_orbit_matching(
    alpha: &QuadraticNumber,
    exponents: &MatchingExponents,
) -> Result<bool> {
    check_alpha(alpha)?;
    let a_side = orbit_points(alpha, alpha, exponents.n as usize + 1)?;
    let b_side =
        orbit_points(alpha, &alpha.sub_int(&BigInt::one()), exponents.m as usize + 1)?;
    Ok(a_side.last() == b_side.last())
}

/// Evaluates the three matching conditions at `alpha` with prefix lengths
/// `(k1, k2)`:
///
/// - `c1`: the first `k1` points of the orbit of `alpha` and the first `k2`
///   points of the orbit of `alpha - 1` are disjoint;
/// - `c2`: the cumulative matrices satisfy the one-shear relation;
/// - `c3`: the synchronized point avoids `alpha` and `alpha - 1`.
pub fn nn_conditions(alpha: &QuadraticNumber, k1: u64, k2: u64) -> Result<NnVerdicts> {
    check_alpha(alpha)?;
    let alpha_minus = alpha.sub_int(&BigInt::one());
    let a_pts = if k1 == 0 {
        Vec::new()
    } else {
        orbit_points(alpha, alpha, k1 as usize - 1)?
    };
    let b_pts = if k2 == 0 {
        Vec::new()
    } else {
        orbit_points(alpha, &alpha_minus, k2 as usize - 1)?
    };
    let c1 = a_pts.iter().all(|p| b_pts.iter().all(|q| p != q));
    let c2 = match (
        cumulative_matrix(alpha, alpha, k1)?,
        cumulative_matrix(alpha, &alpha_minus, k2)?,
    ) {
        (Some(ma), Some(mb)) => ma == left_shear().mul(&mb),
        _ => false,
    };
    let sync = orbit_points(alpha, alpha, k1 as usize)?.last().unwrap().clone();
    let c3 = sync != *alpha && sync != alpha_minus;
    Ok(NnVerdicts { c1, c2, c3 })
}

/// Five exact sample points inside a maximal interval: the pseudocenter,
/// two interior rationals found by mediant descent, and two purely periodic
/// surds obtained by extending the generating strings with a small digit.
/// Every point is verified to lie inside the interval.
pub fn sample_points(interval: &QuadraticInterval) -> Result<Vec<QuadraticNumber>> {
    let pc = QuadraticNumber::from_rational(interval.pseudocenter());
    let mut samples = vec![pc.clone()];
    let rat1 = pseudocenter_between(interval.left(), &pc)?;
    let q_rat1 = QuadraticNumber::from_rational(&rat1);
    samples.push(q_rat1.clone());
    let rat2 = if interval.is_unit_interval() {
        // the pseudocenter 1 is also the right endpoint; split the lower part
        pseudocenter_between(interval.left(), &q_rat1)?
    } else {
        pseudocenter_between(&pc, interval.right())?
    };
    samples.push(QuadraticNumber::from_rational(&rat2));
    for base in [interval.even_string(), interval.odd_string()] {
        // appending a digit below the leading digit lands outside the
        // interval in the alternating order, so try larger digits first
        let a1 = base.digits()[0];
        let mut found = false;
        for k in (a1 + 1..=a1 + 8).chain(1..=8) {
            let extended = base.concat(&crate::strings::PQString::single(k));
            let surd = surd_of_periodic(&extended)?;
            if interval.contains(&surd) && !samples.contains(&surd) {
                samples.push(surd);
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::Internal(format!(
                "no periodic sample found inside the interval of {}",
                interval.pseudocenter()
            )));
        }
    }
    for s in &samples {
        if !interval.contains(s) {
            return Err(Error::Internal(format!("sample {s} escaped its interval")));
        }
    }
    Ok(samples)
}

/// Matching report for a maximal pseudocenter. The algebraic and orbit
/// identities are checked at the pseudocenter itself; the three matching
/// conditions are evaluated at an interior witness point (the pseudocenter
/// is always one of the countably many exceptional parameters).
pub fn match_report(r: &BigRational) -> Result<MatchingReport> {
    let exps = matching_exponents(r)?;
    let interval = interval_of(r)?;
    let alpha = QuadraticNumber::from_rational(r);
    let algebraic_ok = verify_algebraic_matching(&alpha, &exps)?;
    let orbit_match_ok = verify_orbit_matching(&alpha, &exps)?;
    let witness =
        QuadraticNumber::from_rational(&pseudocenter_between(interval.left(), &alpha)?);
    let nn = nn_conditions(&witness, exps.n + 1, exps.m + 1)?;
    Ok(MatchingReport {
        exponents: exps,
        algebraic_ok,
        orbit_match_ok,
        nn,
        entropy_class: classify_entropy(&exps),
    })
}

/// Matching report evaluated at an explicit parameter inside the interval
/// of `r` (including the matching conditions at that very point).
pub fn match_report_at(r: &BigRational, alpha: &QuadraticNumber) -> Result<MatchingReport> {
    let exps = matching_exponents(r)?;
    let interval = interval_of(r)?;
    if !interval.contains(alpha) {
        return Err(Error::Domain(format!(
            "{alpha} is not inside the interval generated by {r}"
        )));
    }
    let algebraic_ok = verify_algebraic_matching(alpha, &exps)?;
    let orbit_match_ok = verify_orbit_matching(alpha, &exps)?;
    let nn = nn_conditions(alpha, exps.n + 1, exps.m + 1)?;
    Ok(MatchingReport {
        exponents: exps,
        algebraic_ok,
        orbit_match_ok,
        nn,
        entropy_class: classify_entropy(&exps),
    })
}
