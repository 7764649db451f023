//! Generation-by-generation bisection enumeration of maximal intervals.
//!
//! Starting from the seed family of intervals generated by `1/n`, each
//! generation computes the pseudocenter of every remaining gap and inserts
//! the (always maximal) interval it generates. Gaps whose pseudocenter
//! denominator exceeds the requested bound become frontier gaps and are left
//! untouched, which makes the enumeration finite and reproducible.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::intervals::{interval_of, is_maximal, ParamRange, QuadraticInterval};
use crate::quadratic::QuadraticNumber;
use crate::strings::{cf_value, periodic_compare, PQString};

/// Minimal-denominator rational strictly between two numbers given by their
/// continued-fraction digit streams: the common prefix `S` and the smaller
/// of the first differing digits `a` yield `[0; S, a + 1]`.
///
/// The streams are consumed lazily; `scan_cap` bounds how far they may agree
/// before the call is rejected (equal endpoints have no pseudocenter).
pub fn gap_pseudocenter<L, R>(left: L, right: R, scan_cap: usize) -> Result<BigRational>
where
    L: IntoIterator<Item = u64>,
    R: IntoIterator<Item = u64>,
{
    let mut left = left.into_iter();
    let mut right = right.into_iter();
    let mut prefix: Vec<u64> = Vec::new();
    for _ in 0..scan_cap {
        let a = left
            .next()
            .ok_or_else(|| Error::Domain("left digit stream ended".into()))?;
        let b = right
            .next()
            .ok_or_else(|| Error::Domain("right digit stream ended".into()))?;
        if a != b {
            prefix.push(a.min(b) + 1);
            return Ok(cf_value(&PQString::new(prefix)?));
        }
        prefix.push(a);
    }
    Err(Error::Domain(format!("digit streams agree through the first {scan_cap} digits")))
}

/// A closed gap between two already-enumerated intervals, carried as the
/// periodic digit generators of its surd endpoints.
#[derive(Clone, Debug)]
pub struct Gap {
    left_period: PQString,
    right_period: PQString,
    left: QuadraticNumber,
    right: QuadraticNumber,
    left_den: BigInt,
    right_den: BigInt,
    pseudocenter: Option<BigRational>,
}

impl Gap {
    pub fn left(&self) -> &QuadraticNumber {
        &self.left
    }

    pub fn right(&self) -> &QuadraticNumber {
        &self.right
    }

    pub fn left_period(&self) -> &PQString {
        &self.left_period
    }

    pub fn right_period(&self) -> &PQString {
        &self.right_period
    }

    /// Pseudocenter of the gap, once it has been computed (always set on
    /// frontier gaps).
    pub fn pseudocenter(&self) -> Option<&BigRational> {
        self.pseudocenter.as_ref()
    }

    /// First `n` digits of the left endpoint's expansion.
    pub fn left_digits(&self, n: usize) -> Vec<u64> {
        self.left_period.cycle().take(n).collect()
    }

    pub fn right_digits(&self, n: usize) -> Vec<u64> {
        self.right_period.cycle().take(n).collect()
    }

    /// Whether the two endpoints coincide (an isolated touch point).
    fn is_point(&self) -> bool {
        periodic_compare(&self.left_period, &self.right_period) == Ordering::Equal
    }

    fn intersects(&self, range: &ParamRange) -> bool {
        self.right.cmp(range.lo()) == Ordering::Greater
            && self.left.cmp(range.hi()) != Ordering::Greater
    }

    fn compute_pseudocenter(&mut self) -> Result<BigRational> {
        if let Some(pc) = &self.pseudocenter {
            return Ok(pc.clone());
        }
        let cap = self.left_period.len() + self.right_period.len() + 2;
        let pc = gap_pseudocenter(self.left_period.cycle(), self.right_period.cycle(), cap)?;
        assert!(
            pc.denom() > &self.left_den && pc.denom() > &self.right_den,
            "gap pseudocenter denominator must exceed both neighbors"
        );
        self.pseudocenter = Some(pc.clone());
        Ok(pc)
    }
}

/// In-progress bisection state: the enumerated intervals, the gaps still to
/// be bisected, and the frontier gaps already settled.
pub struct Bisection {
    range: ParamRange,
    den_max: BigInt,
    intervals: Vec<QuadraticInterval>,
    open: Vec<Gap>,
    frontier: Vec<Gap>,
    isolated_points: usize,
    generation: usize,
}

/// Result of a finished enumeration, restricted to the requested range.
#[derive(Debug)]
pub struct BisectionOutcome {
    /// Maximal intervals meeting the range, sorted by left endpoint and
    /// pairwise disjoint.
    pub intervals: Vec<QuadraticInterval>,
    /// Frontier gaps meeting the range (pseudocenter denominator beyond the
    /// bound), sorted by left endpoint.
    pub gaps: Vec<Gap>,
    /// Number of generations performed.
    pub generations: usize,
    /// Isolated touch points encountered between adjacent intervals.
    pub isolated_points: usize,
}

impl Bisection {
    /// Seeds the enumeration with every interval of `1/n` relevant to the
    /// range and the gaps between consecutive seeds.
    pub fn new(range: ParamRange, den_max: u64) -> Result<Self> {
        if den_max < 1 {
            return Err(Error::Domain("denominator bound must be at least 1".into()));
        }
        let mut seeds: Vec<QuadraticInterval> = Vec::new();
        let mut n: u64 = 1;
        loop {
            let r = BigRational::new(BigInt::one(), BigInt::from(n));
            let iv = interval_of(&r)?;
            let stop = iv.right().cmp(range.lo()) != Ordering::Greater;
            seeds.push(iv);
            if stop {
                break;
            }
            n += 1;
        }
        let mut open = Vec::new();
        for pair in seeds.windows(2) {
            // the gap between the intervals of 1/(n+1) and 1/n
            let gap = Gap {
                left_period: pair[1].even_string().clone(),
                right_period: pair[0].odd_string().clone(),
                left: pair[1].right().clone(),
                right: pair[0].left().clone(),
                left_den: pair[1].pseudocenter().denom().clone(),
                right_den: pair[0].pseudocenter().denom().clone(),
                pseudocenter: None,
            };
            if !gap.is_point() && gap.intersects(&range) {
                open.push(gap);
            }
        }
        Ok(Bisection {
            range,
            den_max: BigInt::from(den_max),
            intervals: seeds,
            open,
            frontier: Vec::new(),
            isolated_points: 0,
            generation: 1,
        })
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    /// Bisects every currently open gap once. Returns false when no open
    /// gaps remain.
    pub fn step(&mut self) -> Result<bool> {
        if self.open.is_empty() {
            return Ok(false);
        }
        let work = std::mem::take(&mut self.open);
        for mut gap in work {
            let pc = gap.compute_pseudocenter()?;
            if pc.denom() > &self.den_max {
                self.frontier.push(gap);
                continue;
            }
            assert!(is_maximal(&pc)?, "gap pseudocenters generate maximal intervals");
            let iv = interval_of(&pc)?;
            assert!(
                gap.left.cmp(iv.left()) != Ordering::Greater
                    && iv.right().cmp(&gap.right) != Ordering::Greater,
                "new interval must stay inside its gap"
            );
            for (lp, lv, ld, rp, rv, rd) in [
                (
                    gap.left_period.clone(),
                    gap.left.clone(),
                    gap.left_den.clone(),
                    iv.odd_string().clone(),
                    iv.left().clone(),
                    pc.denom().clone(),
                ),
                (
                    iv.even_string().clone(),
                    iv.right().clone(),
                    pc.denom().clone(),
                    gap.right_period.clone(),
                    gap.right.clone(),
                    gap.right_den.clone(),
                ),
            ] {
                let sub = Gap {
                    left_period: lp,
                    right_period: rp,
                    left: lv,
                    right: rv,
                    left_den: ld,
                    right_den: rd,
                    pseudocenter: None,
                };
                if sub.is_point() {
                    self.isolated_points += 1;
                } else if sub.intersects(&self.range) {
                    self.open.push(sub);
                }
            }
            self.intervals.push(iv);
        }
        self.generation += 1;
        Ok(true)
    }

    /// Runs the bisection to completion and packages the outcome.
    pub fn run(mut self) -> Result<BisectionOutcome> {
        while self.step()? {}
        let range = self.range;
        let mut intervals: Vec<QuadraticInterval> =
            self.intervals.into_iter().filter(|iv| iv.intersects(&range)).collect();
        intervals.sort_by(|a, b| a.left().cmp(b.left()));
        for pair in intervals.windows(2) {
            assert!(
                pair[0].right().cmp(pair[1].left()) != Ordering::Greater,
                "enumerated intervals must be pairwise disjoint"
            );
        }
        let mut gaps: Vec<Gap> = self.frontier;
        gaps.sort_by(|a, b| a.left.cmp(&b.left));
        Ok(BisectionOutcome {
            intervals,
            gaps,
            generations: self.generation,
            isolated_points: self.isolated_points,
        })
    }
}

/// Enumerates every maximal interval meeting `(lo, hi]` reachable before
/// gap pseudocenter denominators exceed `den_max`. Seed intervals of `1/n`
/// are always included when they meet the range.
pub fn bisection_enumerate(range: &ParamRange, den_max: u64) -> Result<BisectionOutcome> {
    Bisection::new(range.clone(), den_max)?.run()
}

/// Convenience: the pseudocenters of an outcome, as exact rationals.
pub fn pseudocenters(outcome: &BisectionOutcome) -> Vec<BigRational> {
    outcome.intervals.iter().map(|iv| iv.pseudocenter().clone()).collect()
}

/// Convenience: pseudocenters whose value lies inside the half-open range.
pub fn pseudocenters_in_range(outcome: &BisectionOutcome, range: &ParamRange) -> Vec<BigRational> {
    outcome
        .intervals
        .iter()
        .map(|iv| iv.pseudocenter().clone())
        .filter(|pc| range.contains(&QuadraticNumber::from_rational(pc)))
        .collect()
}

/// Band index `n` with the gap inside `(1/(n+1), 1/n)`, when the first
/// digits of both endpoint streams agree (they always do for true gaps).
pub fn gap_band(gap: &Gap) -> Option<u64> {
    let l = gap.left_digits(1)[0];
    let r = gap.right_digits(1)[0];
    (l == r).then_some(l)
}
