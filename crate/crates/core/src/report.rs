//! Serialized rows for the line-oriented output formats: JSONL interval
//! records, coverage CSV, entropy CSV, and orbit TSV.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::coverage::{decimal_string, CoverageRow};
use crate::dynamics::{
    classify_entropy, matching_exponents, EntropyClass, MatchingExponents, OrbitStep,
};
use crate::entropy::EntropyEstimate;
use crate::error::{Error, Result};
use crate::intervals::{interval_of, QuadraticInterval};
use crate::quadratic::{rational_from_str, rational_to_string, QuadraticNumber};
use crate::strings::PQString;

/// One enumerated interval as a JSONL row. Exact data is carried as
/// strings in the crate grammar; the decimal fields are display-only.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct IntervalRecord {
    pub pseudocenter: String,
    pub even: String,
    pub odd: String,
    pub left: String,
    pub right: String,
    pub left_dec: f64,
    pub right_dec: f64,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "M")]
    pub m: u64,
    pub entropy_class: String,
}

impl IntervalRecord {
    /// Builds the record for a maximal interval, computing its exponents
    /// and entropy class.
    pub fn build(interval: &QuadraticInterval) -> Result<Self> {
        let exps = matching_exponents(interval.pseudocenter())?;
        Ok(IntervalRecord::from_parts(interval, &exps, classify_entropy(&exps)))
    }

    pub fn from_parts(
        interval: &QuadraticInterval,
        exponents: &MatchingExponents,
        class: EntropyClass,
    ) -> Self {
        IntervalRecord {
            pseudocenter: rational_to_string(interval.pseudocenter()),
            even: interval.even_string().to_string(),
            odd: interval.odd_string().to_string(),
            left: interval.left().to_string(),
            right: interval.right().to_string(),
            left_dec: interval.left().to_f64(),
            right_dec: interval.right().to_f64(),
            n: exponents.n,
            m: exponents.m,
            entropy_class: class.to_string(),
        }
    }

    /// Reconstructs the exact interval and verifies that every exact field
    /// of the record matches the reconstruction.
    pub fn to_interval(&self) -> Result<(QuadraticInterval, MatchingExponents, EntropyClass)> {
        let pc = rational_from_str(&self.pseudocenter)?;
        let interval = interval_of(&pc)?;
        let even: PQString = self.even.parse()?;
        let odd: PQString = self.odd.parse()?;
        let left: QuadraticNumber = self.left.parse()?;
        let right: QuadraticNumber = self.right.parse()?;
        if interval.even_string() != &even
            || interval.odd_string() != &odd
            || interval.left() != &left
            || interval.right() != &right
        {
            return Err(Error::Domain(format!(
                "record for {} does not match its reconstruction",
                self.pseudocenter
            )));
        }
        let exps = MatchingExponents { n: self.n, m: self.m };
        let class: EntropyClass = self.entropy_class.parse()?;
        Ok((interval, exps, class))
    }

    pub fn to_jsonl(&self) -> Result<String> {
        serde_json::to_string(self).map_err(|e| Error::Internal(format!("jsonl encoding: {e}")))
    }

    pub fn from_jsonl(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(|e| Error::Domain(format!("bad jsonl row: {e}")))
    }
}

pub const COVERAGE_CSV_HEADER: &str = "D,covered_length,residual";

/// CSV row for one coverage computation, rendered at the given precision.
pub fn coverage_csv_row(row: &CoverageRow, precision: u32) -> String {
    let covered = decimal_string(&row.covered_lo, precision);
    let residual = decimal_string(&row.residual_hi, precision);
    format!("{},{},{}", row.den_max, covered, residual)
}

pub const ENTROPY_CSV_HEADER: &str = "alpha,estimate,stderr,iters,n_orbits,seed";

pub fn entropy_csv_row(est: &EntropyEstimate) -> String {
    format!(
        "{:.10},{:.10},{:.10},{},{},{}",
        est.alpha, est.estimate, est.stderr, est.iters, est.n_orbits, est.seed
    )
}

pub const ORBIT_TSV_HEADER: &str = "step\tx\tx_dec\tepsilon\tc\tp_n\tq_n";

/// TSV row for one orbit step (1-based step index).
pub fn orbit_tsv_row(index: usize, step: &OrbitStep) -> String {
    format!(
        "{}\t{}\t{:.12}\t{}\t{}\t{}\t{}",
        index,
        step.point,
        step.point.to_f64(),
        step.epsilon.as_i8(),
        step.c,
        step.cumulative.p12,
        step.cumulative.p22
    )
}

/// Renders a rational as an exact decimal-bounded string pair for human
/// output: `"p/q (~0.123456)"`.
pub fn rational_with_decimal(r: &BigRational, digits: u32) -> String {
    format!("{} (~{})", rational_to_string(r), decimal_string(r, digits))
}
