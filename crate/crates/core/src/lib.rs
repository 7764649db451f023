//! Exact machinery for quadratic intervals and alpha-continued fractions.
//!
//! The crate provides, in layers:
//!
//! - exact arithmetic in real quadratic fields ([`quadratic`]) and integer
//!   Mobius matrices ([`mobius`]);
//! - finite partial-quotient strings with the alternating lexicographic
//!   order, twin expansions, and the cyclic maximality test ([`strings`]);
//! - quadratic intervals, maximality and containment decisions, the gap
//!   bisection enumeration, coverage bounds, period doubling, and related
//!   predicates ([`intervals`], [`bisection`], [`coverage`]);
//! - exact orbits of the alpha-continued fraction maps, matching exponents,
//!   the algebraic matching identity and its variants ([`dynamics`]);
//! - a floating-point Birkhoff entropy estimator used only for statistical
//!   cross-checks ([`entropy`]);
//! - serialization of enumeration results to JSONL/CSV rows ([`report`]).
//!
//! All predicates and enumeration decisions are exact: the only module that
//! touches floating point is [`entropy`].

pub mod bisection;
pub mod coverage;
pub mod dynamics;
pub mod entropy;
pub mod error;
pub mod intervals;
pub mod mobius;
pub mod quadratic;
pub mod report;
pub mod strings;

pub use error::{Error, Result};
pub use mobius::{MobiusMatrix, Sign};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use quadratic::{qn_compare, QuadraticNumber};
pub use strings::{
    alt_compare, cf_expand, cf_value, is_maximal_string, periodic_compare, surd_of_periodic,
    string_matrix, twin, PQString, TwinExpansion,
};

pub use bisection::{bisection_enumerate, gap_pseudocenter, Bisection, BisectionOutcome, Gap};
pub use coverage::{coverage, CoverageRow};
pub use dynamics::{
    classify_entropy, encode_orbit, matching_exponents, match_report, nn_conditions,
    pseudocenter_orbit_table, sample_points, t_alpha_step, verify_algebraic_matching,
    verify_orbit_matching, EntropyClass, MatchingExponents, MatchingReport, NnVerdicts, OrbitStep,
};
pub use entropy::{birkhoff_entropy, entropy_scan, paired_entropy_difference, EntropyEstimate};
pub use intervals::{
    bounded_type_check, doubling_chain, horocycle_bounds_check, interval_of, is_maximal,
    maximal_container, period_double, pseudocenter_between, BoundedTypeVerdict, DoublingChain,
    ParamRange, QuadraticInterval,
};
pub use report::IntervalRecord;
