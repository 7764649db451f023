use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Errors produced by the exact kernels and enumeration routines.
///
/// `Domain` and `NotMaximal` signal bad inputs (precondition violations);
/// `Internal` signals a broken invariant, i.e. a bug.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("Mobius transform has a pole at the given point")]
    Pole,

    #[error("cannot mix quadratic fields Q(sqrt({0})) and Q(sqrt({1}))")]
    FieldMismatch(BigInt, BigInt),

    #[error("strings have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("{0} is not the pseudocenter of a maximal interval")]
    NotMaximal(BigRational),

    #[error("radicand {0} exceeds the square-free factorization bound")]
    SquarefreeBound(BigInt),

    #[error("partial quotient does not fit in 64 bits")]
    DigitOverflow,

    #[error("orbit exceeded the step cap of {0}")]
    StepCap(usize),

    #[error("orbit degenerated: {0} restarts near zero")]
    DegenerateOrbit(usize),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
