//! Integer Mobius matrices encoding continued-fraction steps.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quadratic::QuadraticNumber;

/// Sign of a nonzero orbit point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn of(x: &QuadraticNumber) -> Sign {
        if x.signum() == std::cmp::Ordering::Less {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }

    pub fn to_bigint(self) -> BigInt {
        match self {
            Sign::Neg => BigInt::from(-1),
            Sign::Pos => BigInt::one(),
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Neg => -1,
            Sign::Pos => 1,
        }
    }
}

/// A 2x2 integer matrix acting on the real line by `x -> (p11 x + p12)/(p21 x + p22)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MobiusMatrix {
    pub p11: BigInt,
    pub p12: BigInt,
    pub p21: BigInt,
    pub p22: BigInt,
}

impl MobiusMatrix {
    pub fn identity() -> Self {
        MobiusMatrix {
            p11: BigInt::one(),
            p12: BigInt::zero(),
            p21: BigInt::zero(),
            p22: BigInt::one(),
        }
    }

    pub fn new(p11: i64, p12: i64, p21: i64, p22: i64) -> Self {
        MobiusMatrix {
            p11: BigInt::from(p11),
            p12: BigInt::from(p12),
            p21: BigInt::from(p21),
            p22: BigInt::from(p22),
        }
    }

    /// The step matrix `[[0, eps], [1, c]]` of one continued-fraction digit.
    pub fn digit(eps: Sign, c: &BigInt) -> Self {
        MobiusMatrix {
            p11: BigInt::zero(),
            p12: eps.to_bigint(),
            p21: BigInt::one(),
            p22: c.clone(),
        }
    }

    pub fn mul(&self, rhs: &MobiusMatrix) -> MobiusMatrix {
        MobiusMatrix {
            p11: &self.p11 * &rhs.p11 + &self.p12 * &rhs.p21,
            p12: &self.p11 * &rhs.p12 + &self.p12 * &rhs.p22,
            p21: &self.p21 * &rhs.p11 + &self.p22 * &rhs.p21,
            p22: &self.p21 * &rhs.p12 + &self.p22 * &rhs.p22,
        }
    }

    pub fn det(&self) -> BigInt {
        &self.p11 * &self.p22 - &self.p12 * &self.p21
    }

    pub fn is_identity(&self) -> bool {
        self.p11.is_one() && self.p12.is_zero() && self.p21.is_zero() && self.p22.is_one()
    }

    /// Applies the transform to an exact point. Errors at the pole.
    pub fn apply(&self, x: &QuadraticNumber) -> Result<QuadraticNumber> {
        let num = QuadraticNumber::new(
            &self.p11 * x.coeff_a() + &self.p12 * x.denom(),
            &self.p11 * x.coeff_b(),
            x.denom().clone(),
            x.radicand().clone(),
        )?;
        let den = QuadraticNumber::new(
            &self.p21 * x.coeff_a() + &self.p22 * x.denom(),
            &self.p21 * x.coeff_b(),
            x.denom().clone(),
            x.radicand().clone(),
        )?;
        if den.is_zero() {
            return Err(Error::Pole);
        }
        Ok(num.mul(&den.recip()?))
    }

    pub fn apply_rational(&self, x: &BigRational) -> Result<BigRational> {
        let num = &self.p11 * x.numer() + &self.p12 * x.denom();
        let den = &self.p21 * x.numer() + &self.p22 * x.denom();
        if den.is_zero() {
            return Err(Error::Pole);
        }
        Ok(BigRational::new(num, den))
    }

    /// Inverse of a unimodular matrix (`det = +-1`).
    pub fn inverse_unimodular(&self) -> Result<MobiusMatrix> {
        let det = self.det();
        if det.abs() != BigInt::one() {
            return Err(Error::Domain(format!("matrix with det {det} is not unimodular")));
        }
        Ok(MobiusMatrix {
            p11: &self.p22 * &det,
            p12: -&self.p12 * &det,
            p21: -&self.p21 * &det,
            p22: &self.p11 * &det,
        })
    }
}

impl fmt::Display for MobiusMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.p11, self.p12, self.p21, self.p22)
    }
}
