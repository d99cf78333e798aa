use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{radd, rmul, rsub};

/// Exact field arithmetic used by [`Poly`](super::Poly) and friends.
///
/// The `*_ref` methods exist so generic code can work on borrowed values
/// without cloning both operands.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_rational(r: BigRational) -> Self;

    fn div_ref(&self, other: &Self) -> Self {
        self.mul_ref(&other.inv())
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }
}

impl Field for BigRational {
    fn add_ref(&self, other: &Self) -> Self {
        radd(self, other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        rsub(self, other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        rmul(self, other)
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        self.recip()
    }
    fn from_rational(r: BigRational) -> Self {
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// A sign could not be certified before the precision cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("sign undecided at {bits} bits")]
pub struct PrecisionExhausted {
    pub bits: u32,
}

/// Exact sign of a real field element, possibly via certified numerics.
pub trait CertifiedSign {
    fn certified_sign(&self, max_bits: u32) -> Result<Sign, PrecisionExhausted>;
}

impl CertifiedSign for BigRational {
    fn certified_sign(&self, _max_bits: u32) -> Result<Sign, PrecisionExhausted> {
        Ok(if self.is_zero() {
            Sign::Zero
        } else if self.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        })
    }
}
