//! Scalar abstraction shared by the exact (rational) and floating paths.
//!
//! A scalar kind is fixed per arrangement/mass and never mixed within one
//! evaluation. Conversion rational -> float is explicit and lossy
//! ([`Scalar::to_f64_lossy`]); float -> rational is not provided at all, so
//! exact certificates can never be contaminated by floating-point data.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    const EXACT: bool;

    fn from_int(n: i64) -> Self;

    /// `p / q` with `q != 0`.
    fn from_ratio(p: i64, q: i64) -> Self;

    fn abs_val(&self) -> Self;

    /// Exact view as a rational, if this scalar kind is exact.
    fn to_rational(&self) -> Option<BigRational>;

    /// Exact conversion from a rational, if representable without loss.
    fn from_rational_exact(r: &BigRational) -> Option<Self>;

    /// Lossy conversion used when projecting exact data onto the float path.
    fn to_f64_lossy(&self) -> f64;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        p as f64 / q as f64
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn to_rational(&self) -> Option<BigRational> {
        None
    }

    fn from_rational_exact(_: &BigRational) -> Option<Self> {
        None
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn from_rational_exact(r: &BigRational) -> Option<Self> {
        Some(r.clone())
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Shorthand for a rational `p/q` from machine integers.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
