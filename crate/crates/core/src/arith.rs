//! Exact integer and rational arithmetic.
//!
//! Every threshold, polytope coordinate and truncation in this crate is an
//! exact [`Rational`]. Floating point never enters the computation path.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Unbounded nonnegative integer.
pub type Natural = BigUint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("expected a nonnegative value, got {0}")]
    Negative(Rational),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// A reduced fraction with positive denominator. Zero is stored as `0/1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rational(BigRational);

impl Rational {
    /// Reduces `numer/denom` to lowest terms with a positive denominator.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, ArithError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// Infallible constructor for literals; panics on a zero denominator.
    pub fn frac(numer: i64, denom: i64) -> Self {
        Self::new(numer, denom).expect("literal fraction with zero denominator")
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// `1 / p^e`.
    pub fn unit_fraction_pow(p: u64, e: u32) -> Self {
        Rational(BigRational::new(BigInt::one(), BigInt::from(pow(p, e))))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Panics on zero.
    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    /// Multiplies by a machine integer.
    pub fn scale(&self, k: u64) -> Self {
        Rational(&self.0 * BigRational::from_integer(BigInt::from(k)))
    }

    /// Lossy conversion for drawing only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

/// `p^e` as an unbounded integer.
pub fn pow(p: u64, e: u32) -> Natural {
    num_traits::pow(BigUint::from(p), e as usize)
}

/// `floor(p^e * alpha)` for `alpha >= 0`.
pub fn scale_floor_pow(alpha: &Rational, p: u64, e: u32) -> Result<Natural, ArithError> {
    if alpha.is_negative() {
        return Err(ArithError::Negative(alpha.clone()));
    }
    let scaled = alpha.numer() * BigInt::from(pow(p, e));
    let q = scaled.div_floor(alpha.denom());
    Ok(q.to_biguint().expect("nonnegative quotient"))
}

/// A prime number. Construction checks primality by trial division.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, ArithError> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(ArithError::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `p^e`, or `None` on `u64` overflow.
    pub fn checked_pow(self, e: u32) -> Option<u64> {
        self.0.checked_pow(e)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut k = 3u64;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithError::Parse(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d)
            }
            None => Ok(Rational::integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::integer(n)
    }
}

impl From<&Natural> for Rational {
    fn from(n: &Natural) -> Self {
        Rational::integer(BigInt::from_biguint(Sign::Plus, n.clone()))
    }
}

impl PartialEq<u64> for Rational {
    fn eq(&self, other: &u64) -> bool {
        self.0.is_integer() && *self.0.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<u64> for Rational {
    fn partial_cmp(&self, other: &u64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer(BigInt::from(*other))))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}
