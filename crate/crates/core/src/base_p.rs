//! Non-terminating base-`p` expansions of rationals in `[0, 1]`.
//!
//! Every positive value uses the expansion whose digits are not eventually
//! zero, so `1/p` is `.0 (p-1)(p-1)...` rather than `.1`. The value `0` has
//! all digits zero. With this convention the `e`-th truncation `<a>_e` is
//! strictly below `a` for every `a > 0`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{pow, Natural, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasePError {
    #[error("{0} lies outside [0, 1]")]
    OutOfRange(Rational),
    #[error("base must be at least 2, got {0}")]
    BadBase(u64),
}

fn check(alpha: &Rational, p: u64) -> Result<(), BasePError> {
    if p < 2 {
        return Err(BasePError::BadBase(p));
    }
    if alpha.is_negative() || *alpha > 1 {
        return Err(BasePError::OutOfRange(alpha.clone()));
    }
    Ok(())
}

/// `p^e * <alpha>_e`: `ceil(p^e a) - 1` when `p^e a` is an integer, otherwise
/// `floor(p^e a)`. Zero for `alpha = 0` or `e = 0`.
fn scaled_truncation(alpha: &Rational, p: u64, e: u32) -> Natural {
    if alpha.is_zero() || e == 0 {
        return Natural::zero();
    }
    let scaled = alpha.numer() * BigInt::from(pow(p, e));
    let (q, r) = scaled.div_rem(alpha.denom());
    let q = if r.is_zero() { q - 1 } else { q };
    q.to_biguint()
        .expect("positive alpha gives nonnegative truncation")
}

/// The `e`-th digit (`e >= 1`) of the non-terminating expansion.
pub fn digit(alpha: &Rational, p: u64, e: u32) -> Result<u64, BasePError> {
    check(alpha, p)?;
    assert!(e >= 1, "digits are indexed from 1");
    let hi = scaled_truncation(alpha, p, e);
    let lo = scaled_truncation(alpha, p, e - 1) * BigUint::from(p);
    Ok((hi - lo).to_u64().expect("digit fits in u64"))
}

/// `<alpha>_e`, the sum of the first `e` digits over powers of `p`.
pub fn truncate(alpha: &Rational, p: u64, e: u32) -> Result<Rational, BasePError> {
    check(alpha, p)?;
    let n = scaled_truncation(alpha, p, e);
    Ok(Rational::new(BigInt::from(n), BigInt::from(pow(p, e))).expect("p^e > 0"))
}

/// `alpha - <alpha>_e`.
pub fn tail(alpha: &Rational, p: u64, e: u32) -> Result<Rational, BasePError> {
    Ok(alpha - truncate(alpha, p, e)?)
}

/// Eventually periodic digit sequence `.pre (period)~`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DigitExpansion {
    #[serde(skip)]
    pub base: u64,
    pub preperiod: Vec<u64>,
    pub period: Vec<u64>,
}

impl DigitExpansion {
    /// Digit at 1-based position `e`.
    pub fn digit(&self, e: usize) -> u64 {
        assert!(e >= 1);
        let i = e - 1;
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    /// Sums the preperiod and the geometric series of the period.
    pub fn value(&self) -> Rational {
        let p = self.base;
        let mut head = BigInt::zero();
        for &d in &self.preperiod {
            head = head * p + d;
        }
        let mut block = BigInt::zero();
        for &d in &self.period {
            block = block * p + d;
        }
        let pre_scale = BigInt::from(pow(p, self.preperiod.len() as u32));
        let cycle = BigInt::from(pow(p, self.period.len() as u32)) - 1;
        let head = Rational::new(head, pre_scale.clone()).expect("positive scale");
        let tail = Rational::new(block, pre_scale * cycle).expect("positive scale");
        head + tail
    }

    fn is_terminating(&self) -> bool {
        self.period.iter().all(|&d| d == 0)
    }
}

impl fmt::Display for DigitExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_digits(f, &self.preperiod, &self.period, self.base)
    }
}

fn write_digits(f: &mut impl fmt::Write, pre: &[u64], period: &[u64], base: u64) -> fmt::Result {
    let mut tokens: Vec<String> = pre.iter().map(u64::to_string).collect();
    if !period.is_empty() {
        let block: Vec<String> = period.iter().map(u64::to_string).collect();
        tokens.push(format!("({})~", block.join(" ")));
    }
    write!(f, ".{} (base {base})", tokens.join(" "))
}

/// Long division over the remainder state machine; a repeated remainder
/// closes the period. `step` maps a remainder to `(digit, next remainder)`.
fn long_division(
    start: BigUint,
    base: u64,
    step: impl Fn(&BigUint) -> (u64, BigUint),
) -> (Vec<u64>, Vec<u64>) {
    let mut seen: HashMap<BigUint, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut r = start;
    loop {
        if let Some(&at) = seen.get(&r) {
            let period = digits.split_off(at);
            return (digits, period);
        }
        seen.insert(r.clone(), digits.len());
        let (d, next) = step(&r);
        debug_assert!(d < base);
        digits.push(d);
        r = next;
    }
}

fn parts(alpha: &Rational) -> (BigUint, BigUint) {
    (
        alpha.numer().to_biguint().expect("nonnegative"),
        alpha.denom().to_biguint().expect("positive"),
    )
}

/// Non-terminating expansion of `alpha`. Remainders live in `(0, b]`, which
/// makes values with `p`-power denominators end in repeating `p - 1`.
pub fn expand(alpha: &Rational, p: u64) -> Result<DigitExpansion, BasePError> {
    check(alpha, p)?;
    if alpha.is_zero() {
        return Ok(DigitExpansion {
            base: p,
            preperiod: vec![],
            period: vec![0],
        });
    }
    let (a, b) = parts(alpha);
    let (preperiod, period) = long_division(a, p, |r| {
        let rp = r * p;
        let d: BigUint = (&rp - 1u32) / &b;
        let next = rp - &d * &b;
        (d.to_u64().expect("digit < p"), next)
    });
    Ok(DigitExpansion {
        base: p,
        preperiod,
        period,
    })
}

/// Display form of `alpha` in base `p`, using the terminating expansion when
/// one exists: `8/43` renders as `.8 (base 43)`.
pub fn render(alpha: &Rational, p: u64) -> Result<String, BasePError> {
    check(alpha, p)?;
    if alpha.is_zero() || *alpha == 1 {
        return Ok(format!("{} (base {p})", alpha));
    }
    let (a, b) = parts(alpha);
    let (pre, period) = long_division(a, p, |r| {
        let (d, next) = (r * p).div_rem(&b);
        (d.to_u64().expect("digit < p"), next)
    });
    let exp = DigitExpansion {
        base: p,
        preperiod: pre,
        period,
    };
    let mut out = String::new();
    if exp.is_terminating() {
        write_digits(&mut out, &exp.preperiod, &[], p).expect("string write");
    } else {
        write_digits(&mut out, &exp.preperiod, &exp.period, p).expect("string write");
    }
    Ok(out)
}

/// `L` in the carry analysis: how many leading digit positions add without
/// carrying.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CarryLength {
    Finite(u64),
    Infinite,
}

impl fmt::Display for CarryLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CarryLength::Finite(n) => write!(f, "{n}"),
            CarryLength::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarryProfile {
    /// Positions `1..=L` have digit sums at most `p - 1`; position `L + 1`
    /// carries.
    pub carry_free: CarryLength,
    /// Largest `e <= L` with digit sum at most `p - 2`. `None` when `L` is
    /// infinite or no such position exists.
    pub slack: Option<u64>,
    /// Number of positions inspected. For an infinite `L` this is the
    /// combined preperiod plus the lcm of the two periods.
    pub certificate_depth: u64,
}

/// Digit-by-digit carry analysis of `alpha + beta` in base `p`.
pub fn carry_profile(
    alpha: &Rational,
    beta: &Rational,
    p: u64,
) -> Result<CarryProfile, BasePError> {
    let x = expand(alpha, p)?;
    let y = expand(beta, p)?;
    let rho = x.preperiod.len().max(y.preperiod.len()) as u64;
    let pi = (x.period.len() as u64).lcm(&(y.period.len() as u64));
    let depth = rho + pi;
    let mut slack = None;
    for e in 1..=depth {
        let s = x.digit(e as usize) + y.digit(e as usize);
        if s >= p {
            return Ok(CarryProfile {
                carry_free: CarryLength::Finite(e - 1),
                slack,
                certificate_depth: e,
            });
        }
        if s + 2 <= p {
            slack = Some(e);
        }
    }
    Ok(CarryProfile {
        carry_free: CarryLength::Infinite,
        slack: None,
        certificate_depth: depth,
    })
}

/// Whether `k1` and `k2` add without carrying in base `p`; by Lucas' theorem
/// this is exactly when `binom(k1 + k2, k1)` is nonzero mod `p`.
pub fn multinomial_nonzero(mut k1: u64, mut k2: u64, p: u64) -> bool {
    while k1 > 0 && k2 > 0 {
        if k1 % p + k2 % p >= p {
            return false;
        }
        k1 /= p;
        k2 /= p;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn digit_examples() {
        assert_eq!(digit(&r(1, 32), 43, 2).unwrap(), 14);
        for e in 1..6 {
            assert_eq!(digit(&Rational::one(), 7, e).unwrap(), 6);
            assert_eq!(digit(&r(1, 2), 5, e).unwrap(), 2);
            assert_eq!(digit(&Rational::zero(), 5, e).unwrap(), 0);
        }
        assert!(digit(&r(3, 2), 5, 1).is_err());
        assert!(digit(&r(-1, 2), 5, 1).is_err());
    }

    #[test]
    fn expand_examples() {
        let x = expand(&r(1, 32), 47).unwrap();
        assert_eq!(
            (x.preperiod.as_slice(), x.period.as_slice()),
            (&[][..], &[1, 22][..])
        );
        let x = expand(&r(5, 32), 37).unwrap();
        assert!(x.preperiod.is_empty());
        assert_eq!(x.period, vec![5, 28, 33, 19, 24, 10, 15, 1]);
        let x = expand(&r(1, 2), 2).unwrap();
        assert_eq!((x.preperiod, x.period), (vec![0], vec![1]));
        let x = expand(&Rational::one(), 5).unwrap();
        assert_eq!((x.preperiod, x.period), (vec![], vec![4]));
        let x = expand(&r(1, 32), 43).unwrap();
        assert_eq!(x.period, vec![1, 14, 33, 25, 22, 36, 12, 4]);
        let x = expand(&r(5, 32), 43).unwrap();
        assert_eq!(x.period, vec![6, 30, 38, 41, 28, 9, 17, 20]);
    }

    #[test]
    fn truncation_and_tail_examples() {
        assert_eq!(truncate(&r(3, 16), 43, 1).unwrap(), r(8, 43));
        assert_eq!(truncate(&r(3, 16), 43, 0).unwrap(), Rational::zero());
        assert_eq!(truncate(&r(1, 32), 37, 2).unwrap(), r(42, 1369));
        assert_eq!(tail(&r(3, 16), 43, 1).unwrap(), r(1, 688));
        assert_eq!(tail(&Rational::zero(), 3, 4).unwrap(), Rational::zero());
        assert_eq!(tail(&r(1, 4), 2, 2).unwrap(), r(1, 4));
    }

    #[test]
    fn carry_examples() {
        let (a, b) = (r(1, 32), r(5, 32));
        assert_eq!(
            carry_profile(&a, &b, 47).unwrap().carry_free,
            CarryLength::Infinite
        );
        let c = carry_profile(&a, &b, 43).unwrap();
        assert_eq!((c.carry_free, c.slack), (CarryLength::Finite(1), Some(1)));
        let c = carry_profile(&a, &b, 37).unwrap();
        assert_eq!((c.carry_free, c.slack), (CarryLength::Finite(2), Some(2)));
        let c = carry_profile(&r(19, 62), &r(37, 124), 5).unwrap();
        assert_eq!((c.carry_free, c.slack), (CarryLength::Finite(2), Some(1)));
    }

    #[test]
    fn carry_with_zero_coordinate_never_carries() {
        let c = carry_profile(&Rational::zero(), &r(2, 7), 3).unwrap();
        assert_eq!(c.carry_free, CarryLength::Infinite);
    }

    #[test]
    fn lucas_examples() {
        assert!(!multinomial_nonzero(3, 3, 2));
        assert!(multinomial_nonzero(2, 2, 5));
        assert!(multinomial_nonzero(0, 17, 3));
    }

    #[test]
    fn render_examples() {
        assert_eq!(render(&r(8, 43), 43).unwrap(), ".8 (base 43)");
        assert_eq!(
            render(&r(1283, 6845), 37).unwrap(),
            ".6 34 (22 7 14 29)~ (base 37)"
        );
        assert_eq!(render(&r(3, 16), 47).unwrap(), ".(8 38)~ (base 47)");
        assert_eq!(render(&Rational::one(), 5).unwrap(), "1 (base 5)");
        assert_eq!(
            expand(&r(8, 43), 43).unwrap().to_string(),
            ".7 (42)~ (base 43)"
        );
    }
}
