//! Brute-force computation of `nu_e(f) = max { l : f^l not in m^[p^e] }`.
//!
//! Two independent routes: [`nu_semigroup`] enumerates exponent pairs
//! `(k1, k2)` of the terms of `f^l` and keeps those whose binomial
//! coefficient survives mod `p`; [`nu_naive`] multiplies out `f^l` over
//! `F_p`, discarding monomials inside the Frobenius power.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::arith::Prime;
use crate::base_p::multinomial_nonzero;
use crate::binomial::{Binomial, BinomialError};
use crate::engine::{fpt_truncation, FptResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("p^e = {q} exceeds the {method} budget of {limit}")]
    BudgetExceeded {
        method: &'static str,
        q: u64,
        limit: u64,
    },
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("input does not vanish at the origin")]
    NotVanishing,
    #[error(transparent)]
    Coefficient(#[from] BinomialError),
}

/// Upper bounds on `p^e` for each method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub semigroup: u64,
    pub naive: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            semigroup: 1 << 14,
            naive: 256,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NuQuery {
    pub binomial: Binomial,
    pub prime: Prime,
    pub level: u32,
}

impl NuQuery {
    pub fn new(binomial: Binomial, prime: Prime, level: u32) -> Result<Self, OracleError> {
        if level == 0 {
            return Err(OracleError::ZeroLevel);
        }
        if !binomial.vanishes_at_origin() {
            return Err(OracleError::NotVanishing);
        }
        Ok(NuQuery {
            binomial,
            prime,
            level,
        })
    }

    fn q(&self, method: &'static str, limit: u64) -> Result<u64, OracleError> {
        match self.prime.checked_pow(self.level) {
            Some(q) if q <= limit => Ok(q),
            q => Err(OracleError::BudgetExceeded {
                method,
                q: q.unwrap_or(u64::MAX),
                limit,
            }),
        }
    }
}

/// Largest `y <= bound` whose base-`p` digits fit under those of `room`
/// (digitwise `y_j <= p - 1 - x_j`); scans from the most significant digit.
fn max_carry_free_partner(x: u64, bound: u64, p: u64, q: u64) -> u64 {
    let mut place = q / p;
    let mut y = 0;
    let mut tight = true;
    while place > 0 {
        let cap = p - 1 - (x / place) % p;
        let digit = if tight {
            let b = (bound / place) % p;
            if b > cap {
                tight = false;
                cap
            } else {
                b
            }
        } else {
            cap
        };
        y += digit * place;
        place /= p;
    }
    y
}

/// `max { k1 + k2 }` over pairs with `a_i k1 + b_i k2 <= p^e - 1` in every
/// coordinate and `k1, k2` adding without carrying in base `p`.
pub fn nu_semigroup(query: &NuQuery, budget: &Budget) -> Result<u64, OracleError> {
    let q = query.q("semigroup", budget.semigroup)?;
    let p = query.prime.get();
    let rows: Vec<(u64, u64)> = query
        .binomial
        .a()
        .iter()
        .copied()
        .zip(query.binomial.b().iter().copied())
        .collect();
    let mut best = 0;
    for k1 in 0..q {
        let mut bound = q - 1;
        let mut feasible = true;
        for &(a, b) in &rows {
            let used = a * k1;
            if used > q - 1 {
                feasible = false;
                break;
            }
            if let Some(room) = (q - 1 - used).checked_div(b) {
                bound = bound.min(room);
            }
        }
        if !feasible {
            // a_i * k1 only grows with k1.
            break;
        }
        if k1 + bound <= best {
            continue;
        }
        let k2 = max_carry_free_partner(k1, bound, p, q);
        debug_assert!(multinomial_nonzero(k1, k2, p));
        best = best.max(k1 + k2);
    }
    Ok(best)
}

/// Expands `f^l` over `F_p` term by term, dropping monomials with an exponent
/// `>= p^e`, and reports the last `l` with a surviving term.
pub fn nu_naive(query: &NuQuery, budget: &Budget) -> Result<u64, OracleError> {
    let q = query.q("naive", budget.naive)?;
    let p = query.prime.get();
    let (c1, c2) = query.binomial.coefficients_mod(query.prime)?;
    let f = [
        (query.binomial.a().to_vec(), c1),
        (query.binomial.b().to_vec(), c2),
    ];

    let mut power: HashMap<Vec<u64>, u64> = HashMap::new();
    power.insert(vec![0; f[0].0.len()], 1);
    for l in 1..=q {
        let mut next: HashMap<Vec<u64>, u64> = HashMap::new();
        for (mono, &coef) in &power {
            for (exps, c) in &f {
                let prod: Vec<u64> = mono.iter().zip(exps).map(|(x, y)| x + y).collect();
                if prod.iter().any(|&x| x >= q) {
                    continue;
                }
                let entry = next.entry(prod).or_insert(0);
                *entry = (*entry + coef * c) % p;
            }
        }
        next.retain(|_, c| *c != 0);
        if next.is_empty() {
            return Ok(l - 1);
        }
        power = next;
    }
    // f vanishes at the origin, so f^q lies in m^[q].
    unreachable!("f^(p^e) survived outside the Frobenius power")
}

fn monomial_q(
    exponents: &[u64],
    prime: Prime,
    level: u32,
    method: &'static str,
    limit: u64,
) -> Result<u64, OracleError> {
    if level == 0 {
        return Err(OracleError::ZeroLevel);
    }
    if exponents.iter().all(|&a| a == 0) {
        return Err(OracleError::NotVanishing);
    }
    match prime.checked_pow(level) {
        Some(q) if q <= limit => Ok(q),
        q => Err(OracleError::BudgetExceeded {
            method,
            q: q.unwrap_or(u64::MAX),
            limit,
        }),
    }
}

/// `nu_e(x^a) = floor((p^e - 1) / max a_i)`.
pub fn nu_monomial_semigroup(
    exponents: &[u64],
    prime: Prime,
    level: u32,
    budget: &Budget,
) -> Result<u64, OracleError> {
    let q = monomial_q(exponents, prime, level, "semigroup", budget.semigroup)?;
    Ok((q - 1) / exponents.iter().copied().max().unwrap_or(1))
}

/// Raises `x^a` one factor at a time until an exponent reaches `p^e`.
pub fn nu_monomial_naive(
    exponents: &[u64],
    prime: Prime,
    level: u32,
    budget: &Budget,
) -> Result<u64, OracleError> {
    let q = monomial_q(exponents, prime, level, "naive", budget.naive)?;
    let mut power = vec![0; exponents.len()];
    for l in 1..=q {
        power.iter_mut().zip(exponents).for_each(|(x, a)| *x += a);
        if power.iter().any(|&x| x >= q) {
            return Ok(l - 1);
        }
    }
    unreachable!("x^(a p^e) has an exponent at least p^e")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub predicted_nu: u64,
    pub semigroup_nu: u64,
    pub naive_nu: Option<u64>,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Compares `p^e <fpt>_e` against both oracles. The naive oracle is skipped
/// when `p^e` is over its budget.
pub fn verify(
    query: &NuQuery,
    predicted: &FptResult,
    budget: &Budget,
) -> Result<VerificationReport, OracleError> {
    let q = query.q("semigroup", budget.semigroup)?;
    let trunc = fpt_truncation(predicted, query.prime, query.level).scale(q);
    let predicted_nu = trunc.floor().try_into().expect("p^e <fpt>_e fits in u64");
    let semigroup_nu = nu_semigroup(query, budget)?;
    let naive_nu = match nu_naive(query, budget) {
        Ok(n) => Some(n),
        Err(OracleError::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let matches = predicted_nu == semigroup_nu && naive_nu.is_none_or(|n| n == semigroup_nu);
    Ok(VerificationReport {
        predicted_nu,
        semigroup_nu,
        naive_nu,
        matches,
    })
}
