//! Thresholds across a range of primes: the map `p -> fpt(f mod p)`.

use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{Prime, Rational};
use crate::binomial::Binomial;
use crate::engine::{fpt, fpt_limit, EngineError, FptResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScanError {
    #[error("empty prime range {lo}..{hi}")]
    EmptyRange { lo: u64, hi: u64 },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("p = {prime}: {source}")]
    Engine { prime: u64, source: EngineError },
    #[error(transparent)]
    Limit(EngineError),
}

/// Primes in `[lo, hi]`, optionally restricted to `p = residue (mod modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanSpec {
    lo: u64,
    hi: u64,
    congruence: Option<(u64, u64)>,
}

impl ScanSpec {
    pub fn new(lo: u64, hi: u64) -> Result<Self, ScanError> {
        if lo > hi {
            return Err(ScanError::EmptyRange { lo, hi });
        }
        Ok(ScanSpec {
            lo,
            hi,
            congruence: None,
        })
    }

    pub fn with_congruence(mut self, modulus: u64, residue: u64) -> Result<Self, ScanError> {
        if modulus == 0 {
            return Err(ScanError::ZeroModulus);
        }
        self.congruence = Some((modulus, residue % modulus));
        Ok(self)
    }

    /// Sieve of Eratosthenes over `[0, hi]`, then the range and congruence
    /// filters.
    pub fn primes(&self) -> Vec<Prime> {
        let n = self.hi as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if composite[i] {
                continue;
            }
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
            let p = i as u64;
            let keep = p >= self.lo && self.congruence.is_none_or(|(m, r)| p % m == r);
            if keep {
                out.push(Prime::new(p).expect("sieve yields primes"));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub prime: Prime,
    pub result: FptResult,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    /// Ordered by prime.
    pub rows: Vec<ScanRow>,
    /// Characteristic-zero limit of the threshold.
    pub limit: Rational,
    /// Number of rows whose threshold equals `limit`.
    pub at_limit: usize,
}

/// Evaluates every prime independently (in parallel); rows come back in
/// ascending order of `p`.
pub fn scan(g: &Binomial, spec: &ScanSpec) -> Result<ScanReport, ScanError> {
    let primes = spec.primes();
    if primes.is_empty() {
        return Err(ScanError::EmptyRange {
            lo: spec.lo,
            hi: spec.hi,
        });
    }
    let limit = fpt_limit(g).map_err(ScanError::Limit)?;
    let rows = primes
        .par_iter()
        .map(|&prime| {
            fpt(g, prime)
                .map(|result| ScanRow { prime, result })
                .map_err(|source| ScanError::Engine {
                    prime: prime.get(),
                    source,
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let at_limit = rows.iter().filter(|r| r.result.value == limit).count();
    Ok(ScanReport {
        rows,
        limit,
        at_limit,
    })
}
