//! Front end for `binfpt`: polynomial parsing, reports, SVG figures and the
//! subcommand drivers used by the binary.

pub mod parse;
pub mod report;
pub mod svg;

use std::path::Path;

use binfpt::{
    factor, fpt, fpt_limit, fpt_truncation, nu_monomial_naive, nu_monomial_semigroup, nu_naive,
    nu_semigroup, verify, Binomial, Budget, Diagnostics, FptCase, FptResult, NuQuery, OracleError,
    Prime, ScanSpec, VerificationReport,
};
use thiserror::Error;

use parse::{parse_binomial, parse_polynomial, Monomial, ParseError, Polynomial};
use report::{FptReport, OracleJson, PolytopeJson};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(OracleError),
    #[error("cannot write {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Budget(_) => 3,
            _ => 1,
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BudgetExceeded { .. } => CliError::Budget(e),
            other => input(other),
        }
    }
}

/// Text to print and the process exit code (0, or 2 on a verification
/// mismatch).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn prime(p: u64) -> Result<Prime, CliError> {
    Prime::new(p).map_err(input)
}

fn emit<T: serde::Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(value).expect("report serializes");
        s.push('\n');
        s
    } else {
        text()
    }
}

fn monomial_part(g: &Binomial) -> Option<String> {
    let parts = factor(g).monomial;
    if parts.is_empty() {
        return None;
    }
    let (variables, exponents) = parts.into_iter().unzip();
    Some(
        Monomial {
            variables,
            exponents,
            coefficient: 1,
        }
        .to_string(),
    )
}

fn check_coefficients(g: &Binomial, p: Prime) -> Result<(), CliError> {
    g.coefficients_mod(p).map(|_| ()).map_err(input)
}

fn monomial_result(m: &Monomial) -> Result<FptResult, CliError> {
    let value = binfpt::monomial_fpt(&m.exponents)
        .ok_or_else(|| input("input does not vanish at the origin"))?;
    Ok(FptResult {
        value: value.clone(),
        case: FptCase::MonomialOnly,
        diagnostics: Diagnostics {
            monomial_fpt: Some(value),
            ..Default::default()
        },
    })
}

fn predicted_nu(result: &FptResult, p: Prime, level: u32) -> u64 {
    let q = p.checked_pow(level).expect("checked against the budget");
    fpt_truncation(result, p, level)
        .scale(q)
        .floor()
        .try_into()
        .expect("nu fits in u64")
}

/// `compute`: the threshold at one prime, optionally checked against the
/// oracles at level `verify_level`.
pub fn compute(
    poly: &str,
    p: u64,
    verify_level: Option<u32>,
    json: bool,
) -> Result<Outcome, CliError> {
    let parsed = parse_polynomial(poly)?;
    let p = prime(p)?;
    let budget = Budget::default();
    let (result, mono, limit) = match &parsed {
        Polynomial::Binomial(g) => {
            check_coefficients(g, p)?;
            (
                fpt(g, p).map_err(input)?,
                monomial_part(g),
                Some(fpt_limit(g).map_err(input)?),
            )
        }
        Polynomial::Monomial(m) => {
            if m.coefficient.rem_euclid(p.get() as i64) == 0 {
                return Err(input(format!(
                    "coefficient {} vanishes modulo {p}",
                    m.coefficient
                )));
            }
            let r = monomial_result(m)?;
            let limit = r.value.clone();
            (r, None, Some(limit))
        }
    };
    let mut rep = FptReport::new(parsed.to_string(), p, &result, mono, limit.as_ref());
    if let Some(level) = verify_level {
        let v = match &parsed {
            Polynomial::Binomial(g) => {
                verify(&NuQuery::new(g.clone(), p, level)?, &result, &budget)?
            }
            Polynomial::Monomial(m) => {
                let semigroup_nu = nu_monomial_semigroup(&m.exponents, p, level, &budget)?;
                let naive_nu = match nu_monomial_naive(&m.exponents, p, level, &budget) {
                    Ok(n) => Some(n),
                    Err(OracleError::BudgetExceeded { .. }) => None,
                    Err(e) => return Err(e.into()),
                };
                let predicted_nu = predicted_nu(&result, p, level);
                let matches =
                    predicted_nu == semigroup_nu && naive_nu.is_none_or(|n| n == semigroup_nu);
                VerificationReport {
                    predicted_nu,
                    semigroup_nu,
                    naive_nu,
                    matches,
                }
            }
        };
        rep.verification = Some(v);
    }
    let code = if rep.verification.as_ref().is_some_and(|v| !v.matches) {
        2
    } else {
        0
    };
    Ok(Outcome {
        stdout: emit(json, &rep, || rep.to_text()),
        code,
    })
}

/// `scan`: thresholds over a prime range.
pub fn scan(
    poly: &str,
    lo: u64,
    hi: u64,
    congruence: Option<(u64, u64)>,
    json: bool,
) -> Result<Outcome, CliError> {
    let g = parse_binomial(poly)?;
    let mut spec = ScanSpec::new(lo, hi).map_err(input)?;
    if let Some((m, r)) = congruence {
        spec = spec.with_congruence(m, r).map_err(input)?;
    }
    let report = binfpt::scan(&g, &spec).map_err(input)?;
    let out = report::scan_report(&g.to_string(), &report, monomial_part(&g));
    Ok(Outcome::ok(emit(json, &out, || out.to_text())))
}

/// `polytope`: vertices and maximal point; with `svg` also writes a figure.
/// `decomposition` adds the pieces for prime `p` at level `e` (default: the
/// engine's `d`, else 1).
pub fn polytope(
    poly: &str,
    svg_path: Option<&Path>,
    decomposition: Option<(u64, Option<u32>)>,
    json: bool,
) -> Result<Outcome, CliError> {
    let g = parse_binomial(poly)?;
    let e = g.splitting_matrix().map_err(input)?;
    let out = PolytopeJson::new(&e);
    if let Some(path) = svg_path {
        let deco = match decomposition {
            Some((p, level)) => {
                let p = prime(p)?;
                let level = match level {
                    Some(l) => l,
                    None => fpt(&g, p)
                        .map_err(input)?
                        .diagnostics
                        .slack
                        .map_or(1, |d| d as u32),
                };
                Some((p, level))
            }
            None => None,
        };
        let drawing = svg::render(&g, deco).map_err(input)?;
        std::fs::write(path, drawing).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
    }
    Ok(Outcome::ok(emit(json, &out, || out.to_text())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Semigroup,
    Naive,
    Both,
}

/// `oracle`: `nu_e` by brute force.
pub fn oracle(
    poly: &str,
    p: u64,
    level: u32,
    method: Method,
    json: bool,
) -> Result<Outcome, CliError> {
    let parsed = parse_polynomial(poly)?;
    let p = prime(p)?;
    let budget = Budget::default();
    let want_semi = method != Method::Naive;
    let want_naive = method != Method::Semigroup;
    let (semigroup_nu, naive_nu) = match &parsed {
        Polynomial::Binomial(g) => {
            let q = NuQuery::new(g.clone(), p, level)?;
            let semi = want_semi.then(|| nu_semigroup(&q, &budget)).transpose()?;
            if want_naive {
                check_coefficients(g, p)?;
            }
            (semi, want_naive.then(|| nu_naive(&q, &budget)).transpose()?)
        }
        Polynomial::Monomial(m) => (
            want_semi
                .then(|| nu_monomial_semigroup(&m.exponents, p, level, &budget))
                .transpose()?,
            want_naive
                .then(|| nu_monomial_naive(&m.exponents, p, level, &budget))
                .transpose()?,
        ),
    };
    let matches = semigroup_nu.zip(naive_nu).map(|(a, b)| a == b);
    let out = OracleJson {
        input: parsed.to_string(),
        prime: p.get(),
        level,
        semigroup_nu,
        naive_nu,
        matches,
    };
    let code = if matches == Some(false) { 2 } else { 0 };
    Ok(Outcome {
        stdout: emit(json, &out, || out.to_text()),
        code,
    })
}

/// `LO..HI` (inclusive).
pub fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| format!("not a number: {t:?}"))
    };
    Ok((num(lo)?, num(hi.trim_start_matches('='))?))
}
