//! Polynomial text: `term ('+' term)*`, where a term is
//! `[coefficient '*'] factor ('*' factor)*` and a factor is `var ['^' n]`.

use std::fmt;

use binfpt::{Binomial, BinomialError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("expected exactly two terms, found {0}")]
    TermCount(usize),
    #[error("monomials not distinct")]
    NotDistinct,
    #[error("zero coefficient")]
    ZeroCoefficient,
    #[error("malformed exponent {0:?}")]
    MalformedExponent(String),
    #[error("malformed coefficient {0:?}")]
    MalformedCoefficient(String),
    #[error("unexpected {0:?} in term {1:?}")]
    Unexpected(String, String),
}

/// A single term: `coefficient * x^a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub variables: Vec<String>,
    pub exponents: Vec<u64>,
    pub coefficient: i64,
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors: Vec<String> = Vec::new();
        if self.coefficient != 1 {
            factors.push(self.coefficient.to_string());
        }
        for (v, &e) in self.variables.iter().zip(&self.exponents) {
            match e {
                0 => {}
                1 => factors.push(v.clone()),
                _ => factors.push(format!("{v}^{e}")),
            }
        }
        if factors.is_empty() {
            factors.push("1".into());
        }
        f.write_str(&factors.join("*"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Polynomial {
    Monomial(Monomial),
    Binomial(Binomial),
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Polynomial::Monomial(m) => m.fmt(f),
            Polynomial::Binomial(g) => g.fmt(f),
        }
    }
}

struct Term {
    coefficient: i64,
    powers: Vec<(String, u64)>,
}

fn is_variable(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
}

fn parse_term(text: &str) -> Result<Term, ParseError> {
    let pieces: Vec<&str> = text.split('*').map(str::trim).collect();
    let mut rest = &pieces[..];
    let mut coefficient = 1;
    let first = pieces[0];
    if first.starts_with(|c: char| c.is_ascii_digit() || c == '-') {
        coefficient = first
            .parse::<i64>()
            .map_err(|_| ParseError::MalformedCoefficient(first.to_string()))?;
        if coefficient == 0 {
            return Err(ParseError::ZeroCoefficient);
        }
        rest = &pieces[1..];
    }
    if rest.is_empty() {
        return Err(ParseError::Unexpected(
            "end of term".into(),
            text.trim().into(),
        ));
    }
    let mut powers = Vec::new();
    for factor in rest {
        let (var, exp) = match factor.split_once('^') {
            Some((v, e)) => {
                let e = e.trim();
                let n = e
                    .parse::<u64>()
                    .ok()
                    .filter(|&n| n > 0 && e.bytes().all(|b| b.is_ascii_digit()))
                    .ok_or_else(|| ParseError::MalformedExponent(e.to_string()))?;
                (v.trim(), n)
            }
            None => (*factor, 1),
        };
        if !is_variable(var) {
            let what = if var.is_empty() { "empty factor" } else { var };
            return Err(ParseError::Unexpected(what.into(), text.trim().into()));
        }
        powers.push((var.to_string(), exp));
    }
    Ok(Term {
        coefficient,
        powers,
    })
}

/// Variable names in order of first appearance, and one
/// `(coefficient, exponents)` row per term.
type Terms = (Vec<String>, Vec<(i64, Vec<u64>)>);

fn parse_terms(text: &str) -> Result<Terms, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let terms = text
        .split('+')
        .map(parse_term)
        .collect::<Result<Vec<_>, _>>()?;
    let mut names: Vec<String> = Vec::new();
    for t in &terms {
        for (v, _) in &t.powers {
            if !names.contains(v) {
                names.push(v.clone());
            }
        }
    }
    let rows = terms
        .into_iter()
        .map(|t| {
            let mut exps = vec![0u64; names.len()];
            for (v, e) in t.powers {
                let i = names.iter().position(|n| *n == v).expect("collected above");
                exps[i] += e;
            }
            (t.coefficient, exps)
        })
        .collect();
    Ok((names, rows))
}

/// Parses exactly two terms into a [`Binomial`]; variables are ordered by
/// first appearance.
pub fn parse_binomial(text: &str) -> Result<Binomial, ParseError> {
    match parse_polynomial(text)? {
        Polynomial::Binomial(g) => Ok(g),
        Polynomial::Monomial(_) => Err(ParseError::TermCount(1)),
    }
}

/// Like [`parse_binomial`] but also accepts a single term.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, ParseError> {
    let (names, mut rows) = parse_terms(text)?;
    match rows.len() {
        1 => {
            let (coefficient, exponents) = rows.pop().expect("one row");
            Ok(Polynomial::Monomial(Monomial {
                variables: names,
                exponents,
                coefficient,
            }))
        }
        2 => {
            let (c2, b) = rows.pop().expect("two rows");
            let (c1, a) = rows.pop().expect("two rows");
            let g = Binomial::new(names, a, b).map_err(|e| match e {
                BinomialError::NotDistinct => ParseError::NotDistinct,
                other => unreachable!("parser produced {other}"),
            })?;
            Ok(Polynomial::Binomial(
                g.with_coefficients(c1, c2)
                    .map_err(|_| ParseError::ZeroCoefficient)?,
            ))
        }
        n => Err(ParseError::TermCount(n)),
    }
}
