use std::fmt;

use thiserror::Error;

use crate::arith::Prime;
use crate::polytope::{PolytopeError, SplittingMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BinomialError {
    #[error("exponent vectors and variable names have different lengths")]
    LengthMismatch,
    #[error("monomials not distinct")]
    NotDistinct,
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),
    #[error("coefficient must be nonzero")]
    ZeroCoefficient,
    #[error("coefficient {coefficient} vanishes modulo {prime}")]
    CoefficientVanishesModP { coefficient: i64, prime: u64 },
}

/// `c1 * x^a + c2 * x^b` with distinct exponent vectors. Variables absent from
/// both monomials are dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Binomial {
    variables: Vec<String>,
    a: Vec<u64>,
    b: Vec<u64>,
    coefficients: (i64, i64),
}

impl Binomial {
    pub fn new(variables: Vec<String>, a: Vec<u64>, b: Vec<u64>) -> Result<Self, BinomialError> {
        if variables.len() != a.len() || a.len() != b.len() {
            return Err(BinomialError::LengthMismatch);
        }
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(BinomialError::DuplicateVariable(v.clone()));
            }
        }
        let keep: Vec<usize> = (0..a.len()).filter(|&i| a[i] != 0 || b[i] != 0).collect();
        let variables: Vec<String> = keep.iter().map(|&i| variables[i].clone()).collect();
        let a: Vec<u64> = keep.iter().map(|&i| a[i]).collect();
        let b: Vec<u64> = keep.iter().map(|&i| b[i]).collect();
        if a == b {
            return Err(BinomialError::NotDistinct);
        }
        Ok(Binomial {
            variables,
            a,
            b,
            coefficients: (1, 1),
        })
    }

    /// Names the variables `x1, x2, ...`.
    pub fn from_exponents(a: &[u64], b: &[u64]) -> Result<Self, BinomialError> {
        let names = (1..=a.len()).map(|i| format!("x{i}")).collect();
        Self::new(names, a.to_vec(), b.to_vec())
    }

    pub fn with_coefficients(mut self, c1: i64, c2: i64) -> Result<Self, BinomialError> {
        if c1 == 0 || c2 == 0 {
            return Err(BinomialError::ZeroCoefficient);
        }
        self.coefficients = (c1, c2);
        Ok(self)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn a(&self) -> &[u64] {
        &self.a
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    pub fn coefficients(&self) -> (i64, i64) {
        self.coefficients
    }

    /// The coefficients as residues in `1..p`.
    pub fn coefficients_mod(&self, p: Prime) -> Result<(u64, u64), BinomialError> {
        let reduce = |c: i64| {
            let r = c.rem_euclid(p.get() as i64) as u64;
            if r == 0 {
                Err(BinomialError::CoefficientVanishesModP {
                    coefficient: c,
                    prime: p.get(),
                })
            } else {
                Ok(r)
            }
        };
        Ok((reduce(self.coefficients.0)?, reduce(self.coefficients.1)?))
    }

    /// True when neither monomial is the constant `1`.
    pub fn vanishes_at_origin(&self) -> bool {
        self.a.iter().any(|&x| x > 0) && self.b.iter().any(|&x| x > 0)
    }

    pub fn splitting_matrix(&self) -> Result<SplittingMatrix, PolytopeError> {
        SplittingMatrix::build(&self.a, &self.b)
    }

    /// Exchanges the two monomials (and their coefficients).
    pub fn swapped(&self) -> Self {
        Binomial {
            variables: self.variables.clone(),
            a: self.b.clone(),
            b: self.a.clone(),
            coefficients: (self.coefficients.1, self.coefficients.0),
        }
    }

    /// Reorders variables so that new position `i` holds old variable `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.variables.len());
        Binomial {
            variables: order.iter().map(|&i| self.variables[i].clone()).collect(),
            a: order.iter().map(|&i| self.a[i]).collect(),
            b: order.iter().map(|&i| self.b[i]).collect(),
            coefficients: self.coefficients,
        }
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    coeff: i64,
    vars: &[String],
    exps: &[u64],
) -> fmt::Result {
    let mut factors: Vec<String> = Vec::new();
    if coeff != 1 {
        factors.push(coeff.to_string());
    }
    for (v, &e) in vars.iter().zip(exps) {
        match e {
            0 => {}
            1 => factors.push(v.clone()),
            _ => factors.push(format!("{v}^{e}")),
        }
    }
    if factors.is_empty() {
        factors.push("1".to_string());
    }
    f.write_str(&factors.join("*"))
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self.coefficients.0, &self.variables, &self.a)?;
        f.write_str(" + ")?;
        write_term(f, self.coefficients.1, &self.variables, &self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn drops_unused_variables() {
        let g = Binomial::new(names(&["x", "y", "z"]), vec![2, 0, 0], vec![0, 0, 3]).unwrap();
        assert_eq!(g.variables(), &["x".to_string(), "z".to_string()]);
        assert_eq!(g.to_string(), "x^2 + z^3");
    }

    #[test]
    fn rejects_equal_monomials() {
        assert_eq!(
            Binomial::from_exponents(&[2, 1], &[2, 1]),
            Err(BinomialError::NotDistinct)
        );
        assert_eq!(
            Binomial::new(names(&["x", "x"]), vec![1, 0], vec![0, 1]),
            Err(BinomialError::DuplicateVariable("x".into()))
        );
    }

    #[test]
    fn coefficients() {
        let g = Binomial::from_exponents(&[1, 0], &[0, 1])
            .unwrap()
            .with_coefficients(3, -1)
            .unwrap();
        assert_eq!(g.to_string(), "3*x1 + -1*x2");
        let p = Prime::new(3).unwrap();
        assert!(matches!(
            g.coefficients_mod(p),
            Err(BinomialError::CoefficientVanishesModP { .. })
        ));
        assert_eq!(g.coefficients_mod(Prime::new(5).unwrap()), Ok((3, 4)));
        assert!(g.clone().with_coefficients(0, 1).is_err());
    }

    #[test]
    fn vanishing() {
        assert!(Binomial::from_exponents(&[2, 0], &[2, 1])
            .unwrap()
            .vanishes_at_origin());
        assert!(!Binomial::from_exponents(&[0], &[1])
            .unwrap()
            .vanishes_at_origin());
    }
}
