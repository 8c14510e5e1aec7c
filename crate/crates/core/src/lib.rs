//! Exact F-pure thresholds of binomials over prime fields.
//!
//! The threshold of `g = c1 x^a + c2 x^b` at the origin is computed in closed
//! form from the splitting polytope of `{x^a, x^b}` and the base-`p` digits of
//! its maximal point ([`engine`]), and can be cross-checked against two
//! brute-force oracles ([`oracle`]).
//!
//! ```
//! use binfpt::{fpt, Binomial, Prime, Rational};
//!
//! let f = Binomial::from_exponents(&[7, 2], &[5, 6]).unwrap();
//! let res = fpt(&f, Prime::new(43).unwrap()).unwrap();
//! assert_eq!(res.value, Rational::frac(8, 43));
//! ```

pub mod arith;
pub mod base_p;
pub mod binomial;
pub mod engine;
pub mod oracle;
pub mod polytope;
pub mod scan;

pub use arith::{ArithError, Natural, Prime, Rational};
pub use base_p::{CarryLength, CarryProfile, DigitExpansion};
pub use binomial::{Binomial, BinomialError};
pub use engine::{
    candidates, core_fpt, factor, fpt, fpt_limit, fpt_truncation, monomial_fpt, Candidate, Core,
    Diagnostics, EngineError, Factorization, FptCase, FptResult,
};
pub use oracle::{
    nu_monomial_naive, nu_monomial_semigroup, nu_naive, nu_semigroup, verify, Budget, NuQuery,
    OracleError, VerificationReport,
};
pub use polytope::{Axis, MaximalPoint, Maximum, Point2, PolytopeError, Region, SplittingMatrix};
pub use scan::{scan, ScanError, ScanReport, ScanRow, ScanSpec};
