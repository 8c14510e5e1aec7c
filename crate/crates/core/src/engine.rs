//! F-pure thresholds of binomials at the origin.
//!
//! A binomial `g` is split as `g = mu * h` where `mu` collects every variable
//! with the same exponent in both monomials. The threshold of `g` is the
//! minimum of the monomial threshold of `mu` and the threshold of `h`; the
//! latter is read off the splitting polytope of `h` and the base-`p` digits
//! of its maximal point.

use serde::Serialize;
use thiserror::Error;

use crate::arith::{Prime, Rational};
use crate::base_p::{self, BasePError, CarryLength};
use crate::binomial::Binomial;
use crate::polytope::{Axis, MaximalPoint, Maximum, Point2, PolytopeError, SplittingMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("input does not vanish at the origin")]
    NotVanishing,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    BaseP(#[from] BasePError),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FptCase {
    /// The non-monomial factor is a unit at the origin.
    MonomialOnly,
    /// Maximal coordinate sum above one: the threshold is 1.
    StandardGt1,
    /// The maximal point's coordinates add without carrying.
    CarryFree,
    Truncated,
    TruncatedPlusEpsilon,
    /// Minimum of a monomial factor and a binomial core.
    MinCombined,
}

impl FptCase {
    pub fn tag(self) -> &'static str {
        match self {
            FptCase::MonomialOnly => "MONOMIAL_ONLY",
            FptCase::StandardGt1 => "STANDARD_GT1",
            FptCase::CarryFree => "CARRY_FREE",
            FptCase::Truncated => "TRUNCATED",
            FptCase::TruncatedPlusEpsilon => "TRUNCATED_PLUS_EPSILON",
            FptCase::MinCombined => "MIN_COMBINED",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub eta: Option<Point2>,
    pub eta_sum: Option<Rational>,
    pub carry_free: Option<CarryLength>,
    /// Last position `d <= L` whose digit sum is at most `p - 2`.
    pub slack: Option<u64>,
    pub epsilon: Option<Rational>,
    pub monomial_fpt: Option<Rational>,
    pub core_fpt: Option<Rational>,
    pub core_case: Option<FptCase>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FptResult {
    pub value: Rational,
    pub case: FptCase,
    pub diagnostics: Diagnostics,
}

/// What remains after pulling out the common monomial factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Core {
    Binomial(Binomial),
    /// One monomial of the core is `1`, so the core is a unit at the origin.
    Unit(Binomial),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// Variables with equal exponents in both monomials, with that exponent.
    pub monomial: Vec<(String, u64)>,
    pub core: Core,
}

pub fn factor(g: &Binomial) -> Factorization {
    let mut monomial = Vec::new();
    let (mut names, mut a, mut b) = (Vec::new(), Vec::new(), Vec::new());
    for ((v, &x), &y) in g.variables().iter().zip(g.a()).zip(g.b()) {
        if x == y {
            monomial.push((v.clone(), x));
        } else {
            names.push(v.clone());
            a.push(x);
            b.push(y);
        }
    }
    let (c1, c2) = g.coefficients();
    let core = Binomial::new(names, a, b)
        .and_then(|h| h.with_coefficients(c1, c2))
        .expect("distinct monomials leave a nonempty core");
    let core = if core.vanishes_at_origin() {
        Core::Binomial(core)
    } else {
        Core::Unit(core)
    };
    Factorization { monomial, core }
}

/// `min 1/a_i` over the positive exponents; `None` for the empty monomial.
pub fn monomial_fpt(exponents: &[u64]) -> Option<Rational> {
    exponents
        .iter()
        .copied()
        .filter(|&a| a > 0)
        .max()
        .map(|a| Rational::from(a).recip())
}

fn unique_maximum(e: &SplittingMatrix) -> Result<MaximalPoint, EngineError> {
    match e.maximal_point() {
        Maximum::Unique(m) => Ok(m),
        Maximum::NonUnique(_) => Err(EngineError::Internal("constant row reached core".into())),
    }
}

/// Threshold of a binomial with no equal-exponent variable.
pub fn core_fpt(h: &Binomial, p: Prime) -> Result<FptResult, EngineError> {
    let e = h.splitting_matrix()?;
    let eta = unique_maximum(&e)?;
    let mut diag = Diagnostics {
        eta: Some(eta.point.clone()),
        eta_sum: Some(eta.sum.clone()),
        ..Default::default()
    };
    if eta.sum > 1 {
        return Ok(FptResult {
            value: Rational::one(),
            case: FptCase::StandardGt1,
            diagnostics: diag,
        });
    }

    let pp = p.get();
    let (eta1, eta2) = (&eta.point.s1, &eta.point.s2);
    let profile = base_p::carry_profile(eta1, eta2, pp)?;
    diag.carry_free = Some(profile.carry_free);
    let big_l = match profile.carry_free {
        CarryLength::Infinite => {
            return Ok(FptResult {
                value: eta.sum.clone(),
                case: FptCase::CarryFree,
                diagnostics: diag,
            });
        }
        CarryLength::Finite(l) => l,
    };
    let d = profile
        .slack
        .ok_or_else(|| EngineError::Internal(format!("no slack digit at or before L = {big_l}")))?;
    diag.slack = Some(d);
    let (big_l, d) = (to_level(big_l)?, to_level(d)?);

    let step = Rational::unit_fraction_pow(pp, d);
    let base = Point2::new(
        base_p::truncate(eta1, pp, d)?,
        base_p::truncate(eta2, pp, d)?,
    );
    let truncated_sum = base_p::truncate(&eta.sum, pp, big_l)?;
    if base.sum() + &step != truncated_sum {
        return Err(EngineError::Internal(format!(
            "<eta1>_d + <eta2>_d + 1/p^d = {} differs from <|eta|>_L = {truncated_sum}",
            base.sum() + &step
        )));
    }

    let rays: Vec<Rational> = candidates(&e, &eta.point, pp, d)?
        .into_iter()
        .filter(|c| c.lower_interior)
        .filter_map(|c| c.room)
        .collect();
    let Some(epsilon) = rays.into_iter().max() else {
        return Ok(FptResult {
            value: truncated_sum,
            case: FptCase::Truncated,
            diagnostics: diag,
        });
    };
    let tail = &eta.sum - &truncated_sum;
    if !epsilon.is_positive() || epsilon > tail {
        return Err(EngineError::Internal(format!(
            "epsilon {epsilon} outside (0, {tail}]"
        )));
    }
    diag.epsilon = Some(epsilon.clone());
    Ok(FptResult {
        value: truncated_sum + epsilon,
        case: FptCase::TruncatedPlusEpsilon,
        diagnostics: diag,
    })
}

/// `<eta>_d` shifted by `1/p^d` along one axis, with the room `room` left
/// along the other axis (`ray`). Only lower-interior candidates contribute
/// to epsilon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub point: Point2,
    pub ray: Axis,
    pub lower_interior: bool,
    pub room: Option<Rational>,
}

pub fn candidates(
    e: &SplittingMatrix,
    eta: &Point2,
    p: u64,
    d: u32,
) -> Result<[Candidate; 2], BasePError> {
    let step = Rational::unit_fraction_pow(p, d);
    let base = Point2::new(
        base_p::truncate(&eta.s1, p, d)?,
        base_p::truncate(&eta.s2, p, d)?,
    );
    let make = |shift: Point2, ray: Axis| {
        let point = &base + &shift;
        Candidate {
            lower_interior: e.contains_lower_interior(&point),
            room: e.ray_max_delta(&point, ray),
            point,
            ray,
        }
    };
    Ok([
        make(Point2::new(step.clone(), Rational::zero()), Axis::S2),
        make(Point2::new(Rational::zero(), step), Axis::S1),
    ])
}

fn to_level(n: u64) -> Result<u32, EngineError> {
    u32::try_from(n).map_err(|_| EngineError::Internal(format!("digit position {n} too large")))
}

/// Threshold of an arbitrary binomial vanishing at the origin.
pub fn fpt(g: &Binomial, p: Prime) -> Result<FptResult, EngineError> {
    let parts = factor(g);
    let exps: Vec<u64> = parts.monomial.iter().map(|(_, a)| *a).collect();
    let mono = monomial_fpt(&exps);
    match (&parts.core, mono) {
        (Core::Unit(_), None) => Err(EngineError::NotVanishing),
        (Core::Unit(_), Some(m)) => Ok(FptResult {
            value: m.clone(),
            case: FptCase::MonomialOnly,
            diagnostics: Diagnostics {
                monomial_fpt: Some(m),
                ..Default::default()
            },
        }),
        (Core::Binomial(h), None) => core_fpt(h, p),
        (Core::Binomial(h), Some(m)) => {
            let core = core_fpt(h, p)?;
            let mut diag = core.diagnostics;
            diag.monomial_fpt = Some(m.clone());
            diag.core_fpt = Some(core.value.clone());
            diag.core_case = Some(core.case);
            Ok(FptResult {
                value: m.min(core.value),
                case: FptCase::MinCombined,
                diagnostics: diag,
            })
        }
    }
}

/// `<fpt>_e`; `p^e` times this is the largest `l` with `f^l` outside the
/// `e`-th Frobenius power of the maximal ideal.
pub fn fpt_truncation(result: &FptResult, p: Prime, e: u32) -> Rational {
    base_p::truncate(&result.value, p.get(), e).expect("thresholds lie in (0, 1]")
}

/// The characteristic-zero limit of the threshold as `p` grows (the log
/// canonical threshold).
pub fn fpt_limit(g: &Binomial) -> Result<Rational, EngineError> {
    let parts = factor(g);
    let exps: Vec<u64> = parts.monomial.iter().map(|(_, a)| *a).collect();
    let core = match &parts.core {
        Core::Binomial(h) => Some(
            unique_maximum(&h.splitting_matrix()?)?
                .sum
                .min(Rational::one()),
        ),
        Core::Unit(_) => None,
    };
    match (monomial_fpt(&exps), core) {
        (None, None) => Err(EngineError::NotVanishing),
        (Some(m), None) => Ok(m),
        (None, Some(c)) => Ok(c),
        (Some(m), Some(c)) => Ok(m.min(c)),
    }
}
