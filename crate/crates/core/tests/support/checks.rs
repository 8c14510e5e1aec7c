// Property checks shared by `properties.rs` (proptest defaults) and
// `acceptance.rs` (fixed case counts).

#![allow(dead_code)]

use binfpt::base_p::{carry_profile, digit, expand, multinomial_nonzero, tail, truncate};
use binfpt::{
    fpt, fpt_truncation, nu_naive, nu_semigroup, Axis, Binomial, Budget, CarryLength, FptCase,
    FptResult, Maximum, NuQuery, Point2, Prime, Rational, SplittingMatrix,
};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type Check = Result<(), TestCaseError>;

pub const SMALL_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

pub fn prime_upto_50() -> impl Strategy<Value = u64> {
    prop::sample::select(SMALL_PRIMES.to_vec())
}

pub fn unit_rational(max_den: i64) -> impl Strategy<Value = Rational> {
    (1..=max_den).prop_flat_map(|d| (0..=d).prop_map(move |n| Rational::frac(n, d)))
}

/// Splitting matrices with no zero row, no constant row and nonzero columns.
pub fn matrix(max_entry: u64) -> impl Strategy<Value = SplittingMatrix> {
    prop::collection::vec((0..=max_entry, 0..=max_entry), 1..=4)
        .prop_filter("no zero or constant rows", |rows| {
            rows.iter().all(|&(a, b)| a != b)
        })
        .prop_filter_map("bounded", |rows| SplittingMatrix::from_rows(rows).ok())
}

pub fn binomial(max_vars: usize, max_exp: u64) -> impl Strategy<Value = Binomial> {
    (1..=max_vars)
        .prop_flat_map(move |m| {
            (
                prop::collection::vec(0..=max_exp, m),
                prop::collection::vec(0..=max_exp, m),
            )
        })
        .prop_filter_map("distinct monomials vanishing at the origin", |(a, b)| {
            Binomial::from_exponents(&a, &b)
                .ok()
                .filter(Binomial::vanishes_at_origin)
        })
}

fn pow(p: u64, e: u32) -> Rational {
    Rational::from(&binfpt::arith::pow(p, e))
}

fn in_lattice(x: &Rational, p: u64, e: u32) -> bool {
    (x * pow(p, e)).is_integer()
}

pub fn unique_eta(e: &SplittingMatrix) -> Point2 {
    match e.maximal_point() {
        Maximum::Unique(m) => m.point,
        Maximum::NonUnique(s) => panic!("no constant rows but tie at sum {s}"),
    }
}

// ---------- base-p ----------

pub fn reconstruction(alpha: &Rational, p: u64) -> Check {
    let x = expand(alpha, p).unwrap();
    prop_assert_eq!(&x.value(), alpha);
    prop_assert!(x.preperiod.iter().chain(&x.period).all(|&d| d < p));
    if !alpha.is_zero() {
        prop_assert!(
            x.period.iter().any(|&d| d != 0),
            "terminating period for {}",
            alpha
        );
    }
    for e in 1..=(x.preperiod.len() + 2 * x.period.len()).min(40) {
        prop_assert_eq!(x.digit(e), digit(alpha, p, e as u32).unwrap());
    }
    Ok(())
}

pub fn truncation_lattice_and_below(alpha: &Rational, p: u64, e: u32) -> Check {
    let t = truncate(alpha, p, e).unwrap();
    prop_assert!(in_lattice(&t, p, e));
    if alpha.is_positive() {
        prop_assert!(&t < alpha);
    }
    Ok(())
}

pub fn tail_bounds(alpha: &Rational, p: u64, e: u32) -> Check {
    if alpha.is_zero() {
        return Ok(());
    }
    let t = tail(alpha, p, e).unwrap();
    let unit = pow(p, e).recip();
    prop_assert!(t.is_positive() && t <= unit);
    prop_assert_eq!(t == unit, in_lattice(alpha, p, e));
    Ok(())
}

/// `alpha <= beta` iff every truncation is ordered the same way. Once
/// `p^e |alpha - beta| > 1` the truncations are ordered strictly.
pub fn truncation_order(alpha: &Rational, beta: &Rational, p: u64) -> Check {
    let gap = alpha - beta;
    let mut all_le = true;
    for e in 1..=40u32 {
        all_le &= truncate(alpha, p, e).unwrap() <= truncate(beta, p, e).unwrap();
        let wide = &gap * pow(p, e);
        if wide > 1 || -wide > 1 || (gap.is_zero() && e >= 8) {
            break;
        }
    }
    prop_assert_eq!(
        alpha <= beta,
        all_le,
        "alpha={} beta={} p={}",
        alpha,
        beta,
        p
    );
    Ok(())
}

pub fn truncation_dominates_lattice_point(alpha: &Rational, p: u64, e: u32, k: u64) -> Check {
    let beta = Rational::frac(k as i64, p.pow(e) as i64);
    if beta > 1 || alpha <= &beta {
        return Ok(());
    }
    prop_assert!(truncate(alpha, p, e).unwrap() >= beta);
    Ok(())
}

fn scaled(alpha: &Rational, p: u64, e: u32) -> u64 {
    let t = truncate(alpha, p, e).unwrap() * pow(p, e);
    t.floor().try_into().unwrap()
}

/// Carry-free as rationals iff carry-free as integers `p^e <.>_e` for all `e`.
pub fn carry_free_via_integers(alpha: &Rational, beta: &Rational, p: u64) -> Check {
    let prof = carry_profile(alpha, beta, p).unwrap();
    let fits = (1..)
        .take_while(|&e| p.checked_pow(e).is_some())
        .last()
        .unwrap();
    let depth = (prof.certificate_depth as u32).min(fits);
    let ints = (1..=depth).all(|e| multinomial_nonzero(scaled(alpha, p, e), scaled(beta, p, e), p));
    match prof.carry_free {
        CarryLength::Infinite => prop_assert!(ints),
        CarryLength::Finite(l) => {
            // The integer pair first fails at level L + 1.
            if l < u64::from(fits) {
                prop_assert!(!ints);
                prop_assert!(!multinomial_nonzero(
                    scaled(alpha, p, l as u32 + 1),
                    scaled(beta, p, l as u32 + 1),
                    p
                ));
            }
            for e in 1..=(l as u32).min(fits) {
                prop_assert!(multinomial_nonzero(
                    scaled(alpha, p, e),
                    scaled(beta, p, e),
                    p
                ));
            }
        }
    }
    Ok(())
}

pub fn constant_digit_law(i: u64, j: u64, p: u64) -> Check {
    let alpha = Rational::frac(i as i64, p as i64 - 1);
    let beta = Rational::frac(j as i64, p as i64 - 1);
    for e in 1..=4 {
        prop_assert_eq!(
            Rational::from(digit(&alpha, p, e).unwrap()),
            &alpha * Rational::from(p - 1)
        );
    }
    let infinite = carry_profile(&alpha, &beta, p).unwrap().carry_free == CarryLength::Infinite;
    prop_assert_eq!(infinite, &alpha + &beta <= Rational::one());
    Ok(())
}

pub fn carrying_identity(alpha: &Rational, beta: &Rational, p: u64) -> Check {
    let sum = alpha + beta;
    if sum > 1 {
        return Ok(());
    }
    let x = expand(alpha, p).unwrap();
    let y = expand(beta, p).unwrap();
    for l in 1..=20u32 {
        if x.digit(l as usize + 1) + y.digit(l as usize + 1) >= p {
            let lhs =
                truncate(alpha, p, l).unwrap() + truncate(beta, p, l).unwrap() + pow(p, l).recip();
            prop_assert_eq!(lhs, truncate(&sum, p, l).unwrap(), "L={}", l);
        }
    }
    Ok(())
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn lucas_vs_factorials(n: u64, k1: u64, p: u64) -> Check {
    let k1 = k1.min(n);
    let binom = factorial(n) / (factorial(k1) * factorial(n - k1));
    let nonzero = !(binom % p).is_zero();
    prop_assert_eq!(
        multinomial_nonzero(k1, n - k1, p),
        nonzero,
        "N={} k1={} p={}",
        n,
        k1,
        p
    );
    Ok(())
}

// ---------- polytope ----------

fn on_line(e: &SplittingMatrix, v: &Point2) -> usize {
    let rows = e
        .rows()
        .iter()
        .filter(|&&(a, b)| v.s1.scale(a) + v.s2.scale(b) == Rational::one())
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    rows + usize::from(v.s1.is_zero()) + usize::from(v.s2.is_zero())
}

pub fn vertices_well_formed(e: &SplittingMatrix) -> Check {
    for v in e.vertices() {
        prop_assert!(e.contains(&v));
        prop_assert!(on_line(e, &v) >= 2, "vertex {} on fewer than two lines", v);
    }
    Ok(())
}

/// A point of P from two parameters in [0, 1].
pub fn point_in(e: &SplittingMatrix, t: &Rational, u: &Rational) -> Point2 {
    let s1_max = e.ray_max_delta(&Point2::origin(), Axis::S1).unwrap();
    let s1 = t * &s1_max;
    let base = Point2::new(s1, Rational::zero());
    let s2_max = e.ray_max_delta(&base, Axis::S2).unwrap();
    Point2::new(base.s1, u * &s2_max)
}

pub fn maximum_dominates(e: &SplittingMatrix, t: &Rational, u: &Rational) -> Check {
    let eta = unique_eta(e);
    let s = point_in(e, t, u);
    prop_assert!(e.contains(&s));
    prop_assert!(s.sum() <= eta.sum());
    Ok(())
}

pub fn upper_left_interior(e: &SplittingMatrix, t: &Rational, u: &Rational) -> Check {
    let eta = unique_eta(e);
    let top = e
        .ray_max_delta(&Point2::new(Rational::zero(), eta.s2.clone()), Axis::S2)
        .unwrap();
    let s2 = &eta.s2 + t * &top;
    let reach = e
        .ray_max_delta(&Point2::new(Rational::zero(), s2.clone()), Axis::S1)
        .unwrap();
    let s = Point2::new(u * &reach, s2);
    if s == eta {
        return Ok(());
    }
    prop_assert!(e.contains(&s) && s.s2 >= eta.s2);
    let reduced = e
        .rows()
        .iter()
        .filter(|r| r.1 > r.0)
        .all(|&(a, b)| s.s1.scale(a) + s.s2.scale(b) < Rational::one());
    prop_assert_eq!(e.contains_lower_interior(&s), reduced, "s=({})", s);
    Ok(())
}

pub fn segment_equivalence(e: &SplittingMatrix, p: u64, d: u32, delta: &Rational) -> Check {
    let eta = unique_eta(e);
    let step = pow(p, d).recip();
    let t1 = truncate(&eta.s1, p, d).unwrap();
    let t2 = truncate(&eta.s2, p, d).unwrap();
    let lambda = Point2::new(&t1 + delta, &t2 + &step);
    let sum = &t1 + &t2 + &step + delta;
    let seg = e.segment_meets_lower_interior(&sum, &(&t2 + &step));
    prop_assert_eq!(
        seg,
        e.contains_lower_interior(&lambda),
        "p={} d={} delta={}",
        p,
        d,
        delta
    );
    Ok(())
}

/// Returns whether the case `|eta| > 1` was exercised.
pub fn standard_polytope(e: &SplittingMatrix) -> Result<bool, TestCaseError> {
    let eta = unique_eta(e);
    if eta.sum() <= 1 {
        return Ok(false);
    }
    let has = |m: &SplittingMatrix| {
        m.rows().contains(&(1, 0)) && m.rows().iter().any(|&(a, b)| a == 0 && b >= 1)
    };
    prop_assert!(has(e) || has(&e.swapped()), "rows {:?}", e.rows());
    Ok(true)
}

pub fn no_ties_without_constant_rows(e: &SplittingMatrix) -> Check {
    prop_assert!(matches!(e.maximal_point(), Maximum::Unique(_)));
    Ok(())
}

// ---------- engine ----------

pub fn symmetric_under_swaps(g: &Binomial, p: u64) -> Check {
    let prime = Prime::new(p).unwrap();
    let base = fpt(g, prime).unwrap().value;
    prop_assert_eq!(&fpt(&g.swapped(), prime).unwrap().value, &base);
    let rev: Vec<usize> = (0..g.variables().len()).rev().collect();
    prop_assert_eq!(&fpt(&g.permuted(&rev), prime).unwrap().value, &base);
    Ok(())
}

pub fn truncations_monotone(g: &Binomial, p: u64) -> Check {
    let prime = Prime::new(p).unwrap();
    let res = fpt(g, prime).unwrap();
    prop_assert!(res.value.is_positive() && res.value <= Rational::one());
    let mut prev = Rational::zero();
    for e in 1..=10 {
        let t = fpt_truncation(&res, prime, e);
        prop_assert!(t >= prev && t < res.value);
        prop_assert!(&res.value - &t <= pow(p, e).recip());
        prev = t;
    }
    Ok(())
}

/// `nu_naive` under several coefficient choices equals `nu_semigroup`.
pub fn coefficient_independence(g: &Binomial, p: u64, e: u32) -> Check {
    let prime = Prime::new(p).unwrap();
    let budget = Budget::default();
    let semi = nu_semigroup(&NuQuery::new(g.clone(), prime, e).unwrap(), &budget).unwrap();
    let pc = p as i64;
    for (c1, c2) in [(1, 1), (pc - 1, 1), (2, pc + 3)] {
        let Ok(h) = g.clone().with_coefficients(c1, c2) else {
            continue;
        };
        if h.coefficients_mod(prime).is_err() {
            continue;
        }
        let q = NuQuery::new(h, prime, e).unwrap();
        prop_assert_eq!(
            nu_naive(&q, &budget).unwrap(),
            semi,
            "coefficients ({}, {})",
            c1,
            c2
        );
    }
    Ok(())
}

/// Bounds for an epsilon instance: the engine's epsilon satisfies
/// `0 < eps <= tail`, equality exactly when a lower-interior candidate's
/// shifted coordinate is already on the `1/p^d` lattice; the geometric
/// epsilon over both candidate families (in `P`) satisfies the lemma as
/// literally stated.
pub fn epsilon_bounds(g: &Binomial, p: u64, res: &FptResult) -> Check {
    let core_case = res.diagnostics.core_case.unwrap_or(res.case);
    if core_case != FptCase::TruncatedPlusEpsilon {
        return Ok(());
    }
    let h = match binfpt::factor(g).core {
        binfpt::Core::Binomial(h) => h,
        binfpt::Core::Unit(_) => unreachable!(),
    };
    let e = h.splitting_matrix().unwrap();
    let diag = &res.diagnostics;
    let eta = diag.eta.clone().unwrap();
    let d = diag.slack.unwrap() as u32;
    let CarryLength::Finite(l) = diag.carry_free.unwrap() else {
        panic!("finite L expected")
    };
    let sum = eta.sum();
    let tail_l = &sum - truncate(&sum, p, l as u32).unwrap();
    let eps = diag.epsilon.clone().unwrap();
    prop_assert!(eps.is_positive() && eps <= tail_l);

    let step = pow(p, d).recip();
    let base = Point2::new(
        truncate(&eta.s1, p, d).unwrap(),
        truncate(&eta.s2, p, d).unwrap(),
    );
    let right = &base + &Point2::new(step.clone(), Rational::zero());
    let up = &base + &Point2::new(Rational::zero(), step);
    let corrected = (e.contains_lower_interior(&right) && in_lattice(&eta.s1, p, d))
        || (e.contains_lower_interior(&up) && in_lattice(&eta.s2, p, d));
    prop_assert_eq!(eps == tail_l, corrected);

    let geometric = [
        e.ray_max_delta(&right, Axis::S2),
        e.ray_max_delta(&up, Axis::S1),
    ]
    .into_iter()
    .flatten()
    .max()
    .unwrap();
    prop_assert!(geometric.is_positive() && geometric <= tail_l);
    prop_assert_eq!(
        geometric == tail_l,
        in_lattice(&eta.s1, p, d) || in_lattice(&eta.s2, p, d),
        "{} p={}",
        g,
        p
    );
    Ok(())
}
