//! The splitting polytope `P = { s >= 0 : a_i s1 + b_i s2 <= 1 for all i }`
//! of a pair of monomials, with exact vertex enumeration and the
//! membership tests the threshold formula needs.

use std::fmt;
use std::ops::Add;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("exponent vectors have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("no variables")]
    Empty,
    #[error("monomials not distinct")]
    NotDistinct,
    #[error("variable {0} appears in neither monomial")]
    ZeroRow(usize),
    #[error("a monomial is constant, so the polytope is unbounded")]
    ConstantMonomial,
    #[error("point ({0}) lies outside the polytope")]
    OutsidePolytope(Box<Point2>),
}

/// A point of the plane with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub s1: Rational,
    pub s2: Rational,
}

impl Point2 {
    pub fn new(s1: Rational, s2: Rational) -> Self {
        Point2 { s1, s2 }
    }

    pub fn origin() -> Self {
        Point2::new(Rational::zero(), Rational::zero())
    }

    /// Coordinate sum `s1 + s2`.
    pub fn sum(&self) -> Rational {
        &self.s1 + &self.s2
    }
}

impl Add<&Point2> for &Point2 {
    type Output = Point2;
    fn add(self, rhs: &Point2) -> Point2 {
        Point2::new(&self.s1 + &rhs.s1, &self.s2 + &rhs.s2)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}", self.s1, self.s2)
    }
}

impl Serialize for Point2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.s1)?;
        t.serialize_element(&self.s2)?;
        t.end()
    }
}

/// Rows `(a_i, b_i)`, one per variable: the columns are the two exponent
/// vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingMatrix {
    rows: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    S1,
    S2,
}

/// Where a point of `P` falls in the decomposition around the maximal point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Region {
    /// `s2 >= eta2`.
    UpperLeft,
    /// `s1 >= eta1`, `s2 < eta2`.
    Star,
    /// `s <= eta` componentwise, excluding the two above.
    Below,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalPoint {
    pub point: Point2,
    pub sum: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Maximum {
    Unique(MaximalPoint),
    /// The maximizing face is an edge; carries the maximal sum.
    NonUnique(Rational),
}

fn dot(row: (u64, u64), s: &Point2) -> Rational {
    s.s1.scale(row.0) + s.s2.scale(row.1)
}

impl SplittingMatrix {
    pub fn build(a: &[u64], b: &[u64]) -> Result<Self, PolytopeError> {
        if a.len() != b.len() {
            return Err(PolytopeError::LengthMismatch(a.len(), b.len()));
        }
        if a.is_empty() {
            return Err(PolytopeError::Empty);
        }
        if a == b {
            return Err(PolytopeError::NotDistinct);
        }
        if let Some(i) = a.iter().zip(b).position(|(&x, &y)| x == 0 && y == 0) {
            return Err(PolytopeError::ZeroRow(i));
        }
        if a.iter().all(|&x| x == 0) || b.iter().all(|&y| y == 0) {
            return Err(PolytopeError::ConstantMonomial);
        }
        Ok(SplittingMatrix {
            rows: a.iter().copied().zip(b.iter().copied()).collect(),
        })
    }

    /// A polytope from raw rows, without requiring the columns to be
    /// distinct. Rows must be nonzero and each column must have a positive
    /// entry so the polytope is bounded.
    pub fn from_rows(rows: Vec<(u64, u64)>) -> Result<Self, PolytopeError> {
        if rows.is_empty() {
            return Err(PolytopeError::Empty);
        }
        if let Some(i) = rows.iter().position(|&r| r == (0, 0)) {
            return Err(PolytopeError::ZeroRow(i));
        }
        if rows.iter().all(|r| r.0 == 0) || rows.iter().all(|r| r.1 == 0) {
            return Err(PolytopeError::ConstantMonomial);
        }
        Ok(SplittingMatrix { rows })
    }

    pub fn rows(&self) -> &[(u64, u64)] {
        &self.rows
    }

    /// The matrix with its two columns exchanged.
    pub fn swapped(&self) -> Self {
        SplittingMatrix {
            rows: self.rows.iter().map(|&(a, b)| (b, a)).collect(),
        }
    }

    pub fn contains(&self, s: &Point2) -> bool {
        !s.s1.is_negative() && !s.s2.is_negative() && self.rows.iter().all(|&row| dot(row, s) <= 1)
    }

    /// Membership in the lower interior: all row constraints strict,
    /// coordinate bounds may be tight.
    pub fn contains_lower_interior(&self, s: &Point2) -> bool {
        !s.s1.is_negative() && !s.s2.is_negative() && self.rows.iter().all(|&row| dot(row, s) < 1)
    }

    /// All vertices, sorted by `s1` then `s2`.
    pub fn vertices(&self) -> Vec<Point2> {
        // Lines u*s1 + v*s2 = w: the rows plus both coordinate axes.
        let mut lines: Vec<(i64, i64, i64)> = self
            .rows
            .iter()
            .map(|&(a, b)| (a as i64, b as i64, 1))
            .collect();
        lines.push((1, 0, 0));
        lines.push((0, 1, 0));
        lines.sort_unstable();
        lines.dedup();

        let mut out = Vec::new();
        for (i, &(u1, v1, w1)) in lines.iter().enumerate() {
            for &(u2, v2, w2) in &lines[i + 1..] {
                let det = u1 * v2 - u2 * v1;
                if det == 0 {
                    continue;
                }
                let s1 = Rational::frac(w1 * v2 - w2 * v1, det);
                let s2 = Rational::frac(u1 * w2 - u2 * w1, det);
                let pt = Point2::new(s1, s2);
                if self.contains(&pt) {
                    out.push(pt);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// The point maximizing `s1 + s2`, when it is a single vertex.
    pub fn maximal_point(&self) -> Maximum {
        let verts = self.vertices();
        let best = verts
            .iter()
            .map(Point2::sum)
            .max()
            .expect("origin is always a vertex");
        let mut top = verts.into_iter().filter(|v| v.sum() == best);
        let first = top.next().expect("maximum is attained");
        if top.next().is_some() {
            Maximum::NonUnique(best)
        } else {
            Maximum::Unique(MaximalPoint {
                point: first,
                sum: best,
            })
        }
    }

    pub fn classify_region(&self, eta: &MaximalPoint, s: &Point2) -> Result<Region, PolytopeError> {
        if !self.contains(s) {
            return Err(PolytopeError::OutsidePolytope(Box::new(s.clone())));
        }
        Ok(if s.s2 >= eta.point.s2 {
            Region::UpperLeft
        } else if s.s1 >= eta.point.s1 {
            Region::Star
        } else {
            Region::Below
        })
    }

    /// Largest `delta >= 0` with `base + delta * axis` in `P`, or `None` when
    /// `base` itself is infeasible.
    pub fn ray_max_delta(&self, base: &Point2, axis: Axis) -> Option<Rational> {
        if !self.contains(base) {
            return None;
        }
        let mut best: Option<Rational> = None;
        for &row in &self.rows {
            let coef = match axis {
                Axis::S1 => row.0,
                Axis::S2 => row.1,
            };
            if coef == 0 {
                continue;
            }
            let room = (Rational::one() - dot(row, base)) / Rational::from(coef);
            best = Some(match best {
                Some(b) => b.min(room),
                None => room,
            });
        }
        // build() guarantees both columns are nonzero, so some row bounds the ray.
        let delta = best.expect("bounded polytope");
        (!delta.is_negative()).then_some(delta)
    }

    /// Whether some `g >= 0` with `g1 + g2 = sum` and `g2 >= min_s2` satisfies
    /// every row strictly.
    pub fn segment_meets_lower_interior(&self, sum: &Rational, min_s2: &Rational) -> bool {
        if sum.is_negative() {
            return false;
        }
        // Feasible g2 values form an interval; track each end with strictness.
        let mut lo = Bound {
            value: min_s2.clone().max(Rational::zero()),
            strict: false,
        };
        let mut hi = Bound {
            value: sum.clone(),
            strict: false,
        };
        for &(a, b) in &self.rows {
            // a (sum - g2) + b g2 < 1  <=>  (b - a) g2 < 1 - a sum
            let rhs = Rational::one() - sum.scale(a);
            match b.cmp(&a) {
                std::cmp::Ordering::Equal => {
                    if !rhs.is_positive() {
                        return false;
                    }
                }
                std::cmp::Ordering::Greater => {
                    let cut = rhs / Rational::from(b - a);
                    if cut <= hi.value {
                        hi = Bound {
                            value: cut,
                            strict: true,
                        };
                    }
                }
                std::cmp::Ordering::Less => {
                    let cut = -rhs / Rational::from(a - b);
                    if cut >= lo.value {
                        lo = Bound {
                            value: cut,
                            strict: true,
                        };
                    }
                }
            }
        }
        lo.value < hi.value || (lo.value == hi.value && !lo.strict && !hi.strict)
    }
}

struct Bound {
    value: Rational,
    strict: bool,
}
