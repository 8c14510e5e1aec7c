//! JSON and text views of engine results.

use std::fmt::Write as _;

use binfpt::base_p::{expand, render};
use binfpt::{
    CarryLength, FptCase, FptResult, Point2, Prime, Rational, ScanReport, VerificationReport,
};
use serde::{Serialize, Serializer};

/// An exact integer; a JSON number when it fits in 64 bits, else a string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Int(pub String);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.parse::<i64>() {
            Ok(n) => s.serialize_i64(n),
            Err(_) => s.serialize_str(&self.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fraction {
    pub num: Int,
    pub den: Int,
}

impl From<&Rational> for Fraction {
    fn from(r: &Rational) -> Self {
        Fraction {
            num: Int(r.numer().to_string()),
            den: Int(r.denom().to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Digits {
    pub preperiod: Vec<u64>,
    pub period: Vec<u64>,
}

/// `L`: an integer or `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Length(pub CarryLength);

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            CarryLength::Finite(n) => s.serialize_u64(n),
            CarryLength::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FptReport {
    pub input: String,
    pub prime: u64,
    pub case: FptCase,
    pub value: Fraction,
    pub value_base_p: Digits,
    pub eta: Option<[String; 2]>,
    pub eta_sum: Option<String>,
    #[serde(rename = "L")]
    pub l: Option<Length>,
    pub d: Option<u64>,
    pub epsilon: Option<String>,
    pub monomial_part: Option<String>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
    #[serde(skip)]
    pub rendered: String,
    #[serde(skip)]
    pub value_text: String,
}

pub const LIMIT_NOTE: &str = "characteristic-zero limit (log canonical threshold)";

fn point(p: &Point2) -> [String; 2] {
    [p.s1.to_string(), p.s2.to_string()]
}

impl FptReport {
    /// `monomial_part` is the common factor pulled out of both terms, written
    /// as a monomial; `limit` is the characteristic-zero value.
    pub fn new(
        input: String,
        prime: Prime,
        result: &FptResult,
        monomial_part: Option<String>,
        limit: Option<&Rational>,
    ) -> Self {
        let p = prime.get();
        let exp = expand(&result.value, p).expect("threshold in (0, 1]");
        let diag = &result.diagnostics;
        let mut notes = Vec::new();
        if let Some(limit) = limit {
            notes.push(format!("{LIMIT_NOTE}: {limit}"));
        }
        if let (Some(m), Some(c)) = (&diag.monomial_fpt, &diag.core_fpt) {
            notes.push(format!("min of monomial part {m} and core {c}"));
        }
        if let Some(case) = diag.core_case {
            notes.push(format!("core case: {}", case.tag()));
        }
        FptReport {
            input,
            prime: p,
            case: result.case,
            value: Fraction::from(&result.value),
            value_base_p: Digits {
                preperiod: exp.preperiod,
                period: exp.period,
            },
            eta: diag.eta.as_ref().map(point),
            eta_sum: diag.eta_sum.as_ref().map(Rational::to_string),
            l: diag.carry_free.map(Length),
            d: diag.slack,
            epsilon: diag.epsilon.as_ref().map(Rational::to_string),
            monomial_part,
            notes,
            verification: None,
            rendered: render(&result.value, p).expect("threshold in (0, 1]"),
            value_text: result.value.to_string(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line =
            |k: &str, v: &dyn std::fmt::Display| writeln!(out, "{k:<9} {v}").expect("string write");
        line("input", &self.input);
        line("prime", &self.prime);
        line("fpt", &self.value_text);
        line("base-p", &self.rendered);
        line("case", &self.case.tag());
        if let Some(m) = &self.monomial_part {
            line("monomial", m);
        }
        if let Some([a, b]) = &self.eta {
            line("eta", &format!("({a}, {b})"));
        }
        if let Some(s) = &self.eta_sum {
            line("|eta|", s);
        }
        if let Some(Length(l)) = self.l {
            line("L", &l);
        }
        if let Some(d) = self.d {
            line("d", &d);
        }
        if let Some(e) = &self.epsilon {
            line("epsilon", e);
        }
        for n in &self.notes {
            line("note", n);
        }
        if let Some(v) = &self.verification {
            out.push_str(&verification_text(v));
        }
        out
    }
}

pub fn verification_text(v: &VerificationReport) -> String {
    let naive = v
        .naive_nu
        .map_or("skipped (over budget)".to_string(), |n| n.to_string());
    format!(
        "predicted nu {}\nsemigroup nu {}\nnaive nu    {naive}\nmatch       {}\n",
        v.predicted_nu,
        v.semigroup_nu,
        if v.matches { "yes" } else { "NO" }
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanJson {
    pub input: String,
    pub limit: String,
    pub at_limit: usize,
    pub results: Vec<FptReport>,
}

pub fn scan_report(input: &str, report: &ScanReport, monomial_part: Option<String>) -> ScanJson {
    let results = report
        .rows
        .iter()
        .map(|r| {
            FptReport::new(
                input.to_string(),
                r.prime,
                &r.result,
                monomial_part.clone(),
                None,
            )
        })
        .collect();
    ScanJson {
        input: input.to_string(),
        limit: report.limit.to_string(),
        at_limit: report.at_limit,
        results,
    }
}

impl ScanJson {
    pub fn to_text(&self) -> String {
        let mut out = format!("{:>7}  {:<14}  {}\n", "p", "fpt", "case");
        for r in &self.results {
            writeln!(
                out,
                "{:>7}  {:<14}  {}",
                r.prime,
                r.value_text,
                r.case.tag()
            )
            .expect("string write");
        }
        writeln!(
            out,
            "{} of {} primes have fpt equal to the {LIMIT_NOTE} {}",
            self.at_limit,
            self.results.len(),
            self.limit
        )
        .expect("string write");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleJson {
    pub input: String,
    pub prime: u64,
    pub level: u32,
    pub semigroup_nu: Option<u64>,
    pub naive_nu: Option<u64>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

impl OracleJson {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(n) = self.semigroup_nu {
            writeln!(out, "semigroup nu {n}").expect("string write");
        }
        if let Some(n) = self.naive_nu {
            writeln!(out, "naive nu     {n}").expect("string write");
        }
        if let Some(m) = self.matches {
            writeln!(out, "match        {}", if m { "yes" } else { "NO" }).expect("string write");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolytopeJson {
    pub rows: Vec<(u64, u64)>,
    pub vertices: Vec<[String; 2]>,
    pub eta: Option<[String; 2]>,
    pub eta_sum: String,
}

impl PolytopeJson {
    pub fn new(e: &binfpt::SplittingMatrix) -> Self {
        let (eta, eta_sum) = match e.maximal_point() {
            binfpt::Maximum::Unique(m) => (Some(point(&m.point)), m.sum),
            binfpt::Maximum::NonUnique(s) => (None, s),
        };
        PolytopeJson {
            rows: e.rows().to_vec(),
            vertices: e.vertices().iter().map(point).collect(),
            eta,
            eta_sum: eta_sum.to_string(),
        }
    }

    pub fn to_text(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|(a, b)| format!("({a}, {b})"))
            .collect();
        let verts: Vec<String> = self
            .vertices
            .iter()
            .map(|[a, b]| format!("({a}, {b})"))
            .collect();
        let eta = match &self.eta {
            Some([a, b]) => format!("({a}, {b})"),
            None => "not unique".into(),
        };
        format!(
            "rows      {}\nvertices  {}\neta       {eta}\n|eta|     {}\n",
            rows.join(" "),
            verts.join(" "),
            self.eta_sum
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use binfpt::{fpt, Binomial};

    #[test]
    fn comp_json_shape() {
        let g = Binomial::new(vec!["x".into(), "y".into()], vec![7, 2], vec![5, 6]).unwrap();
        let p = Prime::new(37).unwrap();
        let r = fpt(&g, p).unwrap();
        let rep = FptReport::new(g.to_string(), p, &r, None, Some(&Rational::frac(3, 16)));
        let v = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["value"], serde_json::json!({"num": 1283, "den": 6845}));
        assert_eq!(v["case"], "TRUNCATED_PLUS_EPSILON");
        assert_eq!(v["eta"], serde_json::json!(["1/32", "5/32"]));
        assert_eq!(v["L"], 2);
        assert_eq!(v["d"], 2);
        assert_eq!(v["epsilon"], "3/6845");
        assert_eq!(v["value_base_p"]["preperiod"], serde_json::json!([6, 34]));
        assert!(v.get("verification").is_none());
        assert!(rep.to_text().contains(".6 34 (22 7 14 29)~ (base 37)"));
    }

    #[test]
    fn infinite_length() {
        assert_eq!(
            serde_json::to_string(&Length(CarryLength::Infinite)).unwrap(),
            "\"inf\""
        );
        assert_eq!(
            serde_json::to_string(&Length(CarryLength::Finite(3))).unwrap(),
            "3"
        );
    }

    #[test]
    fn polytope_json() {
        let e = binfpt::SplittingMatrix::build(&[7, 2], &[5, 6]).unwrap();
        let v = serde_json::to_value(PolytopeJson::new(&e)).unwrap();
        assert_eq!(v["rows"], serde_json::json!([[7, 5], [2, 6]]));
        assert_eq!(v["eta_sum"], "3/16");
    }
}
