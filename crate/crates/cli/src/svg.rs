//! SVG 1.1 drawings of the splitting polytope and, given a prime, the
//! pieces of the threshold computation. Geometry stays exact until the final
//! coordinate emission.

use binfpt::base_p::truncate;
use binfpt::{
    candidates, fpt, Axis, Binomial, EngineError, Maximum, Point2, Prime, Rational, SplittingMatrix,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SvgError {
    #[error(transparent)]
    Polytope(#[from] binfpt::PolytopeError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("the maximal point is not unique (sum {0}); no decomposition to draw")]
    NonUnique(Rational),
}

const MARGIN: f64 = 60.0;
const SIDE: f64 = 560.0;

/// Pixel coordinates with 12 significant digits.
fn num(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{v:.decimals$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        &s
    };
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn label(p: &Point2) -> String {
    format!("({}, {})", p.s1, p.s2)
}

fn line_label(a: u64, b: u64) -> String {
    let term = |c: u64, v: &str| match c {
        0 => None,
        1 => Some(v.to_string()),
        c => Some(format!("{c}{v}")),
    };
    let terms: Vec<String> = [term(a, "s1"), term(b, "s2")]
        .into_iter()
        .flatten()
        .collect();
    format!("{} = 1", terms.join(" + "))
}

struct Canvas {
    extent: Rational,
    out: String,
}

impl Canvas {
    fn xy(&self, p: &Point2) -> (String, String) {
        let x = MARGIN + (&p.s1 / &self.extent).to_f64() * SIDE;
        let y = MARGIN + SIDE - (&p.s2 / &self.extent).to_f64() * SIDE;
        (num(x), num(y))
    }

    fn push(&mut self, s: &str) {
        self.out.push_str(s);
        self.out.push('\n');
    }

    fn polygon(&mut self, pts: &[Point2], class: &str, fill: &str) {
        if pts.len() < 3 {
            return;
        }
        let coords: Vec<String> = pts
            .iter()
            .map(|p| self.xy(p))
            .map(|(x, y)| format!("{x},{y}"))
            .collect();
        self.push(&format!(
            r#"<polygon class="{class}" points="{}" fill="{fill}" stroke="none"/>"#,
            coords.join(" ")
        ));
    }

    fn segment(&mut self, a: &Point2, b: &Point2, class: &str, style: &str) {
        let ((x1, y1), (x2, y2)) = (self.xy(a), self.xy(b));
        self.push(&format!(
            r#"<line class="{class}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {style}/>"#
        ));
    }

    fn dot(&mut self, p: &Point2, class: &str, r: u32, fill: &str) {
        let (x, y) = self.xy(p);
        self.push(&format!(
            r#"<circle class="{class}" cx="{x}" cy="{y}" r="{r}" fill="{fill}"/>"#
        ));
    }

    fn text(&mut self, p: &Point2, dx: i32, dy: i32, class: &str, body: &str) {
        let (x, y) = self.xy(p);
        self.push(&format!(
            r#"<text class="{class}" x="{x}" y="{y}" dx="{dx}" dy="{dy}" font-family="sans-serif" font-size="12">{}</text>"#,
            escape(body)
        ));
    }

    /// The part of `u s1 + v s2 = w` inside the drawing box.
    fn clip_line(&self, u: &Rational, v: &Rational, w: &Rational) -> Option<(Point2, Point2)> {
        let x = &self.extent;
        let zero = Rational::zero();
        let mut pts: Vec<Point2> = Vec::new();
        for edge in [&zero, x] {
            if !v.is_zero() {
                pts.push(Point2::new(edge.clone(), (w - u * edge) / v));
            }
            if !u.is_zero() {
                pts.push(Point2::new((w - v * edge) / u, edge.clone()));
            }
        }
        pts.retain(|p| !p.s1.is_negative() && !p.s2.is_negative() && &p.s1 <= x && &p.s2 <= x);
        pts.sort();
        pts.dedup();
        Some((pts.first()?.clone(), pts.last()?.clone())).filter(|(a, b)| a != b)
    }
}

fn cross(p: &Point2, q: &Point2) -> Rational {
    &p.s1 * &q.s2 - &p.s2 * &q.s1
}

/// Vertices in counterclockwise order starting from the origin.
fn boundary(e: &SplittingMatrix) -> Vec<Point2> {
    let mut pts = e.vertices();
    let origin = Point2::origin();
    pts.retain(|p| *p != origin);
    pts.sort_by(|p, q| Rational::zero().cmp(&cross(p, q)));
    pts.insert(0, origin);
    pts
}

/// Sutherland-Hodgman against `u s1 + v s2 <= w`.
fn clip(poly: &[Point2], u: &Rational, v: &Rational, w: &Rational) -> Vec<Point2> {
    let side = |p: &Point2| u * &p.s1 + v * &p.s2 - w;
    let mut out = Vec::new();
    for (i, p) in poly.iter().enumerate() {
        let q = &poly[(i + 1) % poly.len()];
        let (fp, fq) = (side(p), side(q));
        if !fp.is_positive() {
            out.push(p.clone());
        }
        if (fp.is_positive() && fq.is_negative()) || (fp.is_negative() && fq.is_positive()) {
            let t = &fp / &(&fp - &fq);
            out.push(Point2::new(
                &p.s1 + &t * &(&q.s1 - &p.s1),
                &p.s2 + &t * &(&q.s2 - &p.s2),
            ));
        }
    }
    out
}

fn centroid(pts: &[Point2]) -> Point2 {
    let n = Rational::from(pts.len() as u64);
    let s1: Rational = pts.iter().map(|p| &p.s1).sum();
    let s2: Rational = pts.iter().map(|p| &p.s2).sum();
    Point2::new(s1 / &n, s2 / &n)
}

fn dot_row(row: (u64, u64), s: &Point2) -> Rational {
    s.s1.scale(row.0) + s.s2.scale(row.1)
}

/// Draws `g`'s splitting polytope; with `decomposition = Some((p, e))` also
/// the truncation `<eta>_e`, the candidate points, the regions around `eta`
/// and the epsilon segment.
pub fn render(g: &Binomial, decomposition: Option<(Prime, u32)>) -> Result<String, SvgError> {
    let e = g.splitting_matrix()?;
    let min_pos =
        |col: &dyn Fn(&(u64, u64)) -> u64| e.rows().iter().map(col).filter(|&c| c > 0).min();
    let reach = [min_pos(&|r| r.0), min_pos(&|r| r.1)]
        .into_iter()
        .flatten()
        .map(|c| Rational::from(c).recip())
        .max()
        .expect("both columns are nonzero");
    let extent = reach * Rational::frac(11, 10);
    let total = num(2.0 * MARGIN + SIDE);
    let mut c = Canvas {
        extent: extent.clone(),
        out: String::new(),
    };

    c.push(r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    c.push(&format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total}" height="{total}" viewBox="0 0 {total} {total}">"#
    ));
    c.push(&format!(
        "<title>Splitting polytope of {}</title>",
        escape(&g.to_string())
    ));
    c.push(&format!(
        r#"<rect x="0" y="0" width="{total}" height="{total}" fill="white"/>"#
    ));

    let poly = boundary(&e);
    c.polygon(&poly, "polytope", "#dbe9f6");

    let eta = match e.maximal_point() {
        Maximum::Unique(m) => Some(m),
        Maximum::NonUnique(s) if decomposition.is_some() => return Err(SvgError::NonUnique(s)),
        Maximum::NonUnique(_) => None,
    };

    if let (Some(m), Some(_)) = (&eta, decomposition) {
        let (one, zero) = (Rational::one(), Rational::zero());
        let (h1, h2) = (&m.point.s1, &m.point.s2);
        let upper = clip(&poly, &zero, &-one.clone(), &-h2.clone());
        let lower = clip(&poly, &zero, &one, h2);
        let star = clip(&lower, &-one.clone(), &zero, &-h1.clone());
        let below = clip(&lower, &one, &zero, h1);
        for (pts, class, fill, name) in [
            (&upper, "region-upper-left", "#fde2c8", "upper-left"),
            (&star, "region-star", "#d8f0d2", "star"),
            (&below, "region-below", "#e6defa", "below"),
        ] {
            c.polygon(pts, class, fill);
            if pts.len() >= 3 {
                c.text(&centroid(pts), -14, 4, "region-label", name);
            }
        }
    }

    let origin = Point2::origin();
    c.segment(
        &origin,
        &Point2::new(extent.clone(), Rational::zero()),
        "axis",
        r#"stroke="black""#,
    );
    c.segment(
        &origin,
        &Point2::new(Rational::zero(), extent.clone()),
        "axis",
        r#"stroke="black""#,
    );
    c.text(
        &Point2::new(extent.clone(), Rational::zero()),
        -12,
        18,
        "axis-label",
        "s1",
    );
    c.text(
        &Point2::new(Rational::zero(), extent.clone()),
        -22,
        4,
        "axis-label",
        "s2",
    );

    let mut rows = e.rows().to_vec();
    rows.sort_unstable();
    rows.dedup();
    for &(a, b) in &rows {
        if let Some((p, q)) = c.clip_line(&Rational::from(a), &Rational::from(b), &Rational::one())
        {
            c.segment(
                &p,
                &q,
                "constraint",
                r##"stroke="#3b6ea8" stroke-width="1""##,
            );
            let anchor = if b == 0 { q } else { p };
            c.text(&anchor, 6, -6, "constraint-label", &line_label(a, b));
        }
    }

    for v in e.vertices() {
        c.dot(&v, "vertex", 3, "black");
        c.text(&v, 6, 14, "vertex-label", &label(&v));
    }

    if let Some(m) = &eta {
        let one = Rational::one();
        if let Some((p, q)) = c.clip_line(&one, &one, &m.sum) {
            c.segment(
                &p,
                &q,
                "eta-line",
                r##"stroke="#c0392b" stroke-dasharray="6,4""##,
            );
            c.text(&q, 6, -6, "eta-line-label", &format!("s1 + s2 = {}", m.sum));
        }
        c.dot(&m.point, "eta", 6, "#c0392b");
        c.text(
            &m.point,
            8,
            -10,
            "eta-label",
            &format!("η = {}", label(&m.point)),
        );
    }

    if let (Some(m), Some((prime, level))) = (&eta, decomposition) {
        let p = prime.get();
        let trunc = |x: &Rational, e: u32| truncate(x, p, e).expect("eta in [0, 1]");
        let at_level = Point2::new(trunc(&m.point.s1, level), trunc(&m.point.s2, level));
        c.dot(&at_level, "eta-truncation", 4, "#8e44ad");
        c.text(
            &at_level,
            6,
            14,
            "eta-truncation-label",
            &format!("⟨η⟩_{level} = {}", label(&at_level)),
        );

        let result = fpt(g, prime)?;
        if let Some(d) = result.diagnostics.slack {
            let d = u32::try_from(d).expect("small digit position");
            for cand in candidates(&e, &m.point, p, d).map_err(EngineError::from)? {
                let fill = if cand.lower_interior {
                    "#27ae60"
                } else {
                    "#7f8c8d"
                };
                c.dot(&cand.point, "candidate", 4, fill);
                c.text(&cand.point, 6, -6, "candidate-label", &label(&cand.point));
            }
        }
        if let Some(eps) = &result.diagnostics.epsilon {
            let d = result.diagnostics.slack.expect("epsilon needs d") as u32;
            let ray = candidates(&e, &m.point, p, d)
                .map_err(EngineError::from)?
                .into_iter()
                .find(|cand| cand.lower_interior && cand.room.as_ref() == Some(eps))
                .expect("epsilon comes from a lower-interior candidate");
            let shift = match ray.ray {
                Axis::S1 => Point2::new(eps.clone(), Rational::zero()),
                Axis::S2 => Point2::new(Rational::zero(), eps.clone()),
            };
            let end = &ray.point + &shift;
            c.segment(
                &ray.point,
                &end,
                "epsilon",
                r##"stroke="#e67e22" stroke-width="3""##,
            );
            let tight: Vec<String> = rows
                .iter()
                .filter(|&&r| dot_row(r, &end) == 1)
                .map(|&(a, b)| line_label(a, b))
                .collect();
            c.text(
                &end,
                8,
                16,
                "epsilon-label",
                &format!("ε = {eps}, ends on {}", tight.join(", ")),
            );
        }
    }

    c.push("</svg>");
    Ok(c.out)
}
