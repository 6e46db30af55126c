use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{fraction_string, RationalPoint};
use crate::verdict::{Facet, Tag, Verdict};

pub const CITE_TUTTE_EXACT: &str = "parameterized Tutte polynomial, exact evaluation";
pub const CITE_TUTTE_APPROX: &str = "parameterized Tutte polynomial, approximate evaluation";

/// Exact and approximate complexity of evaluating at one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuttePointVerdicts {
    pub exact: Verdict,
    pub approx: Verdict,
}

/// Classifies a rational point with `z = (x-1)(y-1)`.
///
/// Exact: polynomial on `x = y = 1` and on the hyperbola `z = 1`; FPT but
/// #P-hard on the rest of the line `x = 1`; #W[1]-hard elsewhere.
/// Approximate: inside the band `0 <= z <= 1`, FPRAS when `x != 1` or
/// `y = 1` and FPTRAS on the remaining part of `x = 1`; open outside.
pub fn classify_point(p: &RationalPoint) -> TuttePointVerdicts {
    let one = BigRational::one();
    let z = p.z();
    let x_is_1 = p.x == one;
    let y_is_1 = p.y == one;
    let exact = if x_is_1 && y_is_1 {
        Verdict::new(Facet::TutteExact, Tag::Polynomial, CITE_TUTTE_EXACT).with_note("x = y = 1")
    } else if z == one {
        Verdict::new(Facet::TutteExact, Tag::Polynomial, CITE_TUTTE_EXACT).with_note("hyperbola")
    } else if x_is_1 {
        Verdict::new(Facet::TutteExact, Tag::SharpPHardButFpt, CITE_TUTTE_EXACT)
    } else {
        Verdict::new(Facet::TutteExact, Tag::W1Hard, CITE_TUTTE_EXACT)
    };
    let in_band = z >= BigRational::zero() && z <= one;
    let approx = if !in_band {
        Verdict::new(Facet::TutteApprox, Tag::Open, CITE_TUTTE_APPROX)
    } else if !x_is_1 || y_is_1 {
        Verdict::new(Facet::TutteApprox, Tag::Fpras, CITE_TUTTE_APPROX)
    } else {
        Verdict::new(Facet::TutteApprox, Tag::Fptras, CITE_TUTTE_APPROX)
    };
    TuttePointVerdicts { exact, approx }
}

/// One point of a classification grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridCell {
    pub x: String,
    pub y: String,
    pub exact: Tag,
    pub approx: Tag,
}

/// Classifies every point of `xs x ys`, rows by `y`.
pub fn classification_grid(xs: &[BigRational], ys: &[BigRational]) -> Vec<GridCell> {
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for y in ys {
        for x in xs {
            let v = classify_point(&RationalPoint::new(x.clone(), y.clone()));
            out.push(GridCell {
                x: fraction_string(x),
                y: fraction_string(y),
                exact: v.exact.tag,
                approx: v.approx.tag,
            });
        }
    }
    out
}

/// An SVG map of the plane region `[-3, 4] x [-2, 4]`: the approximable
/// band, the lines `x = 1` and `y = 1`, the hyperbola, and the given grid
/// points coloured by their exact classification.
pub fn classification_svg(cells: &[GridCell]) -> String {
    const S: f64 = 60.0;
    let (x0, x1, y0, y1) = (-3.0, 4.0, -2.0, 4.0);
    let px = |x: f64| (x - x0) * S + 20.0;
    let py = |y: f64| (y1 - y) * S + 20.0;
    let (w, h) = ((x1 - x0) * S + 40.0, (y1 - y0) * S + 40.0);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(svg, r##"<rect width="100%" height="100%" fill="#fffbe6"/>"##);
    // band 0 <= (x-1)(y-1) <= 1, one polygon per quadrant around (1, 1)
    for (lo, hi) in [(x0, 1.0), (1.0, x1)] {
        let steps = 200;
        let mut pts = Vec::new();
        let hyper = |x: f64| 1.0 + 1.0 / (x - 1.0);
        for i in 0..=steps {
            let x = lo + (hi - lo) * i as f64 / steps as f64;
            if (x - 1.0).abs() < 1e-9 {
                continue;
            }
            pts.push((x, hyper(x).clamp(y0, y1)));
        }
        pts.push((if lo < 1.0 { 1.0 } else { x1 }, 1.0));
        pts.push((1.0, 1.0));
        let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        let _ = writeln!(svg, r##"<polygon points="{}" fill="#cfe0ff"/>"##, path.join(" "));
    }
    let _ = writeln!(
        svg,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#1f4fd1" stroke-width="2"/>"##,
        px(x0), py(1.0), px(x1), py(1.0)
    );
    let _ = writeln!(
        svg,
        r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#d11f1f" stroke-width="2"/>"##,
        px(1.0), py(y0), px(1.0), py(y1)
    );
    for (lo, hi) in [(x0, 0.999), (1.001, x1)] {
        let pts: Vec<String> = (0..=400)
            .map(|i| lo + (hi - lo) * i as f64 / 400.0)
            .map(|x| (x, 1.0 + 1.0 / (x - 1.0)))
            .filter(|&(_, y)| (y0..=y1).contains(&y))
            .map(|(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            svg,
            r##"<polyline points="{}" fill="none" stroke="#1f4fd1" stroke-width="2"/>"##,
            pts.join(" ")
        );
    }
    for c in cells {
        let coord = |s: &str| super::parse_rational(s).ok().and_then(|r| r.to_f64());
        let (Some(x), Some(y)) = (coord(&c.x), coord(&c.y)) else { continue };
        let fill = match c.exact {
            Tag::Polynomial => "#1f9d3a",
            Tag::SharpPHardButFpt => "#d11f1f",
            _ => "#555555",
        };
        let _ = writeln!(
            svg,
            r#"<circle cx="{:.2}" cy="{:.2}" r="5" fill="{fill}"><title>({}, {}): {}; {}</title></circle>"#,
            px(x), py(y), c.x, c.y, c.exact, c.approx
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(x: &str, y: &str) -> TuttePointVerdicts {
        classify_point(&RationalPoint::parse(x, y).unwrap())
    }

    #[test]
    fn named_points() {
        let v = at("2", "2");
        assert_eq!((v.exact.tag, v.approx.tag), (Tag::Polynomial, Tag::Fpras));
        let v = at("1", "3");
        assert_eq!((v.exact.tag, v.approx.tag), (Tag::SharpPHardButFpt, Tag::Fptras));
        let v = at("2", "1");
        assert_eq!((v.exact.tag, v.approx.tag), (Tag::W1Hard, Tag::Fpras));
        let v = at("1", "1");
        assert_eq!((v.exact.tag, v.approx.tag), (Tag::Polynomial, Tag::Fpras));
        assert_eq!(at("3", "3").approx.tag, Tag::Open);
        assert_eq!(at("0", "0").exact.tag, Tag::Polynomial);
    }

    #[test]
    fn svg_renders_points() {
        let xs: Vec<BigRational> = ["-1", "1", "2"].iter().map(|s| super::super::parse_rational(s).unwrap()).collect();
        let cells = classification_grid(&xs, &xs);
        assert_eq!(cells.len(), 9);
        let svg = classification_svg(&cells);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<circle").count(), 9);
    }
}
