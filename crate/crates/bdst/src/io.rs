//! Point files, machine-readable tree reports, and SVG rendering.
//!
//! The point format is one `x y` pair of decimal literals per line; blank
//! lines and lines starting with `#` are ignored. Printing uses 17
//! significant digits, enough for an exact f64 round trip.

use crate::emst::Tree;
use crate::geom::{GeomError, Point, PointSet};
use serde::Serialize;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid point set: {0}")]
    Geometry(#[from] GeomError),
}

pub fn parse_points(text: &str) -> Result<PointSet, IoError> {
    let mut pts = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| IoError::Parse { line: idx + 1, msg };
        let mut fields = line.split_whitespace();
        let mut coord = |name: &str| -> Result<f64, IoError> {
            fields
                .next()
                .ok_or_else(|| err(format!("missing {name} coordinate")))?
                .parse::<f64>()
                .map_err(|e| err(format!("bad {name} coordinate: {e}")))
        };
        let x = coord("x")?;
        let y = coord("y")?;
        if fields.next().is_some() {
            return Err(err("expected exactly two numbers".into()));
        }
        pts.push(Point::new(x, y));
    }
    Ok(PointSet::new(pts)?)
}

pub fn print_points(ps: &PointSet) -> String {
    let mut out = String::new();
    for p in ps.points() {
        writeln!(out, "{:.16e} {:.16e}", p.x, p.y).unwrap();
    }
    out
}

/// Summary of a spanning tree over a point set, serialized for scripting.
/// `k` is the degree bound the tree was built for, absent for a plain
/// minimum spanning tree; `ratio` is bottleneck over base bottleneck.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TreeReport {
    pub n: usize,
    pub k: Option<u8>,
    pub edges: Vec<(usize, usize)>,
    pub bottleneck: f64,
    pub max_degree: usize,
    pub base_bottleneck: f64,
    pub ratio: f64,
    pub guarantee: f64,
}

impl TreeReport {
    pub fn new(
        t: &Tree,
        ps: &PointSet,
        k: Option<u8>,
        base_bottleneck: f64,
        guarantee: f64,
    ) -> Self {
        let bottleneck = crate::emst::bottleneck(t, ps).0;
        let ratio = if base_bottleneck == 0.0 { 1.0 } else { bottleneck / base_bottleneck };
        TreeReport {
            n: t.n(),
            k,
            edges: t.edges().to_vec(),
            bottleneck,
            max_degree: t.max_degree(),
            base_bottleneck,
            ratio,
            guarantee,
        }
    }
}

/// Renders the point set with any number of tree layers on top. Each layer
/// gets its own group, classed `layer-<i>` and stroked with the given
/// color, so overlays stay visually distinct. Output is deterministic for
/// fixed input.
pub fn render_svg(ps: &PointSet, trees: &[(&Tree, &str)]) -> String {
    let xs = ps.points().iter().map(|p| p.x);
    let ys = ps.points().iter().map(|p| p.y);
    let (min_x, max_x) = (xs.clone().fold(f64::INFINITY, f64::min), xs.fold(f64::NEG_INFINITY, f64::max));
    let (min_y, max_y) = (ys.clone().fold(f64::INFINITY, f64::min), ys.fold(f64::NEG_INFINITY, f64::max));
    let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let pad = 0.05 * span;
    let (x0, y0) = (min_x - pad, min_y - pad);
    let (w, h) = (max_x - min_x + 2.0 * pad, max_y - min_y + 2.0 * pad);
    // flip y so the drawing matches the usual math orientation
    let fy = |y: f64| max_y + min_y - y;
    let r = 0.012 * span;
    let stroke_w = 0.006 * span;
    let mut out = String::new();
    writeln!(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x0:.6} {y0:.6} {w:.6} {h:.6}\">")
        .unwrap();
    for (i, (t, color)) in trees.iter().enumerate() {
        writeln!(
            out,
            "  <g class=\"layer-{i}\" stroke=\"{color}\" stroke-width=\"{stroke_w:.6}\" fill=\"none\">"
        )
        .unwrap();
        for &(a, b) in t.edges() {
            let (pa, pb) = (ps.point(a), ps.point(b));
            writeln!(
                out,
                "    <line x1=\"{:.6}\" y1=\"{:.6}\" x2=\"{:.6}\" y2=\"{:.6}\"/>",
                pa.x,
                fy(pa.y),
                pb.x,
                fy(pb.y)
            )
            .unwrap();
        }
        writeln!(out, "  </g>").unwrap();
    }
    writeln!(out, "  <g class=\"points\" fill=\"black\">").unwrap();
    for p in ps.points() {
        writeln!(out, "    <circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"{r:.6}\"/>", p.x, fy(p.y)).unwrap();
    }
    writeln!(out, "  </g>").unwrap();
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{lower19, random_point_set};
    use crate::emst::compute_emst;

    #[test]
    fn parse_skips_comments_and_blanks() {
        let ps = parse_points("# header\n\n 0 0 \n1.5e0 -2\n# tail\n").unwrap();
        assert_eq!(ps.len(), 2);
        assert_eq!(ps.point(1).x, 1.5);
        assert_eq!(ps.point(1).y, -2.0);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let e = parse_points("0 0\n1 oops\n").unwrap_err();
        assert!(matches!(e, IoError::Parse { line: 2, .. }), "{e}");
        let e = parse_points("0 0\n1\n").unwrap_err();
        assert!(matches!(e, IoError::Parse { line: 2, .. }));
        let e = parse_points("0 0 0\n").unwrap_err();
        assert!(matches!(e, IoError::Parse { line: 1, .. }));
        assert!(parse_points("0 0\n0 0\n").is_err());
    }

    #[test]
    fn print_parse_round_trips_exactly() {
        let ps = random_point_set(25, 777);
        let back = parse_points(&print_points(&ps)).unwrap();
        for (p, q) in ps.points().iter().zip(back.points()) {
            assert_eq!(p.x.to_bits(), q.x.to_bits());
            assert_eq!(p.y.to_bits(), q.y.to_bits());
        }
    }

    #[test]
    fn tree_report_fields() {
        let ps = lower19(1.0);
        let t = compute_emst(&ps).unwrap();
        let rep = TreeReport::new(&t, &ps, None, 1.0, 1.0);
        assert_eq!(rep.n, 19);
        assert_eq!(rep.edges.len(), 18);
        assert!((rep.ratio - rep.bottleneck).abs() < 1e-12);
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.contains("\"maxDegree\""));
        assert!(json.contains("\"baseBottleneck\""));
        assert!(json.contains("\"k\":null"));
    }

    #[test]
    fn svg_counts_match() {
        let ps = lower19(1.0);
        let t = compute_emst(&ps).unwrap();
        let svg = render_svg(&ps, &[(&t, "steelblue")]);
        assert_eq!(svg.matches("<circle").count(), 19);
        assert_eq!(svg.matches("<line").count(), 18);
        assert!(svg.contains("layer-0"));
        assert_eq!(svg, render_svg(&ps, &[(&t, "steelblue")]));
    }

    #[test]
    fn svg_single_point() {
        let ps = PointSet::new(vec![Point::new(3.0, 4.0)]).unwrap();
        let svg = render_svg(&ps, &[]);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches("<line").count(), 0);
    }

    #[test]
    fn svg_layers_are_distinct() {
        let ps = random_point_set(8, 42);
        let t = compute_emst(&ps).unwrap();
        let svg = render_svg(&ps, &[(&t, "gray"), (&t, "tomato")]);
        assert!(svg.contains("layer-0") && svg.contains("layer-1"));
        assert!(svg.contains("stroke=\"gray\"") && svg.contains("stroke=\"tomato\""));
    }
}
