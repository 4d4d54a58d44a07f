//! SVG view of a point set with optional tree edges and forbidden edges.

use std::fmt::Write;

use geoforbid::geom::convex_hull;
use geoforbid::{Edge, EdgeSet, PointSet};

pub const CANVAS: f64 = 1000.0;
const MARGIN: f64 = 50.0;

/// Maps point coordinates into the canvas, y pointing up.
struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
    offset_x: f64,
    offset_y: f64,
}

impl Frame {
    fn fit(s: &PointSet) -> Self {
        let xs = s.points().iter().map(|p| p.x as f64);
        let ys = s.points().iter().map(|p| p.y as f64);
        let (min_x, max_x) = xs.fold((f64::MAX, f64::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)));
        let (min_y, max_y) = ys.fold((f64::MAX, f64::MIN), |(lo, hi), y| (lo.min(y), hi.max(y)));
        let span = (max_x - min_x).max(max_y - min_y).max(1.0);
        let scale = (CANVAS - 2.0 * MARGIN) / span;
        Frame {
            min_x,
            max_y,
            scale,
            offset_x: MARGIN + (span - (max_x - min_x)) * scale / 2.0,
            offset_y: MARGIN + (span - (max_y - min_y)) * scale / 2.0,
        }
    }

    fn at(&self, s: &PointSet, i: usize) -> (f64, f64) {
        let p = s.point(i);
        (
            self.offset_x + (p.x as f64 - self.min_x) * self.scale,
            self.offset_y + (self.max_y - p.y as f64) * self.scale,
        )
    }
}

fn line(out: &mut String, f: &Frame, s: &PointSet, e: Edge, style: &str) {
    let (x1, y1) = f.at(s, e.a());
    let (x2, y2) = f.at(s, e.b());
    let _ = writeln!(out, r#"  <line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" {style}/>"#);
}

/// Hull faint, forbidden edges dashed red, tree edges solid black.
pub fn render(s: &PointSet, tree_edges: Option<&[Edge]>, forbidden: &EdgeSet) -> String {
    let f = Frame::fit(s);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    if let Ok(hull) = convex_hull(s) {
        let pts: Vec<String> = hull
            .iter()
            .map(|&i| {
                let (x, y) = f.at(s, i);
                format!("{x:.1},{y:.1}")
            })
            .collect();
        let _ = writeln!(
            out,
            r##"  <polygon class="hull" points="{}" fill="none" stroke="#bbbbbb" stroke-width="1"/>"##,
            pts.join(" ")
        );
    }
    for e in forbidden.iter() {
        line(&mut out, &f, s, e, r##"class="forbidden" stroke="#d62728" stroke-width="2" stroke-dasharray="10,6""##);
    }
    for &e in tree_edges.unwrap_or(&[]) {
        line(&mut out, &f, s, e, r##"class="tree" stroke="black" stroke-width="3""##);
    }
    for i in 0..s.len() {
        let (x, y) = f.at(s, i);
        let _ = writeln!(out, r#"  <circle cx="{x:.1}" cy="{y:.1}" r="7" fill="black"/>"#);
        let _ = writeln!(
            out,
            r#"  <text x="{:.1}" y="{:.1}" font-size="18" font-family="sans-serif">{i}</text>"#,
            x + 10.0,
            y - 10.0
        );
    }
    out.push_str("</svg>\n");
    out
}
