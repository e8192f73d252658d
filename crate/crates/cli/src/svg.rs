//! Standalone SVG rendering of an instance and, optionally, a tree over it.

use std::fmt::Write as _;

use slt_core::graph::{RootedTree, VertexKind};
use slt_core::{Instance, Point2};

const SIZE: f64 = 800.0;
const MARGIN: f64 = 20.0;

struct View {
    min: Point2,
    scale: f64,
    height: f64,
}

impl View {
    fn fit(points: impl Iterator<Item = Point2>) -> View {
        let (mut lo, mut hi) = (Point2::new(f64::INFINITY, f64::INFINITY), Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in points {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y);
        let span = if span > 0.0 { span } else { 1.0 };
        let scale = (SIZE - 2.0 * MARGIN) / span;
        View { min: lo, scale, height: (hi.y - lo.y) * scale + 2.0 * MARGIN }
    }

    fn width(&self, max_x: f64) -> f64 {
        (max_x - self.min.x) * self.scale + 2.0 * MARGIN
    }

    /// Screen coordinates with y pointing up.
    fn map(&self, p: Point2) -> (f64, f64) {
        (MARGIN + (p.x - self.min.x) * self.scale, self.height - MARGIN - (p.y - self.min.y) * self.scale)
    }
}

pub fn render(inst: &Instance, tree: Option<&RootedTree>) -> String {
    let mut all: Vec<Point2> = inst.points().to_vec();
    if let Some(t) = tree {
        all.extend(t.vertices().iter().map(|v| v.pos));
    }
    let view = View::fit(all.iter().copied());
    let max_x = all.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
    let (w, h) = (view.width(max_x), view.height);
    let r = 2.5;
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#).unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    if let Some(t) = tree {
        writeln!(s, r##"<g stroke="#4a6fa5" stroke-width="1">"##).unwrap();
        for (u, v) in t.edges() {
            let (x1, y1) = view.map(t.vertices()[u].pos);
            let (x2, y2) = view.map(t.vertices()[v].pos);
            writeln!(s, r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#).unwrap();
        }
        writeln!(s, "</g>").unwrap();
        writeln!(s, r##"<g fill="#e8a33d">"##).unwrap();
        for v in t.vertices().iter().filter(|v| v.kind == VertexKind::Steiner) {
            let (x, y) = view.map(v.pos);
            writeln!(s, r#"<circle class="steiner" cx="{x:.2}" cy="{y:.2}" r="{:.1}"/>"#, r * 0.8).unwrap();
        }
        writeln!(s, "</g>").unwrap();
    }
    writeln!(s, r#"<g fill="black">"#).unwrap();
    for (i, &p) in inst.points().iter().enumerate() {
        if i != inst.source_index() {
            let (x, y) = view.map(p);
            writeln!(s, r#"<circle class="input" cx="{x:.2}" cy="{y:.2}" r="{r:.1}"/>"#).unwrap();
        }
    }
    writeln!(s, "</g>").unwrap();
    let (x, y) = view.map(inst.source());
    writeln!(s, r##"<circle class="source" cx="{x:.2}" cy="{y:.2}" r="{:.1}" fill="#c0392b"/>"##, r * 2.0).unwrap();
    writeln!(s, "</svg>").unwrap();
    s
}
