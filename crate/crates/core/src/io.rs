//! Line-oriented text formats for instances and trees. Coordinates are
//! written with 17 significant digits so every double survives a round trip.

use std::fmt::Write as _;

use crate::error::{Result, SltError};
use crate::geom::Point2;
use crate::graph::{RootedTree, Vertex, VertexKind};
use crate::instance::Instance;

pub const INSTANCE_HEADER: &str = "slt-instance v1";
pub const TREE_HEADER: &str = "slt-tree v1";

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_instance(inst: &Instance) -> String {
    let mut s = String::new();
    writeln!(s, "{INSTANCE_HEADER}").unwrap();
    writeln!(s, "epsilon {}", num(inst.eps())).unwrap();
    writeln!(s, "source {}", inst.source_index()).unwrap();
    writeln!(s, "points {}", inst.len()).unwrap();
    for p in inst.points() {
        writeln!(s, "{} {}", num(p.x), num(p.y)).unwrap();
    }
    s
}

pub fn write_tree(t: &RootedTree) -> String {
    let mut s = String::new();
    writeln!(s, "{TREE_HEADER}").unwrap();
    writeln!(s, "vertices {}", t.num_vertices()).unwrap();
    for (i, v) in t.vertices().iter().enumerate() {
        writeln!(s, "{i} {} {} {}", num(v.pos.x), num(v.pos.y), v.kind.as_str()).unwrap();
    }
    let edges = t.edges();
    writeln!(s, "edges {}", edges.len()).unwrap();
    for (u, v) in edges {
        writeln!(s, "{u} {v}").unwrap();
    }
    writeln!(s, "root {}", t.root()).unwrap();
    s
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate(), last: 0 }
    }

    fn err(&self, line: usize, msg: impl Into<String>) -> SltError {
        SltError::Parse { line, msg: msg.into() }
    }

    /// Next non-blank line as (line number, fields).
    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>)> {
        for (i, l) in self.inner.by_ref() {
            self.last = i + 1;
            let fields: Vec<&str> = l.split_whitespace().collect();
            if !fields.is_empty() {
                return Ok((i + 1, fields));
            }
        }
        Err(self.err(self.last + 1, format!("unexpected end of file, expected {what}")))
    }

    fn keyword(&mut self, key: &str) -> Result<(usize, &'a str)> {
        let (n, f) = self.next(key)?;
        if f.len() != 2 || f[0] != key {
            return Err(self.err(n, format!("expected `{key} <value>`")));
        }
        Ok((n, f[1]))
    }

    fn header(&mut self, header: &str) -> Result<()> {
        let (n, f) = self.next("header")?;
        if f.join(" ") != header {
            return Err(self.err(n, format!("expected header `{header}`")));
        }
        Ok(())
    }

    fn finish(&mut self) -> Result<()> {
        if let Some((i, l)) = self.inner.by_ref().find(|(_, l)| !l.trim().is_empty()) {
            return Err(self.err(i + 1, format!("trailing content `{}`", l.trim())));
        }
        Ok(())
    }
}

fn parse<T: std::str::FromStr>(lines: &Lines, line: usize, s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| lines.err(line, format!("invalid {what} `{s}`")))
}

fn parse_coord(lines: &Lines, line: usize, s: &str) -> Result<f64> {
    let v: f64 = parse(lines, line, s, "coordinate")?;
    if !v.is_finite() {
        return Err(lines.err(line, format!("non-finite coordinate `{s}`")));
    }
    Ok(v)
}

fn count_mismatch(lines: &Lines, what: &str, expected: usize, found: usize) -> SltError {
    lines.err(lines.last + 1, format!("expected {expected} {what}, found {found}"))
}

pub fn read_instance(text: &str) -> Result<Instance> {
    let mut lines = Lines::new(text);
    lines.header(INSTANCE_HEADER)?;
    let (ln, e) = lines.keyword("epsilon")?;
    let eps: f64 = parse(&lines, ln, e, "epsilon")?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(lines.err(ln, format!("epsilon {eps} outside (0, 1)")));
    }
    let (sl, s) = lines.keyword("source")?;
    let source: usize = parse(&lines, sl, s, "source index")?;
    let (ln, c) = lines.keyword("points")?;
    let n: usize = parse(&lines, ln, c, "point count")?;
    let mut pts = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, f) = match lines.next("point") {
            Ok(x) => x,
            Err(_) => return Err(count_mismatch(&lines, "points", n, pts.len())),
        };
        if f.len() != 2 {
            return Err(lines.err(ln, "expected `<x> <y>`"));
        }
        pts.push(Point2::new(parse_coord(&lines, ln, f[0])?, parse_coord(&lines, ln, f[1])?));
    }
    lines.finish()?;
    if source >= n {
        return Err(lines.err(sl, format!("source {source} out of range for {n} points")));
    }
    Instance::new(pts, source, eps)
}

fn parse_kind(s: &str) -> Option<VertexKind> {
    [VertexKind::Input, VertexKind::Steiner, VertexKind::Source]
        .into_iter()
        .find(|k| k.as_str() == s)
}

pub fn read_tree(text: &str) -> Result<RootedTree> {
    let mut lines = Lines::new(text);
    lines.header(TREE_HEADER)?;
    let (ln, c) = lines.keyword("vertices")?;
    let m: usize = parse(&lines, ln, c, "vertex count")?;
    let mut verts = Vec::with_capacity(m);
    for i in 0..m {
        let (ln, f) = match lines.next("vertex") {
            Ok(x) => x,
            Err(_) => return Err(count_mismatch(&lines, "vertices", m, verts.len())),
        };
        if f.len() != 4 {
            return Err(lines.err(ln, "expected `<id> <x> <y> <kind>`"));
        }
        let id: usize = parse(&lines, ln, f[0], "vertex id")?;
        if id != i {
            return Err(lines.err(ln, format!("vertex ids must be 0..{m} in order, found {id} at position {i}")));
        }
        let pos = Point2::new(parse_coord(&lines, ln, f[1])?, parse_coord(&lines, ln, f[2])?);
        let kind = parse_kind(f[3]).ok_or_else(|| lines.err(ln, format!("unknown vertex kind `{}`", f[3])))?;
        verts.push(Vertex { pos, kind });
    }
    let (eln, c) = lines.keyword("edges")?;
    let e: usize = parse(&lines, eln, c, "edge count")?;
    if e + 1 != m {
        return Err(lines.err(eln, format!("a tree on {m} vertices has {} edges, header says {e}", m.saturating_sub(1))));
    }
    let mut edges = Vec::with_capacity(e);
    for _ in 0..e {
        let (ln, f) = match lines.next("edge") {
            Ok(x) => x,
            Err(_) => return Err(count_mismatch(&lines, "edges", e, edges.len())),
        };
        if f.len() != 2 {
            return Err(lines.err(ln, "expected `<u> <v>`"));
        }
        let u: usize = parse(&lines, ln, f[0], "vertex id")?;
        let v: usize = parse(&lines, ln, f[1], "vertex id")?;
        if u >= m || v >= m {
            return Err(lines.err(ln, format!("edge ({u}, {v}) references a missing vertex")));
        }
        edges.push((u, v));
    }
    let (rln, r) = lines.keyword("root")?;
    let root: usize = parse(&lines, rln, r, "root id")?;
    if root >= m {
        return Err(lines.err(rln, format!("root {root} out of range")));
    }
    lines.finish()?;
    RootedTree::from_edges(verts, &edges, root)
}
