//! Ground truth for small or structured instances: exhaustive search over
//! labeled spanning trees, and disjoint-box lower bounds on Steiner trees.

use crate::error::{Result, SltError};
use crate::geom::{abs_slope, sandwich_ellipse};
use crate::graph::{RootedTree, Vertex, VertexKind};
use crate::hitting::StripRect;
use crate::instance::Instance;

pub const BRUTE_FORCE_MAX_N: usize = 8;
/// Relative slack on the stretch test of enumerated trees.
pub const ORACLE_STRETCH_TOL: f64 = 1e-9;

/// Edges of the labeled tree on `n` vertices encoded by `seq` (length `n - 2`).
pub fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    debug_assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf exists");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

fn instance_vertices(inst: &Instance) -> Vec<Vertex> {
    inst.points()
        .iter()
        .enumerate()
        .map(|(i, &pos)| Vertex {
            pos,
            kind: if i == inst.source_index() { VertexKind::Source } else { VertexKind::Input },
        })
        .collect()
}

/// Minimum-weight spanning tree over the instance points whose root-stretch
/// is at most `1 + eps`, by enumerating all `n^(n-2)` labeled trees.
pub fn brute_force_opt_st(inst: &Instance, eps: f64) -> Result<(f64, RootedTree)> {
    let n = inst.len();
    if n > BRUTE_FORCE_MAX_N {
        return Err(SltError::SizeCap {
            what: "points",
            got: n,
            cap: BRUTE_FORCE_MAX_N,
        });
    }
    let verts = instance_vertices(inst);
    let s = inst.source_index();
    if n == 1 {
        return Ok((0.0, RootedTree::from_parents(verts, s, vec![None])?));
    }
    let p = inst.points();
    let bound = 1.0 + eps;
    let mut best: Option<(f64, Vec<(usize, usize)>)> = None;
    let mut seq = vec![0usize; n - 2];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut dist = vec![0.0f64; n];
    loop {
        let edges = if n == 2 { vec![(0, 1)] } else { prufer_decode(&seq, n) };
        let weight: f64 = edges.iter().map(|&(u, v)| p[u].dist(p[v])).sum();
        if best.as_ref().is_none_or(|b| weight < b.0) {
            for a in adj.iter_mut() {
                a.clear();
            }
            for &(u, v) in &edges {
                adj[u].push(v);
                adj[v].push(u);
            }
            let mut stack = vec![(s, usize::MAX)];
            dist[s] = 0.0;
            let mut ok = true;
            while let Some((u, from)) = stack.pop() {
                for &v in &adj[u] {
                    if v != from {
                        dist[v] = dist[u] + p[u].dist(p[v]);
                        if dist[v] > bound * p[v].dist(p[s]) * (1.0 + ORACLE_STRETCH_TOL) {
                            ok = false;
                        }
                        stack.push((v, u));
                    }
                }
            }
            if ok {
                best = Some((weight, edges));
            }
        }
        // next sequence in lexicographic order
        let mut i = seq.len();
        loop {
            if i == 0 {
                let (w, edges) = best.ok_or(SltError::NoFeasibleTree)?;
                return Ok((w, RootedTree::from_edges(verts, &edges, s)?));
            }
            i -= 1;
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
        }
    }
}

/// Pairwise non-interfering boxes; every Steiner `(1 + eps)`-shallow tree
/// spends at least `value` inside them.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub boxes: Vec<StripRect>,
    pub value: f64,
}

/// Boxes may share a vertical side; a horizontal overlap would let one
/// horizontal segment cross both.
fn interferes(a: &StripRect, b: &StripRect) -> bool {
    a.x.lo() < b.x.hi() && b.x.lo() < a.x.hi() && a.y.lo() <= b.y.hi() && b.y.lo() <= a.y.hi()
}

/// For each point `p` the bounding box of `E_p` over the strip of the given
/// width to the right of `p`; boxes are taken greedily by `(x, y, index)`
/// when they do not interfere with one already taken. Any path from `p` to
/// the source within stretch `1 + eps` crosses its box from left to right.
/// Only points whose strip lies left of the source and whose slope to it is
/// at most `sqrt(eps)` contribute.
pub fn steiner_lower_bound_certificate(inst: &Instance, eps: f64, strip_width: f64) -> Result<Certificate> {
    let s = inst.source();
    let mut cands: Vec<StripRect> = Vec::new();
    for (i, &p) in inst.points().iter().enumerate() {
        if i == inst.source_index() || p.x + strip_width > s.x || abs_slope(p, s) > eps.sqrt() {
            continue;
        }
        let e = sandwich_ellipse(p, s, eps)?;
        if let Some((x, y)) = e.strip_bounding_box(p.x, p.x + strip_width)? {
            cands.push(StripRect { x, y, owner: i });
        }
    }
    let pts = inst.points();
    cands.sort_by(|a, b| {
        let (p, q) = (pts[a.owner], pts[b.owner]);
        p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)).then(a.owner.cmp(&b.owner))
    });
    let mut boxes: Vec<StripRect> = Vec::new();
    for r in cands {
        if !boxes.iter().any(|b| interferes(b, &r)) {
            boxes.push(r);
        }
    }
    let value = boxes.iter().map(|b| b.x.width()).sum();
    Ok(Certificate { boxes, value })
}
