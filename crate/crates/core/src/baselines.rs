//! Classical shallow-light tree constructions used as reference points.

use crate::error::{Result, SltError};
use crate::geom::Point2;
use crate::graph::{mst, shortest_path_tree, GeoGraph, RootedTree, Vertex, VertexKind};
use crate::instance::Instance;

fn tree_graph(inst: &Instance) -> GeoGraph {
    let mut g = GeoGraph::new();
    for (i, &p) in inst.points().iter().enumerate() {
        let kind = if i == inst.source_index() { VertexKind::Source } else { VertexKind::Input };
        g.add_vertex(p, kind);
    }
    g
}

/// MST children lists (ascending ids) rooted at the source.
fn mst_children(inst: &Instance) -> Vec<Vec<usize>> {
    let n = inst.len();
    let mut adj = vec![Vec::new(); n];
    for (u, v) in mst(inst.points()).edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut children = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    let s = inst.source_index();
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(u) = stack.pop() {
        let mut nb = adj[u].clone();
        nb.sort_unstable();
        for v in nb {
            if !seen[v] {
                seen[v] = true;
                children[u].push(v);
                stack.push(v);
            }
        }
    }
    children
}

/// The MST rooted at the source.
pub fn mst_tree(inst: &Instance) -> Result<RootedTree> {
    let g = tree_graph(inst);
    let edges = mst(inst.points()).edges;
    RootedTree::from_edges(g.vertices().to_vec(), &edges, inst.source_index())
}

/// DFS over the MST from the source, relaxing distances along tree edges in
/// both directions; a vertex whose tentative distance exceeds
/// `(1 + eps) d(v, s)` on first visit gets a direct edge to the source. The
/// output is the shortest-path tree of the MST plus those edges.
pub fn kry_slt(inst: &Instance) -> Result<RootedTree> {
    let eps = inst.eps();
    let p = inst.points();
    let s = inst.source_index();
    let children = mst_children(inst);
    let n = inst.len();
    let mut d = vec![f64::INFINITY; n];
    d[s] = 0.0;
    let mut spokes = Vec::new();
    // explicit DFS: (vertex, next child position)
    let mut stack: Vec<(usize, usize)> = vec![(s, 0)];
    let ds = |v: usize| p[v].dist(p[s]);
    while let Some(&mut (u, ref mut next)) = stack.last_mut() {
        if *next == 0 && d[u] > (1.0 + eps) * ds(u) {
            d[u] = ds(u);
            spokes.push(u);
        }
        if *next > 0 {
            // returning from child: relax child -> u
            let c = children[u][*next - 1];
            let w = p[u].dist(p[c]);
            if d[c] + w < d[u] {
                d[u] = d[c] + w;
            }
        }
        if *next < children[u].len() {
            let c = children[u][*next];
            *next += 1;
            let w = p[u].dist(p[c]);
            if d[u] + w < d[c] {
                d[c] = d[u] + w;
            }
            stack.push((c, 0));
        } else {
            stack.pop();
        }
    }
    let mut g = tree_graph(inst);
    for (u, v) in mst(p).edges {
        g.add_edge(u, v);
    }
    for v in spokes {
        g.add_edge(s, v);
    }
    g.dedup_edges();
    shortest_path_tree(&g, s)
}

/// DFS preorder of the MST from the source, without the source.
pub fn hamiltonian_order(inst: &Instance) -> Vec<usize> {
    let children = mst_children(inst);
    let mut order = Vec::with_capacity(inst.len());
    let mut stack = vec![inst.source_index()];
    while let Some(u) = stack.pop() {
        order.push(u);
        for &c in children[u].iter().rev() {
            stack.push(c);
        }
    }
    order.remove(0);
    order
}

/// Consecutive ranges of a Hamiltonian path, each with its anchor (the
/// vertex closest to the source, lowest id on ties).
#[derive(Clone, Debug, PartialEq)]
pub struct SubpathBreak {
    pub order: Vec<usize>,
    pub ranges: Vec<std::ops::Range<usize>>,
    pub anchors: Vec<usize>,
}

impl SubpathBreak {
    pub fn path_weight(&self, inst: &Instance, r: &std::ops::Range<usize>) -> f64 {
        let p = inst.points();
        self.order[r.clone()].windows(2).map(|w| p[w[0]].dist(p[w[1]])).sum()
    }
}

/// Greedy break: a subpath is extended while its weight stays within
/// `factor * (min distance to the source over its vertices)`.
pub fn break_path(inst: &Instance, factor: f64) -> SubpathBreak {
    let p = inst.points();
    let s = inst.source();
    let order = hamiltonian_order(inst);
    let mut ranges = Vec::new();
    let mut anchors = Vec::new();
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        let mut weight = 0.0;
        let mut anchor = order[start];
        let mut min_d = p[anchor].dist(s);
        while end < order.len() {
            let v = order[end];
            let w = weight + p[order[end - 1]].dist(p[v]);
            let dv = p[v].dist(s);
            if w > factor * min_d.min(dv) {
                break;
            }
            weight = w;
            if dv < min_d || (dv == min_d && v < anchor) {
                min_d = dv;
                anchor = v;
            }
            end += 1;
        }
        ranges.push(start..end);
        anchors.push(anchor);
        start = end;
    }
    SubpathBreak { order, ranges, anchors }
}

/// Hamiltonian path cut into subpaths of weight at most `eps` times their
/// distance to the source, each hung from the source at its anchor.
pub fn abp_slt(inst: &Instance) -> Result<RootedTree> {
    let br = break_path(inst, inst.eps());
    let mut g = tree_graph(inst);
    for (r, &a) in br.ranges.iter().zip(&br.anchors) {
        for w in br.order[r.clone()].windows(2) {
            g.add_edge(w[0], w[1]);
        }
        g.add_edge(inst.source_index(), a);
    }
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    RootedTree::from_edges(g.vertices().to_vec(), &edges, inst.source_index())
}

/// Bound on gadget weight relative to the anchor distance.
pub const GADGET_WEIGHT_FACTOR: f64 = 3.0;

/// Merge point of `a` and `b`: their midpoint moved toward `s` by their
/// separation, but never more than half-way to `s`.
fn merge_point(a: Point2, b: Point2, s: Point2) -> Point2 {
    let m = a.midpoint(b);
    let to_s = s - m;
    let len = to_s.norm();
    if len == 0.0 {
        return m;
    }
    let shift = a.dist(b).min(0.5 * len);
    m + to_s * (shift / len)
}

/// Hamiltonian path cut with threshold `sqrt(eps)`; each subpath is joined to
/// the source by a balanced merge tree of Steiner points.
pub fn solomon_slt(inst: &Instance) -> Result<RootedTree> {
    let br = break_path(inst, inst.eps().sqrt());
    let s = inst.source_index();
    let sp = inst.source();
    let mut g = tree_graph(inst);
    for (r, &anchor) in br.ranges.iter().zip(&br.anchors) {
        let mut group: Vec<usize> = br.order[r.clone()].to_vec();
        let start_edges = g.edges().len();
        while group.len() > 1 {
            let mut next = Vec::with_capacity(group.len().div_ceil(2));
            for pair in group.chunks(2) {
                if let [a, b] = *pair {
                    let q = merge_point(g.vertex(a).pos, g.vertex(b).pos, sp);
                    let m = g.add_vertex(q, VertexKind::Steiner);
                    g.add_edge(a, m);
                    g.add_edge(b, m);
                    next.push(m);
                } else {
                    next.push(pair[0]);
                }
            }
            group = next;
        }
        g.add_edge(group[0], s);
        let weight: f64 = g.edges()[start_edges..].iter().map(|e| e.w).sum();
        let anchor_d = inst.points()[anchor].dist(sp);
        let bound = GADGET_WEIGHT_FACTOR * anchor_d;
        if weight > bound {
            return Err(SltError::GadgetTooHeavy {
                weight,
                bound,
                anchor: anchor_d,
            });
        }
    }
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let verts: Vec<Vertex> = g.vertices().to_vec();
    RootedTree::from_edges(verts, &edges, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{lightness, root_stretch};
    use crate::instances::{circle, uniform};

    #[test]
    fn kry_keeps_an_mst_that_is_already_shallow() {
        let pts: Vec<Point2> = (0..6).map(|i| Point2::new(i as f64, 0.0)).collect();
        let inst = Instance::new(pts, 0, 0.1).unwrap();
        let t = kry_slt(&inst).unwrap();
        assert_eq!(lightness(&t, &inst), 1.0);
        assert_eq!(root_stretch(&t, &inst).unwrap(), 1.0);
    }

    #[test]
    fn kry_stretch_on_random_instances() {
        for seed in 0..100 {
            let eps = [0.5, 0.1, 0.02][seed as usize % 3];
            let inst = uniform(60, eps, seed).unwrap();
            let t = kry_slt(&inst).unwrap();
            assert!(root_stretch(&t, &inst).unwrap() <= 1.0 + eps + 1e-9);
        }
    }

    #[test]
    fn abp_rule_and_stretch() {
        for seed in 0..20 {
            let inst = uniform(200, 0.05, seed).unwrap();
            let br = break_path(&inst, inst.eps());
            let p = inst.points();
            for (r, &a) in br.ranges.iter().zip(&br.anchors) {
                assert!(br.path_weight(&inst, r) <= inst.eps() * p[a].dist(inst.source()) + 1e-15);
            }
            let ham: f64 = br.order.windows(2).map(|w| p[w[0]].dist(p[w[1]])).sum::<f64>()
                + p[br.order[0]].dist(inst.source());
            assert!(ham <= 2.0 * mst(p).weight + 1e-9);
            let t = abp_slt(&inst).unwrap();
            assert!(root_stretch(&t, &inst).unwrap() <= 1.0 + inst.eps() + 1e-9);
        }
    }

    #[test]
    fn abp_single_cluster() {
        let s = Point2::new(0.0, 0.0);
        let pts = vec![s, Point2::new(10.0, 0.0), Point2::new(10.0, 0.1), Point2::new(10.1, 0.1)];
        let inst = Instance::new(pts, 0, 0.1).unwrap();
        assert_eq!(break_path(&inst, 0.1).ranges.len(), 1);
        let t = abp_slt(&inst).unwrap();
        assert_eq!(t.edges().iter().filter(|&&(_, u)| u == 0).count(), 1);
    }

    #[test]
    fn solomon_on_circle() {
        let inst = circle(64, 1.0 / 64.0).unwrap();
        let t = solomon_slt(&inst).unwrap();
        assert!(t.num_vertices() >= inst.len());
        assert!(root_stretch(&t, &inst).unwrap() < 2.0);
        let lone = Instance::new(vec![Point2::new(0.0, 0.0), Point2::new(1.0, 1.0)], 0, 0.1).unwrap();
        let t = solomon_slt(&lone).unwrap();
        assert_eq!(t.num_vertices(), 2);
    }
}
