//! Weighted geometric graphs, minimum spanning trees, shortest-path trees and
//! the two quality measures of a rooted tree: root-stretch and lightness.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use crate::error::{Result, SltError};
use crate::geom::Point2;
use crate::instance::Instance;
use crate::spatial::Grid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Input,
    Steiner,
    Source,
}

impl VertexKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VertexKind::Input => "input",
            VertexKind::Steiner => "steiner",
            VertexKind::Source => "source",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Vertex {
    pub pos: Point2,
    pub kind: VertexKind,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// Undirected geometric multigraph; edge weights are Euclidean lengths.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GeoGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl GeoGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, pos: Point2, kind: VertexKind) -> usize {
        self.vertices.push(Vertex { pos, kind });
        self.vertices.len() - 1
    }

    /// Adds `uv` unless `u == v`; returns whether an edge was added.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        let w = self.vertices[u].pos.dist(self.vertices[v].pos);
        self.edges.push(Edge { u, v, w });
        true
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> Vertex {
        self.vertices[id]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    /// Removes parallel edges, keeping the first occurrence of each pair.
    pub fn dedup_edges(&mut self) {
        let mut seen = HashSet::with_capacity(self.edges.len());
        self.edges.retain(|e| seen.insert((e.u.min(e.v), e.u.max(e.v))));
    }

    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.u].push((e.v, e.w));
            adj[e.v].push((e.u, e.w));
        }
        adj
    }
}

/// Spanning tree given by a parent map, with root distances along the tree.
#[derive(Clone, Debug, PartialEq)]
pub struct RootedTree {
    vertices: Vec<Vertex>,
    root: usize,
    parent: Vec<Option<usize>>,
    dist: Vec<f64>,
}

impl RootedTree {
    pub fn from_parents(vertices: Vec<Vertex>, root: usize, parent: Vec<Option<usize>>) -> Result<Self> {
        let n = vertices.len();
        if root >= n || parent.len() != n {
            return Err(SltError::NotATree(format!("root {root} / parent map size mismatch")));
        }
        if parent[root].is_some() {
            return Err(SltError::NotATree("root has a parent".into()));
        }
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            match *p {
                Some(u) if u >= n || u == v => {
                    return Err(SltError::NotATree(format!("bad parent {u} of {v}")))
                }
                Some(u) => children[u].push(v),
                None if v != root => {
                    return Err(SltError::NotATree(format!("vertex {v} has no parent")))
                }
                None => {}
            }
        }
        let mut dist = vec![f64::NAN; n];
        dist[root] = 0.0;
        let mut stack = vec![root];
        let mut seen = 1;
        while let Some(u) = stack.pop() {
            for &c in &children[u] {
                dist[c] = dist[u] + vertices[u].pos.dist(vertices[c].pos);
                seen += 1;
                stack.push(c);
            }
        }
        if seen != n {
            return Err(SltError::NotATree("parent map contains a cycle".into()));
        }
        Ok(RootedTree {
            vertices,
            root,
            parent,
            dist,
        })
    }

    /// Orients an undirected edge list away from `root`.
    pub fn from_edges(vertices: Vec<Vertex>, edges: &[(usize, usize)], root: usize) -> Result<Self> {
        let n = vertices.len();
        if n == 0 || edges.len() != n - 1 {
            return Err(SltError::NotATree(format!(
                "{} edges for {} vertices",
                edges.len(),
                n
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(SltError::NotATree(format!("bad edge ({u}, {v})")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        if root >= n {
            return Err(SltError::NotATree(format!("root {root} out of range")));
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    stack.push(v);
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(SltError::NotATree(format!("vertex {v} not connected")));
        }
        RootedTree::from_parents(vertices, root, parent)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    /// Tree distance from the root.
    pub fn dist(&self, v: usize) -> f64 {
        self.dist[v]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// `(child, parent)` pairs in child order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|u| (v, u)))
            .collect()
    }

    pub fn weight(&self) -> f64 {
        total_length(self.edges().into_iter().map(|(v, u)| self.vertices[v].pos.dist(self.vertices[u].pos)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for (v, u) in self.edges() {
            deg[v] += 1;
            deg[u] += 1;
        }
        deg
    }

    /// Repeatedly drops Steiner leaves. Surviving vertices keep their relative
    /// order, so a prefix of input vertices keeps its ids.
    pub fn prune_steiner_leaves(&self) -> RootedTree {
        let n = self.vertices.len();
        let mut deg = self.degrees();
        let mut alive = vec![true; n];
        let mut stack: Vec<usize> = (0..n)
            .filter(|&v| v != self.root && deg[v] <= 1 && self.vertices[v].kind == VertexKind::Steiner)
            .collect();
        while let Some(v) = stack.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            if let Some(u) = self.parent[v] {
                deg[u] -= 1;
                if u != self.root && deg[u] <= 1 && alive[u] && self.vertices[u].kind == VertexKind::Steiner {
                    stack.push(u);
                }
            }
        }
        let mut new_id = vec![usize::MAX; n];
        let mut vertices = Vec::new();
        for v in 0..n {
            if alive[v] {
                new_id[v] = vertices.len();
                vertices.push(self.vertices[v]);
            }
        }
        let parent = (0..n)
            .filter(|&v| alive[v])
            .map(|v| self.parent[v].map(|u| new_id[u]))
            .collect();
        let mut dist = Vec::with_capacity(vertices.len());
        for v in 0..n {
            if alive[v] {
                dist.push(self.dist[v]);
            }
        }
        RootedTree {
            vertices,
            root: new_id[self.root],
            parent,
            dist,
        }
    }
}

impl RootedTree {
    /// Splices out Steiner vertices with exactly one child, joining the child
    /// to the nearest kept ancestor. By the triangle inequality neither the
    /// weight nor any root distance grows.
    pub fn contract_steiner_relays(&self) -> RootedTree {
        let n = self.vertices.len();
        let mut children = vec![0usize; n];
        for p in self.parent.iter().flatten() {
            children[*p] += 1;
        }
        let removed: Vec<bool> = (0..n)
            .map(|v| v != self.root && self.vertices[v].kind == VertexKind::Steiner && children[v] == 1)
            .collect();
        let mut new_id = vec![usize::MAX; n];
        let mut vertices = Vec::new();
        for v in 0..n {
            if !removed[v] {
                new_id[v] = vertices.len();
                vertices.push(self.vertices[v]);
            }
        }
        let parent = (0..n)
            .filter(|&v| !removed[v])
            .map(|v| {
                let mut p = self.parent[v];
                while let Some(u) = p {
                    if !removed[u] {
                        break;
                    }
                    p = self.parent[u];
                }
                p.map(|u| new_id[u])
            })
            .collect();
        RootedTree::from_parents(vertices, new_id[self.root], parent).expect("contraction keeps a tree")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mst {
    pub edges: Vec<(usize, usize)>,
    pub weight: f64,
}

/// Largest input handled by the exact quadratic Prim.
pub const EXACT_MST_LIMIT: usize = 2048;
/// Neighbor count of the candidate graph used above that size.
pub const MST_CANDIDATE_K: usize = 16;

/// Sum of edge lengths in ascending order, so equal edge sets give equal
/// totals whatever order they are listed in.
pub fn total_length(lengths: impl Iterator<Item = f64>) -> f64 {
    let mut v: Vec<f64> = lengths.collect();
    v.sort_by(f64::total_cmp);
    v.into_iter().sum()
}

fn mst_weight(points: &[Point2], edges: &[(usize, usize)]) -> f64 {
    total_length(edges.iter().map(|&(u, v)| points[u].dist(points[v])))
}

/// Euclidean MST: exact Prim up to [`EXACT_MST_LIMIT`] points, otherwise
/// Kruskal on a k-nearest-neighbor candidate graph.
pub fn mst(points: &[Point2]) -> Mst {
    if points.len() <= EXACT_MST_LIMIT {
        mst_exact(points)
    } else {
        mst_knn(points, MST_CANDIDATE_K)
    }
}

/// O(n^2) Prim on the complete graph; ties by lower vertex id.
pub fn mst_exact(points: &[Point2]) -> Mst {
    let n = points.len();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    if n == 0 {
        return Mst { edges, weight: 0.0 };
    }
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut from = vec![0usize; n];
    let mut cur = 0;
    in_tree[0] = true;
    for _ in 1..n {
        let p = points[cur];
        let mut next = usize::MAX;
        let mut next_d = f64::INFINITY;
        for v in 0..n {
            if in_tree[v] {
                continue;
            }
            let d = p.dist(points[v]);
            if d < best[v] {
                best[v] = d;
                from[v] = cur;
            }
            if best[v] < next_d {
                next_d = best[v];
                next = v;
            }
        }
        in_tree[next] = true;
        edges.push((from[next], next));
        cur = next;
    }
    let weight = mst_weight(points, &edges);
    Mst { edges, weight }
}

pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            Ordering::Less => self.parent[ra] = rb,
            Ordering::Greater => self.parent[rb] = ra,
            Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Kruskal over the `k`-nearest-neighbor graph; `k` doubles until the
/// candidate graph is connected.
pub fn mst_knn(points: &[Point2], k: usize) -> Mst {
    let n = points.len();
    if n < 2 {
        return Mst {
            edges: Vec::new(),
            weight: 0.0,
        };
    }
    let grid = Grid::build(points);
    let mut k = k.max(1).min(n - 1);
    loop {
        let mut cand: Vec<(f64, usize, usize)> = Vec::with_capacity(n * k);
        for i in 0..n {
            for j in grid.knn(points, i, k) {
                let (a, b) = (i.min(j), i.max(j));
                cand.push((points[a].dist(points[b]), a, b));
            }
        }
        cand.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
        cand.dedup_by(|x, y| x.1 == y.1 && x.2 == y.2);
        let mut dsu = DisjointSets::new(n);
        let mut edges = Vec::with_capacity(n - 1);
        for (_, a, b) in cand {
            if dsu.union(a, b) {
                edges.push((a, b));
            }
        }
        if edges.len() == n - 1 || k >= n - 1 {
            let weight = mst_weight(points, &edges);
            return Mst { edges, weight };
        }
        k = (2 * k).min(n - 1);
    }
}

#[derive(Clone, Copy, PartialEq)]
struct HeapItem {
    dist: f64,
    id: usize,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on (dist, id)
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.id.cmp(&self.id))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra distances and parents from `root`; unreachable vertices keep
/// `INFINITY` and no parent.
pub fn dijkstra(g: &GeoGraph, root: usize) -> (Vec<f64>, Vec<Option<usize>>) {
    let n = g.num_vertices();
    let adj = g.adjacency();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[root] = 0.0;
    heap.push(HeapItem { dist: 0.0, id: root });
    while let Some(HeapItem { dist: d, id: u }) = heap.pop() {
        if done[u] || d > dist[u] {
            continue;
        }
        done[u] = true;
        for &(v, w) in &adj[u] {
            if done[v] {
                continue;
            }
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                parent[v] = Some(u);
                heap.push(HeapItem { dist: nd, id: v });
            } else if nd == dist[v] && parent[v].is_some_and(|p| u < p) {
                parent[v] = Some(u);
            }
        }
    }
    (dist, parent)
}

pub fn shortest_path_tree(g: &GeoGraph, root: usize) -> Result<RootedTree> {
    let (dist, parent) = dijkstra(g, root);
    let unreachable: Vec<usize> = (0..g.num_vertices())
        .filter(|&v| !dist[v].is_finite())
        .collect();
    if !unreachable.is_empty() {
        return Err(SltError::Unreachable(unreachable));
    }
    RootedTree::from_parents(g.vertices().to_vec(), root, parent)
}

fn check_inputs(t: &RootedTree, inst: &Instance) -> Result<()> {
    if t.num_vertices() < inst.len() {
        return Err(SltError::MissingInputPoint(t.num_vertices()));
    }
    for (i, p) in inst.points().iter().enumerate() {
        if t.vertices[i].pos != *p {
            return Err(SltError::MissingInputPoint(i));
        }
    }
    Ok(())
}

/// Max over input points `p != s` of `d_T(s, p) / d(s, p)`. Tree vertex `i`
/// must be instance point `i`.
pub fn root_stretch(t: &RootedTree, inst: &Instance) -> Result<f64> {
    check_inputs(t, inst)?;
    let s = inst.source();
    let mut worst = 1.0f64;
    for (i, p) in inst.points().iter().enumerate() {
        if i == inst.source_index() {
            continue;
        }
        // distance from the tree root, which is the source
        let d_tree = if t.root == inst.source_index() {
            t.dist(i)
        } else {
            path_length(t, i, inst.source_index())
        };
        worst = worst.max(d_tree / p.dist(s));
    }
    Ok(worst)
}

fn path_length(t: &RootedTree, a: usize, b: usize) -> f64 {
    // |d(a) - d(lca)| + |d(b) - d(lca)| via ancestor marking
    let mut anc = HashSet::new();
    let mut x = Some(a);
    while let Some(v) = x {
        anc.insert(v);
        x = t.parent[v];
    }
    let mut y = b;
    while !anc.contains(&y) {
        y = t.parent[y].expect("tree is connected");
    }
    t.dist[a] + t.dist[b] - 2.0 * t.dist[y]
}

/// `w(T) / w(MST(all instance points))`.
pub fn lightness(t: &RootedTree, inst: &Instance) -> f64 {
    t.weight() / mst(inst.points()).weight
}
