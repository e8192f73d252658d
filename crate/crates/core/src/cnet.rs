//! Centered eps-nets, cluster assignment and per-cluster 2-spanners.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use crate::error::{Result, SltError};
use crate::geom::Point2;
use crate::spatial::Grid;
use crate::tiling::floor_log2;

/// Net members in insertion order, and for every point the point index of
/// the net member covering it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenteredNet {
    pub net: Vec<usize>,
    pub assignment: Vec<usize>,
}

impl CenteredNet {
    /// Points assigned to each net member, in net order; each cluster lists
    /// its net member first and the rest by index.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut slot = HashMap::with_capacity(self.net.len());
        let mut out: Vec<Vec<usize>> = self
            .net
            .iter()
            .enumerate()
            .map(|(k, &a)| {
                slot.insert(a, k);
                vec![a]
            })
            .collect();
        for (p, &a) in self.assignment.iter().enumerate() {
            if p != a {
                out[slot[&a]].push(p);
            }
        }
        out
    }
}

/// Greedy centered eps-net in order of increasing distance to `source`
/// (ties by index). A point joins the net unless some earlier net point `a`
/// has `d(p, a) <= eps * d(a, source)`; otherwise it is assigned to the first
/// such `a`.
pub fn build_cnet(points: &[Point2], source: Point2, eps: f64) -> Result<CenteredNet> {
    if !(eps > 0.0 && eps < 1.0 / 9.0) {
        return Err(SltError::EpsilonOutOfRange {
            eps,
            range: "(0, 1/9)",
        });
    }
    let dist: Vec<f64> = points.iter().map(|p| p.dist(source)).collect();
    if let Some(i) = dist.iter().position(|&d| d == 0.0) {
        return Err(SltError::PointAtSource(i));
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)));

    // Net point `a` lives in the grid of level floor(log2 d(a, s)) whose cell
    // exceeds its covering radius, so a 3x3 block around `p` finds it.
    // Covering points have d(a, s) in [(1 - eps) d(p, s), d(p, s)], hence
    // their level is that of `p` or one below.
    let cell_of = |q: Point2, level: i32| -> (i32, i64, i64) {
        let size = eps * 2f64.powi(level + 1);
        (level, (q.x / size).floor() as i64, (q.y / size).floor() as i64)
    };
    let mut buckets: HashMap<(i32, i64, i64), Vec<usize>> = HashMap::new();
    let mut rank = vec![usize::MAX; points.len()];
    let mut net = Vec::new();
    let mut assignment = vec![usize::MAX; points.len()];
    for &p in &order {
        let q = points[p];
        let lp = floor_log2(dist[p]);
        let mut cover: Option<usize> = None;
        for level in [lp, lp - 1] {
            let (_, kx, ky) = cell_of(q, level);
            for dx in -1..=1 {
                for dy in -1..=1 {
                    if let Some(list) = buckets.get(&(level, kx + dx, ky + dy)) {
                        for &a in list {
                            if q.dist(points[a]) <= eps * dist[a]
                                && cover.is_none_or(|c| rank[a] < rank[c])
                            {
                                cover = Some(a);
                            }
                        }
                    }
                }
            }
        }
        match cover {
            Some(a) => assignment[p] = a,
            None => {
                rank[p] = net.len();
                net.push(p);
                assignment[p] = p;
                buckets.entry(cell_of(q, lp)).or_default().push(p);
            }
        }
    }
    Ok(CenteredNet { net, assignment })
}

/// Exhaustive check of separation and covering; returns a description of the
/// first violation.
pub fn check_cnet(points: &[Point2], source: Point2, eps: f64, cn: &CenteredNet) -> std::result::Result<(), String> {
    if cn.assignment.len() != points.len() {
        return Err("assignment size mismatch".into());
    }
    for (i, &a) in cn.net.iter().enumerate() {
        if cn.assignment[a] != a {
            return Err(format!("net point {a} not assigned to itself"));
        }
        for &b in &cn.net[i + 1..] {
            let m = points[a].dist(source).min(points[b].dist(source));
            if points[a].dist(points[b]) <= eps * m {
                return Err(format!("net points {a} and {b} too close"));
            }
        }
    }
    for (p, &a) in cn.assignment.iter().enumerate() {
        if cn.assignment.get(a) != Some(&a) {
            return Err(format!("point {p} assigned to non-net point {a}"));
        }
        if points[p].dist(points[a]) > eps * points[p].dist(source) {
            return Err(format!("point {p} not covered by {a}"));
        }
    }
    Ok(())
}

/// Clusters up to this size use the all-pairs path-greedy spanner.
pub const DENSE_SPANNER_LIMIT: usize = 600;
/// Yao cones for larger clusters; 24 cones give a 1/(1 - 2 sin(pi/24)) spanner.
const YAO_CONES: usize = 24;

/// Edges (as positions into `cluster`) of a 2-spanner of the cluster.
pub fn cluster_spanner(cluster: &[Point2]) -> Vec<(usize, usize)> {
    if cluster.len() <= DENSE_SPANNER_LIMIT {
        greedy_spanner_dense(cluster, 2.0)
    } else {
        greedy_spanner_yao(cluster)
    }
}

fn sorted_pairs(points: &[Point2], pairs: impl Iterator<Item = (usize, usize)>) -> Vec<(f64, usize, usize)> {
    let mut v: Vec<(f64, usize, usize)> = pairs.map(|(u, v)| (points[u].dist(points[v]), u, v)).collect();
    v.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    v
}

/// Path-greedy `t`-spanner with an all-pairs distance matrix kept current.
pub fn greedy_spanner_dense(points: &[Point2], t: f64) -> Vec<(usize, usize)> {
    let m = points.len();
    let mut d = vec![f64::INFINITY; m * m];
    for i in 0..m {
        d[i * m + i] = 0.0;
    }
    let mut edges = Vec::new();
    let pairs = sorted_pairs(points, (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v))));
    for (w, u, v) in pairs {
        if d[u * m + v] <= t * w {
            continue;
        }
        edges.push((u, v));
        let du: Vec<f64> = d[u * m..(u + 1) * m].to_vec();
        let dv: Vec<f64> = d[v * m..(v + 1) * m].to_vec();
        for i in 0..m {
            let (a, b) = (du[i], dv[i]);
            if a.is_infinite() && b.is_infinite() {
                continue;
            }
            let row = &mut d[i * m..(i + 1) * m];
            for j in 0..m {
                let via = (a + w + dv[j]).min(b + w + du[j]);
                if via < row[j] {
                    row[j] = via;
                }
            }
        }
    }
    edges
}

#[derive(PartialEq)]
struct Item(f64, usize);

impl Eq for Item {}

impl Ord for Item {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.total_cmp(&self.0).then_with(|| o.1.cmp(&self.1))
    }
}

impl PartialOrd for Item {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

fn within(adj: &[Vec<(usize, f64)>], dist: &mut HashMap<usize, f64>, u: usize, v: usize, limit: f64) -> bool {
    dist.clear();
    let mut heap = BinaryHeap::new();
    dist.insert(u, 0.0);
    heap.push(Item(0.0, u));
    while let Some(Item(d, x)) = heap.pop() {
        if x == v {
            return true;
        }
        if d > dist[&x] {
            continue;
        }
        for &(y, w) in &adj[x] {
            let nd = d + w;
            if nd <= limit && dist.get(&y).is_none_or(|&old| nd < old) {
                dist.insert(y, nd);
                heap.push(Item(nd, y));
            }
        }
    }
    false
}

/// Path-greedy over Yao-graph candidate edges. The Yao graph stretches by at
/// most `t_yao`; greedy with `2 / t_yao` on it composes to 2.
pub fn greedy_spanner_yao(points: &[Point2]) -> Vec<(usize, usize)> {
    let m = points.len();
    let t_yao = 1.0 / (1.0 - 2.0 * (std::f64::consts::PI / YAO_CONES as f64).sin());
    let t = 2.0 / t_yao;
    let grid = Grid::build(points);
    let mut cand: Vec<(usize, usize)> = Vec::new();
    for i in 0..m {
        for j in grid.cone_nearest(points, i, YAO_CONES) {
            cand.push((i.min(j), i.max(j)));
        }
    }
    cand.sort_unstable();
    cand.dedup();
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); m];
    let mut edges = Vec::new();
    let mut scratch = HashMap::new();
    for (w, u, v) in sorted_pairs(points, cand.into_iter()) {
        if within(&adj, &mut scratch, u, v, t * w) {
            continue;
        }
        adj[u].push((v, w));
        adj[v].push((u, w));
        edges.push((u, v));
    }
    edges
}
