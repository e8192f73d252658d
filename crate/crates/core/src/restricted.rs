//! Tile algorithm without Steiner points. Every net point owns one rectangle
//! per level strip `[L_i, L_{i+1}]` of its ladder; the rectangles on a strip
//! are hit by a minimum set of input points, and each net point walks through
//! one hitting point per nonempty rectangle. Paths are then thinned so that
//! adjacent interior levels differ by at least two.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::geom::{sandwich_ellipse, FocalEllipse, Interval, Point2};
use crate::graph::{GeoGraph, VertexKind};
use crate::hitting::{hit_intervals_discrete, StripRect};
use crate::steiner::{check_eps, ladder_depth, ladder_with_levels, Ladder, CANONICAL_SOURCE};

/// Path from a net point to the source through input points. `vertices`
/// holds tile point indices with `usize::MAX` standing for the source;
/// `levels[i]` is the level of `vertices[i + 1]` (the source gets `k + 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeveledPath {
    pub vertices: Vec<usize>,
    pub levels: Vec<usize>,
}

pub const SOURCE_MARK: usize = usize::MAX;

impl LeveledPath {
    pub fn interior(&self) -> &[usize] {
        &self.vertices[1..self.vertices.len() - 1]
    }

    pub fn interior_levels(&self) -> &[usize] {
        &self.levels[..self.levels.len() - 1]
    }
}

/// Ladder with one extra line so that every level has a closing strip line.
pub fn strip_ladder(p: Point2, eps: f64) -> Ladder {
    ladder_with_levels(p.x, eps, ladder_depth(eps) + 1)
}

/// Bounding boxes of `E_p` clipped to the strips of `p`'s ladder, one per
/// level; `None` where the strip misses the ellipse.
pub fn level_rectangles(p: Point2, eps: f64) -> Result<Vec<Option<StripRect>>> {
    check_eps(eps)?;
    let e = sandwich_ellipse(p, CANONICAL_SOURCE, eps)?;
    let ladder = strip_ladder(p, eps);
    rectangles_for(&e, &ladder, 0)
}

fn rectangles_for(e: &FocalEllipse, ladder: &Ladder, owner: usize) -> Result<Vec<Option<StripRect>>> {
    let k = ladder.len() - 1;
    (0..k)
        .map(|i| {
            Ok(e.strip_bounding_box(ladder.lines[i], ladder.lines[i + 1])?
                .map(|(x, y)| StripRect { x, y, owner }))
        })
        .collect()
}

/// Removes the later vertex of the first adjacent interior pair whose levels
/// differ by exactly one, until no such pair remains.
pub fn prune_path(path: &LeveledPath) -> LeveledPath {
    let mut out = path.clone();
    loop {
        let lv = out.interior_levels();
        let Some(i) = (0..lv.len().saturating_sub(1)).find(|&i| lv[i + 1] == lv[i] + 1) else {
            return out;
        };
        out.vertices.remove(i + 2);
        out.levels.remove(i + 1);
    }
}

/// Per-strip hitting problem: the tile points inside the strip and the
/// members chosen to hit its rectangles.
#[derive(Clone, Debug, PartialEq)]
pub struct StripSolution {
    pub level: usize,
    pub x: Interval,
    /// Kept rectangles (those containing a candidate), by owner.
    pub rects: Vec<StripRect>,
    /// Hitting set as tile point indices, ascending in `(y, index)`.
    pub hitting: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct RestrictedTile {
    /// All tile points are vertices `0..n`, the source is `n`.
    pub graph: GeoGraph,
    pub ladders: Vec<Ladder>,
    /// Rectangles per net position and level.
    pub rects: Vec<Vec<Option<StripRect>>>,
    pub strips: BTreeMap<(usize, i64), StripSolution>,
    pub candidate_paths: Vec<LeveledPath>,
    pub paths: Vec<LeveledPath>,
}

/// Chooses, for every level whose rectangle met a candidate, the lowest-index
/// hitting member inside the rectangle.
pub fn candidate_path(
    p: usize,
    rects: &[Option<StripRect>],
    ladder: &Ladder,
    strips: &BTreeMap<(usize, i64), StripSolution>,
    points: &[Point2],
) -> LeveledPath {
    let k = rects.len();
    let mut vertices = vec![p];
    let mut levels = Vec::new();
    for (i, r) in rects.iter().enumerate() {
        let Some(r) = r else { continue };
        let Some(sol) = strips.get(&(i, ladder.multiples[i])) else {
            continue;
        };
        let pick = sol
            .hitting
            .iter()
            .copied()
            .filter(|&q| r.y.contains(points[q].y))
            .min();
        if let Some(q) = pick {
            assert_ne!(vertices.last(), Some(&q), "point serves two consecutive levels");
            vertices.push(q);
            levels.push(i);
        }
    }
    vertices.push(SOURCE_MARK);
    levels.push(k + 1);
    LeveledPath { vertices, levels }
}

pub fn restricted_tile_tree(net: &[usize], points: &[Point2], eps: f64) -> Result<GeoGraph> {
    Ok(restricted_tile_detailed(net, points, eps)?.graph)
}

pub fn restricted_tile_detailed(net: &[usize], points: &[Point2], eps: f64) -> Result<RestrictedTile> {
    check_eps(eps)?;
    let mut by_x: Vec<usize> = (0..points.len()).collect();
    by_x.sort_by(|&a, &b| points[a].x.total_cmp(&points[b].x).then(a.cmp(&b)));
    let xs: Vec<f64> = by_x.iter().map(|&i| points[i].x).collect();

    let mut ladders = Vec::with_capacity(net.len());
    let mut rects = Vec::with_capacity(net.len());
    let mut groups: BTreeMap<(usize, i64), Vec<StripRect>> = BTreeMap::new();
    for &p in net {
        let e = sandwich_ellipse(points[p], CANONICAL_SOURCE, eps)?;
        let ladder = strip_ladder(points[p], eps);
        let rs = rectangles_for(&e, &ladder, p)?;
        for (i, r) in rs.iter().enumerate() {
            if let Some(r) = r {
                groups.entry((i, ladder.multiples[i])).or_default().push(*r);
            }
        }
        ladders.push(ladder);
        rects.push(rs);
    }

    let mut strips = BTreeMap::new();
    for ((level, j), group) in groups {
        let lo = j as f64 * crate::steiner::family_spacing(level, eps);
        let hi = ((j.div_euclid(4) + 2) as f64) * crate::steiner::family_spacing(level + 1, eps);
        // points on a line belong to the strip on its left
        let a = xs.partition_point(|&x| x <= lo);
        let b = xs.partition_point(|&x| x <= hi);
        let mut cand: Vec<usize> = by_x[a..b].to_vec();
        cand.sort_by(|&u, &v| points[u].y.total_cmp(&points[v].y).then(u.cmp(&v)));
        let ys: Vec<f64> = cand.iter().map(|&q| points[q].y).collect();
        let kept: Vec<StripRect> = group
            .into_iter()
            .filter(|r| {
                let t = ys.partition_point(|&y| y < r.y.lo());
                t < ys.len() && ys[t] <= r.y.hi()
            })
            .collect();
        let ivs: Vec<Interval> = kept.iter().map(|r| r.y).collect();
        let hit = hit_intervals_discrete(&ivs, &ys)?;
        strips.insert(
            (level, j),
            StripSolution {
                level,
                x: Interval::new(lo, hi),
                rects: kept,
                hitting: hit.into_iter().map(|t| cand[t]).collect(),
            },
        );
    }

    let mut graph = GeoGraph::new();
    for &q in points {
        graph.add_vertex(q, VertexKind::Input);
    }
    let source = graph.add_vertex(CANONICAL_SOURCE, VertexKind::Source);
    let mut candidate_paths = Vec::with_capacity(net.len());
    let mut paths = Vec::with_capacity(net.len());
    for (pos, &p) in net.iter().enumerate() {
        let cpath = candidate_path(p, &rects[pos], &ladders[pos], &strips, points);
        let path = prune_path(&cpath);
        for w in path.vertices.windows(2) {
            let id = |v: usize| if v == SOURCE_MARK { source } else { v };
            graph.add_edge(id(w[0]), id(w[1]));
        }
        candidate_paths.push(cpath);
        paths.push(path);
    }
    Ok(RestrictedTile {
        graph,
        ladders,
        rects,
        strips,
        candidate_paths,
        paths,
    })
}
