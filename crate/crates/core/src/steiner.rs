//! Steiner tile algorithm. Works in the canonical frame: source at `(2, 0)`,
//! net points in the unit-ish box left of it. Each point climbs a ladder of
//! vertical lines with exponentially growing gaps; on every line a minimum
//! piercing set of the cross-sections serves as shared Steiner points.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Result, SltError};
use crate::geom::{sandwich_ellipse, FocalEllipse, Interval, Point2};
use crate::graph::{GeoGraph, VertexKind};
use crate::hitting::pierce_intervals;

pub const CANONICAL_SOURCE: Point2 = Point2 { x: 2.0, y: 0.0 };

/// Number of ladder levels: `max(1, floor(log4(1 / (16 eps))) + 1)`.
pub fn ladder_depth(eps: f64) -> usize {
    let mut m: i32 = -1;
    while 16.0 * eps * 4f64.powi(m + 1) <= 1.0 {
        m += 1;
    }
    (m + 1).max(1) as usize
}

/// Spacing `4^i eps` of line family `i`.
pub fn family_spacing(level: usize, eps: f64) -> f64 {
    4f64.powi(level as i32) * eps
}

/// Ladder of one point: line `i` is `x = multiples[i] * 4^i * eps`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ladder {
    pub multiples: Vec<i64>,
    pub lines: Vec<f64>,
}

impl Ladder {
    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}

/// Second multiple of `eps` strictly greater than `x`.
fn first_multiple(x: f64, eps: f64) -> i64 {
    let mut j = (x / eps).floor() as i64 + 1;
    while (j as f64) * eps <= x {
        j += 1;
    }
    while ((j - 1) as f64) * eps > x {
        j -= 1;
    }
    j + 1
}

/// Ladder with `levels` lines starting from `x`.
pub fn ladder_with_levels(x: f64, eps: f64, levels: usize) -> Ladder {
    let mut multiples: Vec<i64> = Vec::with_capacity(levels);
    let mut lines = Vec::with_capacity(levels);
    for i in 0..levels {
        let j = if i == 0 {
            first_multiple(x, eps)
        } else {
            multiples[i - 1].div_euclid(4) + 2
        };
        multiples.push(j);
        lines.push(j as f64 * family_spacing(i, eps));
    }
    Ladder { multiples, lines }
}

/// The `ladder_depth(eps)` lines of a canonical point; the last one must stay
/// within 2/3 of the point.
pub fn ladder_lines(p: Point2, eps: f64) -> Result<Ladder> {
    let ladder = ladder_with_levels(p.x, eps, ladder_depth(eps));
    let dist = ladder.lines[ladder.len() - 1] - p.x;
    if !(dist < 2.0 / 3.0) {
        return Err(SltError::LadderTooLong { dist });
    }
    Ok(ladder)
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps <= 1.0 / 16.0) {
        return Err(SltError::EpsilonOutOfRange {
            eps,
            range: "(0, 1/16]",
        });
    }
    Ok(())
}

/// Everything the Steiner tile algorithm computed, for inspection.
#[derive(Clone, Debug)]
pub struct SteinerTile {
    /// Net points are vertices `0..m`, the source is `m`, Steiner points follow.
    pub graph: GeoGraph,
    pub ellipses: Vec<FocalEllipse>,
    pub ladders: Vec<Ladder>,
    /// Cross-section of each point's ellipse on each of its ladder lines.
    pub sections: Vec<Vec<Interval>>,
    /// Piercing set per line, keyed by `(level, multiple)`, ascending in y.
    pub piercing: BTreeMap<(usize, i64), Vec<f64>>,
    /// Vertex ids of each point's path, from the point to the source.
    pub paths: Vec<Vec<usize>>,
}

impl SteinerTile {
    pub fn source_id(&self) -> usize {
        self.ladders.len()
    }
}

pub fn steiner_tile_tree(net: &[Point2], eps: f64) -> Result<GeoGraph> {
    Ok(steiner_tile_detailed(net, eps)?.graph)
}

pub fn steiner_tile_detailed(net: &[Point2], eps: f64) -> Result<SteinerTile> {
    check_eps(eps)?;
    let m = net.len();
    let k = ladder_depth(eps);
    let mut ellipses = Vec::with_capacity(m);
    let mut ladders = Vec::with_capacity(m);
    let mut sections = Vec::with_capacity(m);
    let mut groups: BTreeMap<(usize, i64), Vec<usize>> = BTreeMap::new();
    for (idx, &p) in net.iter().enumerate() {
        let e = sandwich_ellipse(p, CANONICAL_SOURCE, eps)?;
        let ladder = ladder_lines(p, eps)?;
        let mut secs = Vec::with_capacity(k);
        for (level, &x) in ladder.lines.iter().enumerate() {
            let iv = e
                .vertical_cross_section(x)?
                .ok_or(SltError::EmptyCrossSection { point: idx, level, x })?;
            secs.push(iv);
            groups.entry((level, ladder.multiples[level])).or_default().push(idx);
        }
        ellipses.push(e);
        ladders.push(ladder);
        sections.push(secs);
    }

    let mut piercing = BTreeMap::new();
    for (&(level, j), members) in &groups {
        let ivs: Vec<Interval> = members.iter().map(|&p| sections[p][level]).collect();
        piercing.insert((level, j), pierce_intervals(&ivs));
    }

    let mut graph = GeoGraph::new();
    for &p in net {
        graph.add_vertex(p, VertexKind::Input);
    }
    let source = graph.add_vertex(CANONICAL_SOURCE, VertexKind::Source);
    let mut steiner_ids: HashMap<(u64, u64), usize> = HashMap::new();
    let mut paths = Vec::with_capacity(m);
    for idx in 0..m {
        let mut path = vec![idx];
        for level in 0..k {
            let j = ladders[idx].multiples[level];
            let x = ladders[idx].lines[level];
            let iv = sections[idx][level];
            let ys = &piercing[&(level, j)];
            // lowest piercing point inside the point's own interval
            let pos = ys.partition_point(|&y| y < iv.lo());
            let y = ys[pos];
            debug_assert!(y <= iv.hi());
            let q = Point2::new(x, y);
            let id = *steiner_ids
                .entry((q.x.to_bits(), q.y.to_bits()))
                .or_insert_with(|| graph.add_vertex(q, VertexKind::Steiner));
            if *path.last().unwrap() != id {
                path.push(id);
            }
        }
        path.push(source);
        for w in path.windows(2) {
            graph.add_edge(w[0], w[1]);
        }
        paths.push(path);
    }
    Ok(SteinerTile {
        graph,
        ellipses,
        ladders,
        sections,
        piercing,
        paths,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngExt, SeedableRng};
    use rand_pcg::Pcg32;

    #[test]
    fn depth_values() {
        assert_eq!(ladder_depth(1.0 / 16.0), 1);
        assert_eq!(ladder_depth(0.05), 1);
        assert_eq!(ladder_depth(1.0 / 64.0), 2);
        assert_eq!(ladder_depth(0.01), 2);
        assert_eq!(ladder_depth(1.0 / 256.0), 3);
        assert_eq!(ladder_depth(4f64.powi(-6)), 5);
    }

    #[test]
    fn ladder_examples() {
        let eps = 1.0 / 64.0;
        let l = ladder_lines(Point2::new(0.0, 0.0), eps).unwrap();
        assert_eq!(l.lines[0], 2.0 / 64.0);
        let x = 5.0 * eps;
        let l = ladder_lines(Point2::new(x, 0.0), eps).unwrap();
        assert_eq!(l.lines[0], x + 2.0 * eps);
    }

    #[test]
    fn ladder_spacing_property() {
        let mut rng = Pcg32::seed_from_u64(17);
        for &eps in &[1.0 / 16.0, 1.0 / 64.0, 0.01, 1.0 / 1024.0, 4f64.powi(-6)] {
            for _ in 0..1000 {
                let x = rng.random_range(-0.05..1.05);
                let l = ladder_lines(Point2::new(x, 0.0), eps).unwrap();
                assert!(l.lines[0] - x > eps && l.lines[0] - x <= 2.0 * eps * (1.0 + 1e-12));
                for i in 1..l.len() {
                    let gap = l.lines[i] - l.lines[i - 1];
                    let unit = family_spacing(i, eps);
                    assert!(gap >= unit * (1.0 - 1e-12) && gap <= 2.0 * unit * (1.0 + 1e-12));
                    // multiples index the right family
                    assert_eq!(l.lines[i], l.multiples[i] as f64 * unit);
                }
                assert!(l.lines[l.len() - 1] - x < 2.0 / 3.0);
            }
        }
    }

    #[test]
    fn single_point_path() {
        let eps = 1.0 / 64.0;
        let t = steiner_tile_detailed(&[Point2::new(0.5, 0.0)], eps).unwrap();
        let k = ladder_depth(eps);
        assert_eq!(t.paths[0].len(), k + 2);
        assert_eq!(t.graph.num_vertices(), k + 2);
        let w: f64 = t.graph.weight();
        assert!(w / 1.5 <= 1.0 + 5.0 * eps * 6.0);
    }

    #[test]
    fn close_points_share_the_ladder() {
        let eps = 1.0 / 256.0;
        let net = [Point2::new(0.4001, 0.0), Point2::new(0.4002, 0.0001)];
        let t = steiner_tile_detailed(&net, eps).unwrap();
        assert_eq!(t.ladders[0], t.ladders[1]);
        for ys in t.piercing.values() {
            assert_eq!(ys.len(), 1);
        }
        assert_eq!(t.paths[0][1..], t.paths[1][1..]);
    }

    #[test]
    fn empty_net() {
        let t = steiner_tile_detailed(&[], 0.01).unwrap();
        assert_eq!(t.graph.num_vertices(), 1);
        assert!(t.graph.edges().is_empty());
    }

    #[test]
    fn eps_range() {
        assert!(steiner_tile_detailed(&[Point2::new(0.5, 0.0)], 0.1).is_err());
    }
}
