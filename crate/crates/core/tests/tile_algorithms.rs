use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::{RngExt, SeedableRng};
use rand_pcg::Pcg32;

use slt_core::bounds::{C_0, C_DEG, C_HI, C_LO, C_PRUNE, C_R, C_S, C_SLOPE};
use slt_core::cnet::build_cnet;
use slt_core::graph::{GeoGraph, VertexKind};
use slt_core::hitting::brute_force_min_hitting;
use slt_core::restricted::{restricted_tile_detailed, LeveledPath, SOURCE_MARK};
use slt_core::steiner::{ladder_depth, steiner_tile_detailed, CANONICAL_SOURCE};
use slt_core::Point2;

fn tile_points(n: usize, eps: f64, seed: u64) -> Vec<Point2> {
    let mut rng = Pcg32::seed_from_u64(seed);
    let h = eps.sqrt();
    (0..n).map(|_| Point2::new(rng.random_range(0.0..=1.0), rng.random_range(-h..=h))).collect()
}

fn net_of(points: &[Point2], eps: f64) -> Vec<usize> {
    build_cnet(points, CANONICAL_SOURCE, eps).unwrap().net
}

fn eps_strategy() -> impl Strategy<Value = f64> {
    (2i32..=6).prop_map(|e| 4f64.powi(-e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn steiner_tile_invariants(eps in eps_strategy(), n in 1usize..1500, seed in any::<u64>()) {
        let pts = tile_points(n, eps, seed);
        let net: Vec<Point2> = net_of(&pts, eps).into_iter().map(|i| pts[i]).collect();
        let t = steiner_tile_detailed(&net, eps).unwrap();
        let lg = (1.0 / eps).log2();
        let k = ladder_depth(eps);
        let pos = |id: usize| t.graph.vertex(id).pos;
        let mut below: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for (p, path) in t.paths.iter().enumerate() {
            prop_assert_eq!(path.len(), k + 2);
            prop_assert_eq!(path[0], p);
            prop_assert_eq!(*path.last().unwrap(), t.source_id());
            let w: f64 = path.windows(2).map(|s| pos(s[0]).dist(pos(s[1]))).sum();
            prop_assert!(w <= (1.0 + C_S * eps * lg) * net[p].dist(CANONICAL_SOURCE));
            prop_assert!(net[p].dist(pos(path[1])) <= C_0 * eps);
            for i in 0..k {
                let q = pos(path[i + 1]);
                prop_assert_eq!(t.graph.vertex(path[i + 1]).kind, VertexKind::Steiner);
                prop_assert_eq!(q.x, t.ladders[p].lines[i]);
                prop_assert!(t.sections[p][i].contains(q.y));
                let width = t.sections[p][i].width() / (2f64.powi(i as i32) * eps);
                prop_assert!((C_LO..=C_HI).contains(&width), "width ratio {}", width);
                if i > 0 {
                    let a = pos(path[i]);
                    prop_assert!(((q.y - a.y) / (q.x - a.x)).abs() <= C_SLOPE * 2f64.powi(-(i as i32)));
                    below.entry(path[i + 1]).or_default().insert(path[i]);
                }
            }
        }
        prop_assert!(below.values().all(|s| s.len() <= C_DEG));
    }

    #[test]
    fn restricted_tile_invariants(eps in eps_strategy(), n in 2usize..1500, seed in any::<u64>()) {
        let pts = tile_points(n, eps, seed);
        let net = net_of(&pts, eps);
        let t = restricted_tile_detailed(&net, &pts, eps).unwrap();
        let lg = (1.0 / eps).log2();
        let at = |v: usize| if v == SOURCE_MARK { CANONICAL_SOURCE } else { pts[v] };
        for v in t.graph.vertices() {
            prop_assert!(v.kind != VertexKind::Steiner);
        }
        for (k, path) in t.paths.iter().enumerate() {
            let p = net[k];
            prop_assert_eq!(path.vertices[0], p);
            prop_assert_eq!(*path.vertices.last().unwrap(), SOURCE_MARK);
            let w: f64 = path.vertices.windows(2).map(|s| at(s[0]).dist(at(s[1]))).sum();
            prop_assert!(w <= (1.0 + C_R * eps * lg) * pts[p].dist(CANONICAL_SOURCE));
            // pruned levels are spaced by at least two, except possibly the first hop
            let lv = path.interior_levels();
            prop_assert!(lv.windows(2).all(|s| s[1] >= s[0] + 2));
            let cand = &t.candidate_paths[k];
            prop_assert!(path.vertices.iter().all(|v| cand.vertices.contains(v)));
        }
        let union = |paths: &[LeveledPath]| {
            let mut g = GeoGraph::new();
            for &q in &pts { g.add_vertex(q, VertexKind::Input); }
            let s = g.add_vertex(CANONICAL_SOURCE, VertexKind::Source);
            for p in paths {
                for w in p.vertices.windows(2) {
                    let id = |v: usize| if v == SOURCE_MARK { s } else { v };
                    g.add_edge(id(w[0]), id(w[1]));
                }
            }
            g.dedup_edges();
            g.weight()
        };
        prop_assert!(union(&t.paths) <= C_PRUNE * lg * union(&t.candidate_paths));
    }
}

#[test]
fn piercing_sets_are_minimum() {
    for seed in 0..40 {
        let eps = 1.0 / 256.0;
        let pts = tile_points(60, eps, seed);
        let net: Vec<Point2> = net_of(&pts, eps).into_iter().map(|i| pts[i]).collect();
        let t = steiner_tile_detailed(&net, eps).unwrap();
        for (&(level, j), ys) in &t.piercing {
            let ivs: Vec<_> = (0..net.len())
                .filter(|&p| t.ladders[p].multiples[level] == j)
                .map(|p| t.sections[p][level])
                .collect();
            if ivs.len() <= 15 {
                assert_eq!(ys.len(), brute_force_min_hitting(&ivs, None).unwrap());
            }
        }
    }
}

#[test]
fn strip_hitting_sets_are_minimum() {
    for seed in 0..40 {
        let eps = 1.0 / 64.0;
        let pts = tile_points(80, eps, seed);
        let net = net_of(&pts, eps);
        let t = restricted_tile_detailed(&net, &pts, eps).unwrap();
        for sol in t.strips.values() {
            let mut cand: Vec<f64> = (0..pts.len())
                .filter(|&q| pts[q].x > sol.x.lo() && pts[q].x <= sol.x.hi())
                .map(|q| pts[q].y)
                .collect();
            cand.sort_by(f64::total_cmp);
            let ivs: Vec<_> = sol.rects.iter().map(|r| r.y).collect();
            if ivs.len() <= 15 && cand.len() <= 15 {
                assert_eq!(sol.hitting.len(), brute_force_min_hitting(&ivs, Some(&cand)).unwrap());
            }
            for r in &sol.rects {
                assert!(sol.hitting.iter().any(|&q| r.contains(pts[q])));
            }
        }
    }
}
