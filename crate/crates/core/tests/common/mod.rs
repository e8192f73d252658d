#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::RngExt;
use rand_pcg::Pcg32;
use slt_core::geom::{sandwich_ellipse, FocalEllipse};
use slt_core::steiner::CANONICAL_SOURCE;
use slt_core::tiling::{canonical_frame, tile_of, TileId, TilingParams};
use slt_core::Point2;

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xy: &[(f64, f64)]) -> f64 {
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0.ln()).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1.ln()).sum::<f64>() / n;
    let num: f64 = xy.iter().map(|p| (p.0.ln() - mx) * (p.1.ln() - my)).sum();
    let den: f64 = xy.iter().map(|p| (p.0.ln() - mx).powi(2)).sum();
    num / den
}

/// The point `a` on the horizontal line through `p` with `d(p, a) = d(a, s)`.
pub fn inner_focus(p: Point2, s: Point2) -> Point2 {
    let dx = s.x - p.x;
    Point2::new(p.x + p.dist(s).powi(2) / (2.0 * dx), p.y)
}

/// Uniform point of the ellipse, or a boundary point when `boundary` is set.
pub fn sample_ellipse(e: &FocalEllipse, rng: &mut Pcg32, boundary: bool) -> Point2 {
    let c = e.center();
    let d = e.f2() - e.f1();
    let len = d.norm();
    let u = if len > 0.0 { d * (1.0 / len) } else { Point2::new(1.0, 0.0) };
    let v = Point2::new(-u.y, u.x);
    let r = if boundary { 1.0 } else { rng.random::<f64>().sqrt() };
    let phi = rng.random_range(0.0..std::f64::consts::TAU);
    c + u * (e.semi_major() * r * phi.cos()) + v * (e.semi_minor() * r * phi.sin())
}

/// Random point of tile `t` in canonical coordinates.
pub fn sample_canonical_tile_point(params: &TilingParams, rng: &mut Pcg32) -> Point2 {
    let half = std::f64::consts::PI / params.sides() as f64;
    let x = 1.0 - rng.random::<f64>();
    let delta = rng.random_range(-half..half);
    Point2::new(x, -(2.0 - x) * delta.tan())
}

/// Tiles met by the union of sandwich ellipses of sampled tile points,
/// clipped to the side of the bisector `x = 3/2` away from the source.
pub fn shallow_cover_tiles(
    tile: TileId,
    params: &TilingParams,
    eps: f64,
    rng: &mut Pcg32,
    tile_samples: usize,
    ellipse_samples: usize,
) -> BTreeSet<TileId> {
    let frame = canonical_frame(tile, params);
    let mut seen = BTreeSet::new();
    for _ in 0..tile_samples {
        let p = sample_canonical_tile_point(params, rng);
        let e = sandwich_ellipse(p, CANONICAL_SOURCE, eps).expect("tile points satisfy the slope bound");
        for i in 0..ellipse_samples {
            let q = sample_ellipse(&e, rng, i % 4 == 0);
            if q.x <= 1.5 {
                seen.insert(tile_of(frame.from_canonical(q), params).expect("away from source"));
            }
        }
    }
    seen
}
