mod common;

use proptest::prelude::*;
use rand::{RngExt, SeedableRng};
use rand_pcg::Pcg32;

use slt_core::geom::{sandwich_ellipse, slope_proj_slack, FocalEllipse};
use slt_core::tiling::{canonical_frame, tile_of, TileId, TilingParams};
use slt_core::Point2;

use common::{inner_focus, sample_canonical_tile_point, sample_ellipse};

proptest! {
    #[test]
    fn slack_is_quadratic_in_slope(
        ax in -100.0..100.0f64, ay in -100.0..100.0f64,
        dx in 1e-3..50.0f64, slope in -1.0..1.0f64, flip in any::<bool>(),
    ) {
        prop_assume!(slope != 0.0);
        let dx = if flip { -dx } else { dx };
        let sh = slope_proj_slack(Point2::new(ax, ay), Point2::new(ax + dx, ay + slope * dx)).unwrap();
        let r = sh.slack / sh.proj;
        let s2 = sh.slope * sh.slope;
        prop_assert!(r >= s2 / 3.0 * (1.0 - 1e-9) && r <= s2 / 2.0 * (1.0 + 1e-9));
    }

    #[test]
    fn monotone_path_weight(seed in any::<u64>(), rho in 0.01..1.0f64, edges in 1usize..20) {
        let mut rng = Pcg32::seed_from_u64(seed);
        let mut pts = vec![Point2::new(0.0, 0.0)];
        for _ in 0..edges {
            let last = *pts.last().unwrap();
            let dx = rng.random_range(0.01..1.0);
            pts.push(Point2::new(last.x + dx, last.y + rng.random_range(-rho..=rho) * dx));
        }
        let w: f64 = pts.windows(2).map(|s| s[0].dist(s[1])).sum();
        let (a, b) = (pts[0], pts[pts.len() - 1]);
        prop_assert!(w <= (1.0 + rho * rho).sqrt() * a.dist(b) * (1.0 + 1e-12));
        prop_assert!(((b.y - a.y) / (b.x - a.x)).abs() <= rho * (1.0 + 1e-12));
    }

    #[test]
    fn sandwich_chain(
        px in -5.0..5.0f64, py in -5.0..5.0f64, len in 0.1..10.0f64,
        eps in 1e-4..0.11f64, m in -1.0..=1.0f64, left in any::<bool>(), seed in any::<u64>(),
    ) {
        let p = Point2::new(px, py);
        let dir = if left { -1.0 } else { 1.0 };
        let s = Point2::new(px + dir * len, py + m * eps.sqrt() * len);
        let a = inner_focus(p, s);
        let inner = FocalEllipse::stretched(p, a, eps / 2.0).unwrap();
        let mid = FocalEllipse::stretched(p, s, eps).unwrap();
        let outer = sandwich_ellipse(p, s, eps).unwrap();
        prop_assert!(outer.f2().dist(p) <= 2.0 * p.dist(s) * (1.0 + 1e-12));
        prop_assert!(2.0 * p.dist(s) <= 4.0 * p.dist(a) * (1.0 + 1e-12));
        let mut rng = Pcg32::seed_from_u64(seed);
        for i in 0..200 {
            prop_assert!(mid.contains(sample_ellipse(&inner, &mut rng, i % 2 == 0)));
            prop_assert!(outer.contains(sample_ellipse(&mid, &mut rng, i % 2 == 0)));
        }
    }

    #[test]
    fn cross_section_endpoints_are_on_the_boundary(
        sum_extra in 1e-3..2.0f64, len in 0.1..5.0f64, t in 0.0..=1.0f64, y in -3.0..3.0f64,
    ) {
        let e = FocalEllipse::new(Point2::new(0.0, y), Point2::new(len, y), len + sum_extra).unwrap();
        let ext = e.x_extent().unwrap();
        let x = ext.lo() + t * ext.width();
        if let Some(iv) = e.vertical_cross_section(x).unwrap() {
            for v in [iv.lo(), iv.hi()] {
                let q = Point2::new(x, v);
                prop_assert!((e.focal_sum_at(q) - e.sum()).abs() <= 1e-9 * e.sum());
            }
        }
    }
}

#[test]
fn lemma_examples() {
    let e = FocalEllipse::new(Point2::new(0.0, 0.0), Point2::new(2.0, 0.0), 2.5).unwrap();
    assert!(e.contains(Point2::new(1.0, 0.75)));
    assert!(!e.contains(Point2::new(1.0, 0.76)));
    let iv = e.vertical_cross_section(0.25).unwrap().unwrap();
    assert!((iv.lo() + 0.6).abs() < 1e-12 && (iv.hi() - 0.6).abs() < 1e-12);
    assert!(e.vertical_cross_section(3.0).unwrap().is_none());
}

#[test]
fn canonical_frames_are_sound() {
    let mut rng = Pcg32::seed_from_u64(5);
    for e in 2..=5 {
        let eps = 4f64.powi(-e);
        let src = Point2::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let params = TilingParams::new(eps, src).unwrap();
        for _ in 0..5 {
            let tile = TileId { ring: rng.random_range(-5..=5), sector: rng.random_range(0..params.sides()) };
            let frame = canonical_frame(tile, &params);
            for _ in 0..10_000 {
                let c = sample_canonical_tile_point(&params, &mut rng);
                let q = frame.from_canonical(c);
                if tile_of(q, &params).unwrap() != tile {
                    // sampled on a shared boundary up to rounding
                    continue;
                }
                let back = frame.to_canonical(q);
                assert!(back.x >= -0.05 && back.x <= 1.05, "{back}");
                assert!(back.y.abs() <= 1.1 * eps.sqrt(), "{back}");
                let slope = back.y.abs() / (2.0 - back.x);
                assert!(slope <= 1.1 * eps.sqrt());
                let rt = frame.from_canonical(frame.to_canonical(q));
                assert!(rt.dist(q) <= 1e-9 * q.dist(src).max(1.0));
            }
        }
    }
}

#[test]
fn tile_assignment_matches_world_sampling() {
    let mut rng = Pcg32::seed_from_u64(6);
    let params = TilingParams::new(1.0 / 64.0, Point2::new(0.3, -0.7)).unwrap();
    for _ in 0..10_000 {
        let q = Point2::new(rng.random_range(-20.0..20.0), rng.random_range(-20.0..20.0));
        let t = tile_of(q, &params).unwrap();
        let c = canonical_frame(t, &params).to_canonical(q);
        assert!(c.x > 0.0 - 1e-12 && c.x <= 1.0 + 1e-12, "{q} -> {c}");
        let half = (std::f64::consts::PI / params.sides() as f64).tan();
        assert!(c.y.abs() <= (2.0 - c.x) * half * (1.0 + 1e-9));
    }
}
