//! Trapezoid tiling around the source and per-tile canonical frames.
//!
//! The plane is cut by the scaled regular polygons `O_i = 2^i O_1` (inscribed
//! radius `2^i`) and by the rays through their vertices. Vertices sit at angles
//! `2 pi j / k`, so sector `j` has its face normal at angle `(2j + 1) pi / k`.

use std::f64::consts::PI;

use crate::error::{Result, SltError};
use crate::geom::Point2;

/// Smallest `k >= 3` with `2 tan(pi / k) < sqrt(eps)`.
pub fn polygon_sides(eps: f64) -> u32 {
    let target = eps.sqrt();
    let mut k = 3u32;
    while 2.0 * (PI / k as f64).tan() >= target {
        k += 1;
    }
    k
}

/// `floor(log2(v))` read off the binary exponent, exact at powers of two.
pub fn floor_log2(v: f64) -> i32 {
    assert!(v > 0.0 && v.is_finite(), "floor_log2 of {v}");
    let bits = v.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    if exp == 0 {
        // subnormal: renormalize
        return floor_log2(v * 2f64.powi(64)) - 64;
    }
    exp - 1023
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TilingParams {
    sides: u32,
    source: Point2,
}

impl TilingParams {
    pub fn new(eps: f64, source: Point2) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(SltError::EpsilonOutOfRange {
                eps,
                range: "(0, 1)",
            });
        }
        Ok(TilingParams {
            sides: polygon_sides(eps),
            source,
        })
    }

    pub fn sides(&self) -> u32 {
        self.sides
    }

    pub fn source(&self) -> Point2 {
        self.source
    }

    /// Angle of the face normal of `sector`.
    pub fn normal_angle(&self, sector: u32) -> f64 {
        (2 * sector + 1) as f64 * PI / self.sides as f64
    }

    pub fn normal(&self, sector: u32) -> Point2 {
        let a = self.normal_angle(sector);
        Point2::new(a.cos(), a.sin())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TileId {
    pub ring: i32,
    pub sector: u32,
}

/// Tile containing `p`. Both ring and angle boundaries are lower-closed.
pub fn tile_of(p: Point2, params: &TilingParams) -> Result<TileId> {
    let d = p - params.source;
    if d.x == 0.0 && d.y == 0.0 {
        return Err(SltError::PointAtSource(usize::MAX));
    }
    let k = params.sides;
    let mut phi = d.y.atan2(d.x);
    if phi < 0.0 {
        phi += 2.0 * PI;
    }
    let mut sector = (phi * k as f64 / (2.0 * PI)).floor() as i64;
    sector = sector.clamp(0, k as i64 - 1);
    let sector = sector as u32;
    let depth = d.dot(params.normal(sector));
    Ok(TileId {
        ring: floor_log2(depth),
        sector,
    })
}

/// Similarity taking a tile to the canonical position: source at `(2, 0)`,
/// tile inside roughly `[0, 1] x [-sqrt(eps), sqrt(eps)]`, ladders running
/// toward the source along `+x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CanonicalFrame {
    source: Point2,
    rotation: f64,
    normal: Point2,
    scale: f64,
}

impl CanonicalFrame {
    /// Frame with face normal at angle `rotation` and scale `2^-ring`.
    pub fn new(source: Point2, rotation: f64, ring: i32) -> Self {
        CanonicalFrame {
            source,
            rotation,
            normal: Point2::new(rotation.cos(), rotation.sin()),
            scale: 2f64.powi(-ring),
        }
    }

    pub fn rotation(&self) -> f64 {
        self.rotation
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn to_canonical(&self, q: Point2) -> Point2 {
        let d = q - self.source;
        let perp = Point2::new(-self.normal.y, self.normal.x);
        Point2::new(2.0 - self.scale * d.dot(self.normal), -self.scale * d.dot(perp))
    }

    pub fn from_canonical(&self, c: Point2) -> Point2 {
        let u = (2.0 - c.x) / self.scale;
        let v = -c.y / self.scale;
        let perp = Point2::new(-self.normal.y, self.normal.x);
        self.source + self.normal * u + perp * v
    }
}

pub fn canonical_frame(tile: TileId, params: &TilingParams) -> CanonicalFrame {
    CanonicalFrame::new(params.source, params.normal_angle(tile.sector), tile.ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{RngExt, SeedableRng};
    use rand_pcg::Pcg32;

    #[test]
    fn polygon_side_examples() {
        assert_eq!(polygon_sides(0.01), 63);
        assert_eq!(polygon_sides(1.0), 7);
        assert_eq!(polygon_sides(0.25), 13);
    }

    #[test]
    fn polygon_sides_is_minimal() {
        for &eps in &[0.5, 0.1, 1.0 / 16.0, 1.0 / 64.0, 1.0 / 256.0, 1e-4] {
            let k = polygon_sides(eps);
            assert!(2.0 * (PI / k as f64).tan() < eps.sqrt());
            assert!(k == 3 || 2.0 * (PI / (k - 1) as f64).tan() >= eps.sqrt());
        }
    }

    #[test]
    fn floor_log2_at_powers_of_two() {
        assert_eq!(floor_log2(1.0), 0);
        assert_eq!(floor_log2(2.0), 1);
        assert_eq!(floor_log2(1.999_999_999), 0);
        assert_eq!(floor_log2(0.5), -1);
        assert_eq!(floor_log2(0.75), -1);
        assert_eq!(floor_log2(1024.0), 10);
        assert_eq!(floor_log2(f64::MIN_POSITIVE / 4.0), -1024);
    }

    fn params8() -> TilingParams {
        TilingParams {
            sides: 8,
            source: Point2::new(0.0, 0.0),
        }
    }

    #[test]
    fn tile_of_example() {
        let t = tile_of(Point2::new(1.5, 0.1), &params8()).unwrap();
        assert_eq!(t, TileId { ring: 0, sector: 0 });
    }

    #[test]
    fn tile_of_ties_are_lower_closed() {
        let p = params8();
        // on the ray at angle pi (exact multiple of 2 pi / 8)
        let t = tile_of(Point2::new(-1.5, 0.0), &p).unwrap();
        assert_eq!(t.sector, 4);
        // depth exactly 2 along the face normal of sector 1 of a hexagon
        let hex = TilingParams {
            sides: 6,
            source: Point2::new(0.0, 0.0),
        };
        let t = tile_of(Point2::new(0.0, 2.0), &hex).unwrap();
        assert_eq!((t.sector, t.ring), (1, 1));
        assert!(tile_of(p.source, &p).is_err());
    }

    /// Independent membership test: max face depth over all polygon faces,
    /// angle from atan2.
    fn tile_by_polygons(q: Point2, p: &TilingParams) -> TileId {
        let d = q - p.source;
        let depth = (0..p.sides)
            .map(|j| d.dot(p.normal(j)))
            .fold(f64::NEG_INFINITY, f64::max);
        let mut ring = 0i32;
        while 2f64.powi(ring) > depth {
            ring -= 1;
        }
        while 2f64.powi(ring + 1) <= depth {
            ring += 1;
        }
        let ang = d.y.atan2(d.x).rem_euclid(2.0 * PI);
        let sector = (ang / (2.0 * PI / p.sides as f64)).floor() as u32 % p.sides;
        TileId { ring, sector }
    }

    #[test]
    fn tile_of_matches_polygon_containment() {
        let mut rng = Pcg32::seed_from_u64(7);
        for &eps in &[1.0 / 16.0, 0.01, 1.0 / 256.0] {
            let p = TilingParams::new(eps, Point2::new(0.3, -0.2)).unwrap();
            for _ in 0..5000 {
                let r = 10f64.powf(rng.random_range(-2.0..2.0));
                let a = rng.random_range(0.0..2.0 * PI);
                let q = p.source + Point2::new(a.cos(), a.sin()) * r;
                assert_eq!(tile_of(q, &p).unwrap(), tile_by_polygons(q, &p), "q = {q}");
            }
        }
    }

    #[test]
    fn canonical_frame_examples() {
        let f = CanonicalFrame::new(Point2::new(0.0, 0.0), 0.0, 0);
        let c = f.to_canonical(Point2::new(1.0, 0.0));
        assert_eq!(c, Point2::new(1.0, 0.0));
        assert_eq!(f.from_canonical(c), Point2::new(1.0, 0.0));
        let f = CanonicalFrame::new(Point2::new(3.0, -1.0), 1.1, 3);
        assert_eq!(f.to_canonical(Point2::new(3.0, -1.0)), Point2::new(2.0, 0.0));
    }

    #[test]
    fn canonical_frame_is_similarity() {
        let mut rng = Pcg32::seed_from_u64(11);
        let f = CanonicalFrame::new(Point2::new(-4.0, 2.5), 2.3, -2);
        for _ in 0..1000 {
            let a = Point2::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
            let b = Point2::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
            let dw = a.dist(b);
            let dc = f.to_canonical(a).dist(f.to_canonical(b));
            assert!((dc - f.scale() * dw).abs() <= 1e-12 * dc.max(1e-300));
            let back = f.from_canonical(f.to_canonical(a));
            assert!(back.dist(a) <= 1e-9 * a.norm().max(1.0));
        }
    }
}
