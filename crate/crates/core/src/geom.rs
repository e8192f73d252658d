//! Planar primitives: segments, focal-sum ellipses and their vertical
//! cross-sections.
//!
//! All production ellipses have a horizontal major axis, so cross-sections by
//! vertical lines have a closed form.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Result, SltError};

/// Relative slack allowed by [`FocalEllipse::contains`]. Piercing points are
/// placed exactly on interval endpoints, i.e. on ellipse boundaries.
pub const CONTAINS_REL_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn midpoint(self, other: Point2) -> Point2 {
        Point2::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        Point2::new(self.x * rhs, self.y * rhs)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Closed interval `[lo, hi]` with `lo <= hi`. Empty cross-sections are
/// expressed as `Option<Interval>::None`, never as an inverted interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Panics if `lo > hi` or either bound is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn try_new(lo: f64, hi: f64) -> Option<Self> {
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

/// Slope, horizontal projection length and slack of a segment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SegmentShape {
    /// `f64::INFINITY` for vertical segments.
    pub slope: f64,
    pub proj: f64,
    pub slack: f64,
}

pub fn slope_proj_slack(a: Point2, b: Point2) -> Result<SegmentShape> {
    if a == b {
        return Err(SltError::DegenerateSegment(a.x, a.y));
    }
    let proj = (b.x - a.x).abs();
    let dy = b.y - a.y;
    // d - proj without cancellation
    let slack = dy * dy / (a.dist(b) + proj);
    let slope = if proj == 0.0 {
        f64::INFINITY
    } else {
        (b.y - a.y) / (b.x - a.x)
    };
    Ok(SegmentShape { slope, proj, slack })
}

/// `|slope(ab)|`, infinite for vertical segments and zero for `a == b`.
pub fn abs_slope(a: Point2, b: Point2) -> f64 {
    let dx = (b.x - a.x).abs();
    let dy = (b.y - a.y).abs();
    if dx == 0.0 {
        if dy == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        dy / dx
    }
}

/// The set `{q : d(f1, q) + d(q, f2) <= sum}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FocalEllipse {
    f1: Point2,
    f2: Point2,
    sum: f64,
}

impl FocalEllipse {
    pub fn new(f1: Point2, f2: Point2, sum: f64) -> Result<Self> {
        let focal = f1.dist(f2);
        if !(sum > focal) || !sum.is_finite() {
            return Err(SltError::InvalidEllipse { sum, focal });
        }
        Ok(FocalEllipse { f1, f2, sum })
    }

    /// The ellipse `E_{ab, eps}`: foci `a`, `b` and focal sum `(1 + eps) d(a, b)`.
    pub fn stretched(a: Point2, b: Point2, eps: f64) -> Result<Self> {
        FocalEllipse::new(a, b, (1.0 + eps) * a.dist(b))
    }

    pub fn f1(&self) -> Point2 {
        self.f1
    }

    pub fn f2(&self) -> Point2 {
        self.f2
    }

    pub fn sum(&self) -> f64 {
        self.sum
    }

    pub fn focal_sum_at(&self, q: Point2) -> f64 {
        self.f1.dist(q) + q.dist(self.f2)
    }

    pub fn contains(&self, q: Point2) -> bool {
        self.focal_sum_at(q) <= self.sum + CONTAINS_REL_TOL * self.sum
    }

    pub fn center(&self) -> Point2 {
        self.f1.midpoint(self.f2)
    }

    pub fn semi_major(&self) -> f64 {
        0.5 * self.sum
    }

    pub fn semi_minor(&self) -> f64 {
        let a = self.semi_major();
        let c = 0.5 * self.f1.dist(self.f2);
        (a * a - c * c).max(0.0).sqrt()
    }

    fn require_horizontal(&self) -> Result<()> {
        if self.f1.y != self.f2.y {
            return Err(SltError::NonHorizontalFoci(self.f1.y, self.f2.y));
        }
        Ok(())
    }

    /// Half-height of the vertical cross-section at `x`, `None` outside the
    /// x-extent. Requires horizontal foci (checked by callers).
    fn half_height(&self, x: f64) -> Option<f64> {
        let a = self.semi_major();
        let u = (x - self.center().x) / a;
        if u.abs() > 1.0 {
            return None;
        }
        Some(self.semi_minor() * (1.0 - u * u).max(0.0).sqrt())
    }

    /// x-extent `[xc - a, xc + a]` of a horizontal-axis ellipse.
    pub fn x_extent(&self) -> Result<Interval> {
        self.require_horizontal()?;
        let xc = self.center().x;
        let a = self.semi_major();
        Ok(Interval::new(xc - a, xc + a))
    }

    /// `{y : (x, y) in self}`; `None` when the line misses the ellipse.
    pub fn vertical_cross_section(&self, x: f64) -> Result<Option<Interval>> {
        self.require_horizontal()?;
        let yc = self.f1.y;
        Ok(self
            .half_height(x)
            .map(|h| Interval::new(yc - h, yc + h)))
    }

    /// Exact bounding box of the ellipse clipped to the vertical strip
    /// `x_lo <= x <= x_hi`, as `(x-range, y-range)`.
    pub fn strip_bounding_box(&self, x_lo: f64, x_hi: f64) -> Result<Option<(Interval, Interval)>> {
        let ext = self.x_extent()?;
        let lo = x_lo.max(ext.lo());
        let hi = x_hi.min(ext.hi());
        let Some(xr) = Interval::try_new(lo, hi) else {
            return Ok(None);
        };
        let xc = self.center().x;
        // widest section is the one closest to the center
        let x_best = xc.clamp(xr.lo(), xr.hi());
        let h = self.half_height(x_best).unwrap_or(0.0);
        let yc = self.f1.y;
        Ok(Some((xr, Interval::new(yc - h, yc + h))))
    }
}

pub fn ellipse_contains(e: &FocalEllipse, q: Point2) -> bool {
    e.contains(q)
}

pub fn vertical_cross_section(e: &FocalEllipse, x: f64) -> Result<Option<Interval>> {
    e.vertical_cross_section(x)
}

/// The point `b` on the horizontal line through `p` with `d(s, b) = d(p, s)`,
/// on the far side of `s`.
pub fn outer_horizontal_focus(p: Point2, s: Point2) -> Result<Point2> {
    if p.x == s.x {
        return Err(SltError::VerticalSegment(p.x));
    }
    Ok(Point2::new(2.0 * s.x - p.x, p.y))
}

/// Horizontal-axis ellipse `E_{pb, 2 eps}` containing `E_{ps, eps}`, where
/// `b = outer_horizontal_focus(p, s)`. Needs `|slope(ps)| <= sqrt(eps)`.
pub fn sandwich_ellipse(p: Point2, s: Point2, eps: f64) -> Result<FocalEllipse> {
    if !(eps > 0.0 && eps < 1.0 / 9.0) {
        return Err(SltError::EpsilonOutOfRange {
            eps,
            range: "(0, 1/9)",
        });
    }
    let slope = abs_slope(p, s);
    let bound = eps.sqrt();
    if slope > bound * (1.0 + 1e-9) {
        return Err(SltError::SlopeTooSteep { slope, bound });
    }
    let b = outer_horizontal_focus(p, s)?;
    FocalEllipse::stretched(p, b, 2.0 * eps)
}
