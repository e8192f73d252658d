//! Minimum piercing and hitting sets for intervals on a line.

use crate::error::{Result, SltError};
use crate::geom::{Interval, Point2};

/// Axis-parallel rectangle owned by one point, confined to one level strip.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StripRect {
    pub x: Interval,
    pub y: Interval,
    pub owner: usize,
}

impl StripRect {
    pub fn contains(&self, q: Point2) -> bool {
        self.x.contains(q.x) && self.y.contains(q.y)
    }

    /// True when the interiors intersect; touching boundaries do not count.
    pub fn overlaps(&self, other: &StripRect) -> bool {
        self.x.lo() < other.x.hi()
            && other.x.lo() < self.x.hi()
            && self.y.lo() < other.y.hi()
            && other.y.lo() < self.y.hi()
    }
}

fn order_by_right_end(intervals: &[Interval]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..intervals.len()).collect();
    order.sort_by(|&a, &b| {
        intervals[a]
            .hi()
            .total_cmp(&intervals[b].hi())
            .then(intervals[a].lo().total_cmp(&intervals[b].lo()))
            .then(a.cmp(&b))
    });
    order
}

/// Minimum set of reals stabbing every interval: sweep by right endpoint and
/// take the right endpoint of each interval not yet stabbed. Ascending output.
pub fn pierce_intervals(intervals: &[Interval]) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for i in order_by_right_end(intervals) {
        let iv = intervals[i];
        match out.last() {
            Some(&last) if last >= iv.lo() => {}
            _ => out.push(iv.hi()),
        }
    }
    out
}

/// Minimum subset of `candidates` (sorted ascending) meeting every interval.
/// Returns candidate positions in ascending order. For each interval not yet
/// met, in order of right endpoint, picks the largest candidate `<= hi`, the
/// lowest position among equal values.
pub fn hit_intervals_discrete(intervals: &[Interval], candidates: &[f64]) -> Result<Vec<usize>> {
    debug_assert!(candidates.windows(2).all(|w| w[0] <= w[1]));
    let mut out: Vec<usize> = Vec::new();
    for i in order_by_right_end(intervals) {
        let iv = intervals[i];
        if let Some(&last) = out.last() {
            if candidates[last] >= iv.lo() {
                continue;
            }
        }
        let end = candidates.partition_point(|&c| c <= iv.hi());
        if end == 0 || candidates[end - 1] < iv.lo() {
            return Err(SltError::uncovered(i, iv));
        }
        let v = candidates[end - 1];
        let pick = candidates[..end].partition_point(|&c| c < v);
        out.push(pick);
    }
    Ok(out)
}

pub const BRUTE_FORCE_CAP: usize = 15;

fn min_cover_size(intervals: &[Interval], points: &[f64]) -> Option<usize> {
    let m = points.len();
    let mut best: Option<usize> = None;
    for mask in 0u32..(1u32 << m) {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let ok = intervals.iter().all(|iv| {
            (0..m).any(|j| mask & (1 << j) != 0 && iv.contains(points[j]))
        });
        if ok {
            best = Some(size);
        }
    }
    best
}

/// Exact minimum hitting-set size by subset enumeration. With `candidates`
/// of `None` the continuous variant is solved, for which the interval right
/// endpoints form a sufficient candidate set.
pub fn brute_force_min_hitting(intervals: &[Interval], candidates: Option<&[f64]>) -> Result<usize> {
    if intervals.len() > BRUTE_FORCE_CAP {
        return Err(SltError::SizeCap {
            what: "intervals",
            got: intervals.len(),
            cap: BRUTE_FORCE_CAP,
        });
    }
    let ends: Vec<f64>;
    let points = match candidates {
        Some(c) => c,
        None => {
            ends = intervals.iter().map(|iv| iv.hi()).collect();
            &ends
        }
    };
    if points.len() > BRUTE_FORCE_CAP {
        return Err(SltError::SizeCap {
            what: "candidates",
            got: points.len(),
            cap: BRUTE_FORCE_CAP,
        });
    }
    min_cover_size(intervals, points).ok_or_else(|| {
        let i = intervals
            .iter()
            .position(|iv| !points.iter().any(|&c| iv.contains(c)))
            .unwrap_or(0);
        SltError::uncovered(i, intervals[i])
    })
}
