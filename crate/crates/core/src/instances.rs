//! Deterministic instance generators. Every generated instance puts the
//! source at index 0.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_pcg::Pcg32;

use crate::cnet::{check_cnet, CenteredNet};
use crate::error::{Result, SltError};
use crate::geom::Point2;
use crate::instance::Instance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Circle,
    Comb,
    CnetComb,
    SectorLb,
    Uniform,
}

impl Kind {
    pub const ALL: [Kind; 5] = [Kind::Circle, Kind::Comb, Kind::CnetComb, Kind::SectorLb, Kind::Uniform];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Circle => "circle",
            Kind::Comb => "comb",
            Kind::CnetComb => "cnet-comb",
            Kind::SectorLb => "sector-lb",
            Kind::Uniform => "uniform",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = SltError;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| SltError::InvalidInstance(format!("unknown instance kind {s:?}")))
    }
}

/// Optional knobs; unset fields take per-kind defaults.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GenParams {
    /// Circle: number of points (default `ceil(1 / eps)`).
    pub m: Option<usize>,
    /// Comb: number of vertical lines (default 4).
    pub k: Option<usize>,
    /// Point spacing: comb default `min(eps / 2, 1 / (2k))`, sector-lb default `eps`.
    pub delta: Option<f64>,
    /// Uniform: number of non-source points (default 1000).
    pub n: Option<usize>,
}

/// PCG-XSH-RR 32 with its 64-bit LCG state advanced by multiplier
/// 6364136223846793005; `seed` is the initial state, the increment comes from
/// this fixed stream.
pub const UNIFORM_STREAM: u64 = 0x0a02_bdbf_7bb3_c0a7;

/// Uniform double in `[0, 1)` from the top 53 bits of a 64-bit draw.
fn unit(rng: &mut Pcg32) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn generate(kind: Kind, eps: f64, params: GenParams, seed: u64) -> Result<Instance> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(SltError::EpsilonOutOfRange {
            eps,
            range: "(0, 1)",
        });
    }
    match kind {
        Kind::Circle => circle(params.m.unwrap_or((1.0 / eps).ceil() as usize), eps),
        Kind::Comb => {
            let k = params.k.unwrap_or(4);
            let delta = params.delta.unwrap_or((eps / 2.0).min(0.5 / k as f64));
            comb(k, delta, eps)
        }
        Kind::CnetComb => cnet_comb(eps),
        Kind::SectorLb => sector_lb(params.delta.unwrap_or(eps), eps),
        Kind::Uniform => uniform(params.n.unwrap_or(1000), eps, seed),
    }
}

fn bad(msg: String) -> SltError {
    SltError::InvalidInstance(msg)
}

/// `m` points evenly spaced on the unit circle; the source is the point at angle 0.
pub fn circle(m: usize, eps: f64) -> Result<Instance> {
    if m < 2 {
        return Err(bad(format!("circle needs m >= 2, got {m}")));
    }
    let pts = (0..m)
        .map(|j| {
            let a = 2.0 * PI * j as f64 / m as f64;
            Point2::new(a.cos(), a.sin())
        })
        .collect();
    Instance::new(pts, 0, eps)
}

/// Points on `[x0, x1] x {y}` with the given anchors included and gaps of
/// at most `step` (or at least `step` when `at_least`).
fn chain(anchors: &[f64], y: f64, step: f64, at_least: bool, out: &mut Vec<Point2>) {
    out.push(Point2::new(anchors[0], y));
    for w in anchors.windows(2) {
        let gap = w[1] - w[0];
        let ratio = gap / step;
        let parts = if at_least { ratio.floor() } else { ratio.ceil() }.max(1.0) as usize;
        for i in 1..=parts {
            let x = if i == parts { w[1] } else { w[0] + gap * i as f64 / parts as f64 };
            out.push(Point2::new(x, y));
        }
    }
}

/// Points `(x, i * step)` for `i = 1, 2, ...` while `i * step <= top`.
fn column(x: f64, top: f64, step: f64, out: &mut Vec<Point2>) {
    let count = (top / step * (1.0 + 1e-12)).floor() as usize;
    out.extend((1..=count).map(|i| Point2::new(x, i as f64 * step)));
}

fn bottom_anchors(lines: &[f64]) -> Vec<f64> {
    let mut a = vec![0.0];
    a.extend(lines.iter().copied().filter(|&x| x > 0.0 && x < 1.0));
    a.push(1.0);
    a
}

/// Source `(2, 0)`, the bottom side of the unit square and `k` vertical unit
/// segments at `x = (j + 1/2) / k`, all sampled at spacing `delta`.
pub fn comb(k: usize, delta: f64, eps: f64) -> Result<Instance> {
    if k == 0 {
        return Err(bad("comb needs k >= 1".into()));
    }
    if !(delta > 0.0 && delta <= 0.5 / k as f64) {
        return Err(bad(format!("comb spacing {delta} must lie in (0, 1/(2k)] = (0, {}]", 0.5 / k as f64)));
    }
    let lines: Vec<f64> = (0..k).map(|j| (j as f64 + 0.5) / k as f64).collect();
    let mut pts = vec![Point2::new(2.0, 0.0)];
    chain(&bottom_anchors(&lines), 0.0, delta, false, &mut pts);
    for &x in &lines {
        let count = (1.0 / delta).ceil() as usize;
        pts.extend((1..=count).map(|i| Point2::new(x, i as f64 / count as f64)));
    }
    Instance::new(pts, 0, eps)
}

/// Separation of points in the cnet comb, above `eps * max d(p, s)`.
pub fn cnet_comb_spacing(eps: f64) -> f64 {
    2.5 * eps
}

/// Source `(2, 0)` and points in `[0, 1] x [0, sqrt(eps)]`: the bottom side
/// and vertical lines `x = j * 2 sqrt(eps)`, spaced so that the point set is a
/// centered eps-net.
pub fn cnet_comb(eps: f64) -> Result<Instance> {
    if eps > 1.0 / 16.0 {
        return Err(bad(format!("cnet-comb needs eps <= 1/16, got {eps}")));
    }
    let sp = cnet_comb_spacing(eps);
    let h = eps.sqrt();
    let lines: Vec<f64> = (0..)
        .map(|j| j as f64 * 2.0 * h)
        .take_while(|&x| x <= 1.0)
        .collect();
    let mut pts = vec![Point2::new(2.0, 0.0)];
    chain(&bottom_anchors(&lines), 0.0, sp, true, &mut pts);
    for &x in &lines {
        column(x, h, sp, &mut pts);
    }
    let inst = Instance::new(pts, 0, eps)?;
    let others: Vec<Point2> = inst.points()[1..].to_vec();
    let all = CenteredNet {
        net: (0..others.len()).collect(),
        assignment: (0..others.len()).collect(),
    };
    check_cnet(&others, inst.source(), eps, &all).map_err(|e| bad(format!("cnet-comb is not a centered net: {e}")))?;
    Ok(inst)
}

/// Source `(2, 0)` and points in `[0, 1] x [0, sqrt(eps)]`: the bottom side
/// and vertical lines `x = i * sqrt(eps)`, at spacing `delta`.
pub fn sector_lb(delta: f64, eps: f64) -> Result<Instance> {
    let h = eps.sqrt();
    if !(delta > 0.0 && delta <= h) {
        return Err(bad(format!("sector-lb spacing {delta} must lie in (0, sqrt(eps)]")));
    }
    let count = (1.0 / h * (1.0 + 1e-12)).floor() as usize;
    let lines: Vec<f64> = (0..=count).map(|i| i as f64 * h).filter(|&x| x <= 1.0).collect();
    let mut pts = vec![Point2::new(2.0, 0.0)];
    chain(&bottom_anchors(&lines), 0.0, delta, false, &mut pts);
    for &x in &lines {
        column(x, h, delta, &mut pts);
    }
    Instance::new(pts, 0, eps)
}

/// Source `(2, 0)` followed by `n` uniform points in the unit square.
pub fn uniform(n: usize, eps: f64, seed: u64) -> Result<Instance> {
    let mut rng = Pcg32::new(seed, UNIFORM_STREAM);
    let mut pts = Vec::with_capacity(n + 1);
    pts.push(Point2::new(2.0, 0.0));
    for _ in 0..n {
        let x = unit(&mut rng);
        let y = unit(&mut rng);
        pts.push(Point2::new(x, y));
    }
    Instance::new(pts, 0, eps)
}
