use thiserror::Error;

use crate::geom::Interval;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SltError {
    #[error("degenerate segment: endpoints coincide at ({0}, {1})")]
    DegenerateSegment(f64, f64),

    #[error("invalid ellipse: focal sum {sum} does not exceed focal distance {focal}")]
    InvalidEllipse { sum: f64, focal: f64 },

    #[error("ellipse foci are not on a horizontal line (y = {0} vs {1})")]
    NonHorizontalFoci(f64, f64),

    #[error("points share x-coordinate {0}; no horizontal reflection exists")]
    VerticalSegment(f64),

    #[error("|slope| {slope} exceeds the sandwich bound {bound}")]
    SlopeTooSteep { slope: f64, bound: f64 },

    #[error("epsilon {eps} outside {range}")]
    EpsilonOutOfRange { eps: f64, range: &'static str },

    #[error("point {0} coincides with the source")]
    PointAtSource(usize),

    #[error("interval {index} [{lo}, {hi}] contains no candidate")]
    UncoveredInterval { index: usize, lo: f64, hi: f64 },

    #[error("brute-force size cap exceeded: {what} = {got} > {cap}")]
    SizeCap { what: &'static str, got: usize, cap: usize },

    #[error("net point {point} has empty cross-section at ladder level {level} (x = {x})")]
    EmptyCrossSection { point: usize, level: usize, x: f64 },

    #[error("ladder reaches distance {dist} from its point, expected < 2/3")]
    LadderTooLong { dist: f64 },

    #[error("vertices unreachable from root: {0:?}")]
    Unreachable(Vec<usize>),

    #[error("input point {0} missing from tree or moved")]
    MissingInputPoint(usize),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("not a tree: {0}")]
    NotATree(String),

    #[error("no tree satisfies the stretch bound")]
    NoFeasibleTree,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("worker pool: {0}")]
    ThreadPool(String),

    #[error("gadget weight {weight} exceeds {bound} for anchor distance {anchor}")]
    GadgetTooHeavy { weight: f64, bound: f64, anchor: f64 },
}

impl SltError {
    pub(crate) fn uncovered(index: usize, iv: Interval) -> Self {
        SltError::UncoveredInterval {
            index,
            lo: iv.lo(),
            hi: iv.hi(),
        }
    }
}

pub type Result<T> = std::result::Result<T, SltError>;
