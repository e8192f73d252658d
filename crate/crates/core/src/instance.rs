use crate::error::{Result, SltError};
use crate::geom::Point2;

/// A point set with a distinguished source and the stretch parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    points: Vec<Point2>,
    source: usize,
    eps: f64,
}

impl Instance {
    pub fn new(points: Vec<Point2>, source: usize, eps: f64) -> Result<Self> {
        if source >= points.len() {
            return Err(SltError::InvalidInstance(format!(
                "source index {source} out of range for {} points",
                points.len()
            )));
        }
        if !(eps > 0.0 && eps < 1.0) {
            return Err(SltError::EpsilonOutOfRange {
                eps,
                range: "(0, 1)",
            });
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(SltError::InvalidInstance(format!("point {i} is not finite")));
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| {
            points[a]
                .x
                .total_cmp(&points[b].x)
                .then(points[a].y.total_cmp(&points[b].y))
        });
        for w in order.windows(2) {
            if points[w[0]] == points[w[1]] {
                return Err(SltError::InvalidInstance(format!(
                    "points {} and {} coincide at {}",
                    w[0].min(w[1]),
                    w[0].max(w[1]),
                    points[w[0]]
                )));
            }
        }
        Ok(Instance {
            points,
            source,
            eps,
        })
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn source_index(&self) -> usize {
        self.source
    }

    pub fn source(&self) -> Point2 {
        self.points[self.source]
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Same points and source under a different stretch parameter.
    pub fn with_eps(&self, eps: f64) -> Result<Self> {
        Instance::new(self.points.clone(), self.source, eps)
    }
}
