//! Shallow-light trees for planar Euclidean point sets.

pub mod baselines;
pub mod bounds;
pub mod cnet;
pub mod error;
pub mod geom;
pub mod graph;
pub mod hitting;
pub mod instance;
pub mod instances;
pub mod io;
pub mod oracles;
pub mod pipeline;
pub mod restricted;
pub mod spatial;
pub mod steiner;
pub mod tiling;

pub use error::{Result, SltError};
pub use geom::Point2;
pub use instance::Instance;
