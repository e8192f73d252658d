//! Frozen constants for the asymptotic guarantees. Each was measured on
//! random tiles and the generated instance families for eps down to 4^-6 and
//! then fixed with margin; the test suites treat them as regression bounds.
//! Measured maxima are noted next to each value.

/// Steiner tile path stretch: `w(path) <= (1 + C_S eps log2(1/eps)) d(p, s)` (2.97).
pub const C_S: f64 = 4.0;
/// Restricted tile path stretch, same form (2.55).
pub const C_R: f64 = 4.0;
/// Whole-tree root-stretch: `5 max(C_S, C_R)` plus slack (pipeline outputs reach 1.5).
pub const C_GLOB: f64 = 5.0 * C_S + 2.0;
/// Cluster 2-spanner weight over the cluster MST (1.81).
pub const KAPPA: f64 = 2.5;
/// All cluster spanners together over the MST of the instance (1.42).
pub const KAPPA_TOTAL: f64 = 3.0;
/// Cross-section width on ladder line `i` lies in `[C_LO, C_HI] * 2^i * eps` (7.27, 19.6).
pub const C_LO: f64 = 6.0;
pub const C_HI: f64 = 24.0;
/// `|slope(s_{i-1} s_i)| <= C_SLOPE * 2^-i` (9.0).
pub const C_SLOPE: f64 = 12.0;
/// First path edge `w(p, s_0) <= C_0 eps` (9.98).
pub const C_0: f64 = 12.0;
/// Neighbors of a piercing point on the previous ladder level (10).
pub const C_DEG: usize = 16;
/// Pruned restricted paths over candidate paths, per `log2(1/eps)` (0.30).
pub const C_PRUNE: f64 = 0.5;
/// Gadget weight over anchor distance in the Solomon-style baseline.
pub const C_GADGET: f64 = crate::baselines::GADGET_WEIGHT_FACTOR;
/// KRY and ABP lightness on the comb is at least `C_1 / eps` (0.415).
pub const C_1: f64 = 0.3;
/// Sector certificate value is at least `C_3 eps^-1/4 w(MST)` (0.060).
pub const C_3: f64 = 0.05;
