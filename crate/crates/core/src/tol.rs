//! Numerical tolerances shared across the crate.

/// Normalization slack accepted when validating a probability vector.
pub const EPS_PROB: f64 = 1e-9;

/// Entries at or below this value are treated as zero (support detection).
pub const EPS_ZERO: f64 = 1e-12;

/// Cross-check tolerance between solver outputs.
pub const EPS_EQ: f64 = 1e-6;

/// Slack for polytope chain constraints and dual feasibility.
pub const EPS_FEAS: f64 = 1e-8;

/// Slack for point-game move rules.
pub const EPS_PG: f64 = 1e-9;

/// Floor applied to marginals before taking reciprocal square roots.
pub const GRAD_FLOOR: f64 = 1e-14;
