//! Error type shared by all modules of the crate.

use core::fmt;

/// Errors produced by grid construction and by the operations.
///
/// Degenerate-but-meaningful outcomes (an infeasible relative capacity, a
/// carving budget too small to remove anything) are reported as flags on the
/// result types instead, so that callers still receive the partial data.
#[derive(Clone, Debug, PartialEq)]
pub enum CoreError {
    /// Ball radius below the grid spacing.
    BallUnresolvable { radius: f64, spacing: f64 },
    /// No grid node inside the ball.
    BallOutside,
    /// Profile shorter than the requested tail window.
    TooFewSamples { len: usize, window: usize },
    /// Region does not intersect the domain at all.
    EmptyRegion,
    /// Every candidate set violated the capacity-density hypothesis.
    NoAdmissibleCandidate,
    /// Operation requires finite values on the window.
    InfiniteValue,
    /// Dimension outside the supported range 1..=3.
    BadDimension(usize),
    /// Fewer finite nodes than needed to fit an affine model.
    NotFittable { nodes: usize, needed: usize },
    /// The BV norm of the input vanishes.
    ZeroNorm,
    /// The measure vanishes on a scheduled ball.
    ZeroMeasureBall { radius: f64 },
    /// The map is undefined at the profile center.
    UndefinedAtCenter,
    /// Whitney covering of an empty set requested.
    EmptyA,
    /// Cantor construction depth finer than the grid can resolve.
    DepthUnresolvable { depth: u32, spacing: f64 },
    /// Neighborhood widths violate the summability constraint.
    ScheduleViolatesBkSum { level: usize },
    /// Every calibration sample had zero relative perimeter.
    DegeneratePerimeter,
    /// Mismatched domains or value-count invariants.
    ShapeMismatch,
    /// Invalid construction parameter (message names the field).
    BadParameter(&'static str),
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::BallUnresolvable { radius, spacing } => {
                write!(f, "ball radius {radius} below grid spacing {spacing}")
            }
            CoreError::BallOutside => write!(f, "no grid node inside the ball"),
            CoreError::TooFewSamples { len, window } => {
                write!(f, "profile of length {len} shorter than tail window {window}")
            }
            CoreError::EmptyRegion => write!(f, "region does not intersect the domain"),
            CoreError::NoAdmissibleCandidate => {
                write!(f, "no candidate set passes the capacity-density hypothesis")
            }
            CoreError::InfiniteValue => write!(f, "field carries an infinite value on the window"),
            CoreError::BadDimension(n) => write!(f, "unsupported dimension {n}"),
            CoreError::NotFittable { nodes, needed } => {
                write!(f, "{nodes} finite nodes, {needed} needed for an affine fit")
            }
            CoreError::ZeroNorm => write!(f, "BV norm of the input is zero"),
            CoreError::ZeroMeasureBall { radius } => {
                write!(f, "measure vanishes on the scheduled ball of radius {radius}")
            }
            CoreError::UndefinedAtCenter => write!(f, "map undefined at the profile center"),
            CoreError::EmptyA => write!(f, "covering of an empty set requested"),
            CoreError::DepthUnresolvable { depth, spacing } => {
                write!(f, "construction depth {depth} unresolvable at spacing {spacing}")
            }
            CoreError::ScheduleViolatesBkSum { level } => {
                write!(f, "neighborhood widths violate summability at level {level}")
            }
            CoreError::DegeneratePerimeter => {
                write!(f, "every calibration sample had zero relative perimeter")
            }
            CoreError::ShapeMismatch => write!(f, "mismatched domains or value counts"),
            CoreError::BadParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

#[cfg(test)]
impl std::error::Error for CoreError {}
