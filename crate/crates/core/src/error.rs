use thiserror::Error;

use crate::geom::Point;

/// Errors produced by the geometry engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value: {0}")]
    NonFinite(f64),

    #[error("obstacle {index}: {reason}")]
    InvalidObstacle { index: usize, reason: String },

    #[error("point ({}, {}) lies strictly inside obstacle {obstacle}", .point.x, .point.y)]
    InsideObstacle { point: Point, obstacle: usize },

    #[error("unknown component id {0}")]
    UnknownComponent(usize),

    #[error("free direction {0} rad was rejected by the ray caster")]
    WitnessRejected(f64),

    #[error("invalid ring configuration: {0}")]
    InvalidRing(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("scene parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
