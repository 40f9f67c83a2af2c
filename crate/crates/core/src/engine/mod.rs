//! Label propagation and the braid invariant built on it.

mod audit;
mod invariant;
mod labeling;
mod octagon;

pub use audit::{evaluation_check, laurent_audit, AuditFailure, AuditReport, EvaluationCheck};
pub use invariant::{
    compare_invariants, compute_invariant, first_difference, generator_names, is_identity,
    Difference, InvariantResult, InvariantRun,
};
pub use labeling::{
    desargues, flip_label, generator_count, initial_labeling, initial_values, propagate,
    script_sites, Labeling,
};
pub use octagon::{verify_octagon, IdentityCheck, OctagonFixture, OctagonReport};

use crate::algebra::AlgebraError;
use crate::geometry::GeometryError;
use crate::motion::MotionError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Motion(#[from] MotionError),
    #[error("no label for face {face} needed by the flip")]
    MissingRole { face: String },
    #[error("flip {index} at face {face} is not a site of the current arrangement")]
    InvalidScript { index: usize, face: String },
    #[error("endpoint configurations differ as point sets")]
    NotClosed,
    #[error("relation failed: {identity}\n  lhs: {lhs}\n  rhs: {rhs}")]
    RelationFailed {
        identity: String,
        lhs: String,
        rhs: String,
    },
    #[error("results are not comparable: {0}")]
    ShapeMismatch(String),
    #[error("invalid labels: {0}")]
    InvalidLabels(String),
    #[error("invalid result file: {0}")]
    InvalidResult(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("internal error: {0}")]
    Internal(String),
}
