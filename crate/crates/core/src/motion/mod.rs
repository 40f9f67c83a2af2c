//! Piecewise-linear motions of points, their collinearity events and the
//! flip scripts they compile to.

mod braid;
mod events;
mod script;
mod trajectory;

pub use braid::{braid_word_to_trajectory, BraidLetter, BraidWord};
pub use events::{detect_events, order_events, sample_times, EventTime, MotionEvent, Quadratic};
pub use script::{compile_flip_script, tracked_arrangement, FlipScript, ScriptEntry};
pub use trajectory::{Point2, PointPath, Trajectory};

use crate::algebra::{format_rational, Rational};

fn show_interval(iv: &(Rational, Rational)) -> String {
    format!("[{}, {}]", format_rational(&iv.0), format_rational(&iv.1))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MotionError {
    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(String),
    #[error("invalid braid word: {0}")]
    InvalidWord(String),
    #[error("configuration not generic at t = {}: points {indices:?}", format_rational(.time))]
    NotGeneric { indices: Vec<usize>, time: Rational },
    #[error("points {triple:?} stay collinear on t in {}", show_interval(.interval))]
    IdenticallyZero {
        triple: [usize; 3],
        interval: (Rational, Rational),
    },
    #[error("points {triple:?} touch collinearity without crossing at t = {}", format_rational(.time))]
    DegenerateEvent { triple: [usize; 3], time: Rational },
    #[error("points {triple:?} are collinear at breakpoint t = {}", format_rational(.time))]
    EndpointEvent { triple: [usize; 3], time: Rational },
    #[error("points {first:?} and {second:?} become collinear simultaneously at t = {time}")]
    SimultaneousEvents {
        first: [usize; 3],
        second: [usize; 3],
        time: String,
    },
    #[error("triangle of lines {triple:?} is obstructed on t in {}", show_interval(.interval))]
    ObstructedTriangle {
        triple: [usize; 3],
        interval: (Rational, Rational),
    },
}
