//! Braid invariant from Desargues flips on projective line arrangements.
//!
//! `n` points move in the real projective plane; their dual lines form an
//! arrangement whose faces carry labels. Every time three points become
//! collinear the small triangle of the three dual lines inverts, and the
//! label on it is replaced by `(a*d + b*e + c*f) / x`, where `(a,d)`,
//! `(b,e)` and `(c,f)` are the opposite faces of the surrounding hexagon.
//! The arithmetic runs either over rational functions or in the max-plus
//! semifield.
//!
//! Modules, bottom up:
//! - [`algebra`]: exact Laurent/rational-function and tropical arithmetic.
//! - [`geometry`]: projective points and lines, arrangements keyed by sign
//!   vectors, combinatorial flips.
//! - [`motion`]: piecewise-linear motions, collinearity events, flip scripts.
//! - [`engine`]: label propagation, the invariant, the octagon verifier and
//!   the Laurent audit.

pub mod algebra;
pub mod engine;
pub mod geometry;
pub mod motion;
pub mod random;
pub mod scene;
