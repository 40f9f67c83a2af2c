//! Exact arithmetic for the two label semifields.
//!
//! The classical backend works with rational functions over Q whose
//! numerators and denominators are sparse Laurent polynomials. The tropical
//! backend works with differences of max-plus polynomials, each kept as the
//! vertex set of its Newton polytope.

mod classical;
mod element;
mod laurent;
pub mod lp;
mod monomial;
mod packed;
pub mod text;
mod tropical;

use num_traits::{One, Zero};

pub use classical::FieldElement;
pub use element::{Backend, NumericValue, Semifield, SemifieldElement};
pub use laurent::LaurentPolynomial;
pub use monomial::Monomial;
pub use text::{indexed_names, parse, serialize, ParseError};
pub use tropical::{extreme_points, TropicalElement, TropicalTermSet};

/// Exact rationals with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("backend mismatch: {left} vs {right}")]
    BackendMismatch { left: Backend, right: Backend },
    #[error("generator count mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("tropical term set must be nonempty")]
    EmptyTropicalSet,
    #[error(transparent)]
    Parse(ParseError),
}

/// Parses an exact rational written as `p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: num_bigint::BigInt = n.parse().ok()?;
    let d: num_bigint::BigInt = d.parse().ok()?;
    if num_traits::Zero::is_zero(&d) {
        return None;
    }
    Some(Rational::new(n, d))
}

/// The rational with the smallest denominator strictly between `lo < hi`
/// (the smallest such integer when there is one).
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo < hi);
    let one = Rational::one();
    let next = lo.floor() + &one;
    if &next < hi {
        return next;
    }
    // (lo, hi) sits inside [f, f + 1) and contains no integer.
    let f = lo.floor();
    let (a, b) = (lo - &f, hi - &f);
    let inner_lo = b.recip();
    let inner = if a.is_zero() {
        inner_lo.floor() + &one
    } else {
        simplest_between(&inner_lo, &a.recip())
    };
    f + inner.recip()
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
