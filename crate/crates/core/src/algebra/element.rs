use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{AlgebraError, FieldElement, Rational, TropicalElement};

/// Which semifield a computation runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Rational functions over Q with ordinary `*`, `/`, `+`.
    Classical,
    /// Max-plus: `a*b = a+b`, `a/b = a-b`, `a+b = max(a,b)`.
    Tropical,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Classical => "classical",
            Backend::Tropical => "tropical",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "classical" => Ok(Backend::Classical),
            "tropical" => Ok(Backend::Tropical),
            other => Err(format!("unknown backend `{other}`")),
        }
    }
}

/// The operations (otimes, oslash, oplus) that the flip rule needs.
///
/// Implemented both by symbolic labels and by plain rational values, so the
/// same propagation code runs symbolically and numerically.
pub trait Semifield: Clone + fmt::Debug {
    fn otimes(&self, rhs: &Self) -> Result<Self, AlgebraError>;
    fn oplus(&self, rhs: &Self) -> Result<Self, AlgebraError>;
    fn oslash(&self, rhs: &Self) -> Result<Self, AlgebraError>;
    fn sf_equals(&self, rhs: &Self) -> Result<bool, AlgebraError>;
}

/// A symbolic label in one of the two backends.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SemifieldElement {
    Classical(FieldElement),
    Tropical(TropicalElement),
}

impl SemifieldElement {
    pub fn generator(backend: Backend, nvars: usize, index: usize) -> Self {
        match backend {
            Backend::Classical => SemifieldElement::Classical(FieldElement::generator(nvars, index)),
            Backend::Tropical => SemifieldElement::Tropical(TropicalElement::generator(nvars, index)),
        }
    }

    /// The multiplicative unit: the constant 1, or the zero function.
    pub fn one(backend: Backend, nvars: usize) -> Self {
        match backend {
            Backend::Classical => {
                SemifieldElement::Classical(FieldElement::constant(nvars, Rational::from_integer(1.into())))
            }
            Backend::Tropical => SemifieldElement::Tropical(TropicalElement::one(nvars)),
        }
    }

    pub fn backend(&self) -> Backend {
        match self {
            SemifieldElement::Classical(_) => Backend::Classical,
            SemifieldElement::Tropical(_) => Backend::Tropical,
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            SemifieldElement::Classical(x) => x.nvars(),
            SemifieldElement::Tropical(x) => x.nvars(),
        }
    }

    pub fn as_classical(&self) -> Option<&FieldElement> {
        match self {
            SemifieldElement::Classical(x) => Some(x),
            SemifieldElement::Tropical(_) => None,
        }
    }

    pub fn as_tropical(&self) -> Option<&TropicalElement> {
        match self {
            SemifieldElement::Tropical(x) => Some(x),
            SemifieldElement::Classical(_) => None,
        }
    }

    /// Exact value at a rational point (max-plus arithmetic for tropical labels).
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, AlgebraError> {
        match self {
            SemifieldElement::Classical(x) => x.evaluate(point),
            SemifieldElement::Tropical(x) => x.evaluate(point),
        }
    }

    fn mismatch(&self, other: &Self) -> AlgebraError {
        AlgebraError::BackendMismatch {
            left: self.backend(),
            right: other.backend(),
        }
    }
}

impl Semifield for SemifieldElement {
    fn otimes(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        match (self, rhs) {
            (Self::Classical(a), Self::Classical(b)) => a.mul(b).map(Self::Classical),
            (Self::Tropical(a), Self::Tropical(b)) => a.mul(b).map(Self::Tropical),
            _ => Err(self.mismatch(rhs)),
        }
    }

    fn oplus(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        match (self, rhs) {
            (Self::Classical(a), Self::Classical(b)) => a.add(b).map(Self::Classical),
            (Self::Tropical(a), Self::Tropical(b)) => a.add(b).map(Self::Tropical),
            _ => Err(self.mismatch(rhs)),
        }
    }

    fn oslash(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        match (self, rhs) {
            (Self::Classical(a), Self::Classical(b)) => a.div(b).map(Self::Classical),
            (Self::Tropical(a), Self::Tropical(b)) => a.div(b).map(Self::Tropical),
            _ => Err(self.mismatch(rhs)),
        }
    }

    fn sf_equals(&self, rhs: &Self) -> Result<bool, AlgebraError> {
        match (self, rhs) {
            (Self::Classical(a), Self::Classical(b)) => a.equals(b),
            (Self::Tropical(a), Self::Tropical(b)) => a.equals(b),
            _ => Err(self.mismatch(rhs)),
        }
    }
}

/// A plain rational value under one of the two arithmetics.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum NumericValue {
    Classical(Rational),
    Tropical(Rational),
}

impl NumericValue {
    pub fn new(backend: Backend, value: Rational) -> Self {
        match backend {
            Backend::Classical => NumericValue::Classical(value),
            Backend::Tropical => NumericValue::Tropical(value),
        }
    }

    pub fn value(&self) -> &Rational {
        match self {
            NumericValue::Classical(v) | NumericValue::Tropical(v) => v,
        }
    }

    fn backend(&self) -> Backend {
        match self {
            NumericValue::Classical(_) => Backend::Classical,
            NumericValue::Tropical(_) => Backend::Tropical,
        }
    }

    fn mismatch(&self, other: &Self) -> AlgebraError {
        AlgebraError::BackendMismatch {
            left: self.backend(),
            right: other.backend(),
        }
    }
}

impl Semifield for NumericValue {
    fn otimes(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        match (self, rhs) {
            (Self::Classical(a), Self::Classical(b)) => Ok(Self::Classical(a * b)),
            (Self::Tropical(a), Self::Tropical(b)) => Ok(Self::Tropical(a + b)),
            _ => Err(self.mismatch(rhs)),
        }
    }

    fn oplus(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        match (self, rhs) {
            (Self::Classical(a), Self::Classical(b)) => Ok(Self::Classical(a + b)),
            (Self::Tropical(a), Self::Tropical(b)) => Ok(Self::Tropical(a.max(b).clone())),
            _ => Err(self.mismatch(rhs)),
        }
    }

    fn oslash(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        match (self, rhs) {
            (Self::Classical(_), Self::Classical(b)) if b.is_zero() => Err(AlgebraError::DivisionByZero),
            (Self::Classical(a), Self::Classical(b)) => Ok(Self::Classical(a / b)),
            (Self::Tropical(a), Self::Tropical(b)) => Ok(Self::Tropical(a - b)),
            _ => Err(self.mismatch(rhs)),
        }
    }

    fn sf_equals(&self, rhs: &Self) -> Result<bool, AlgebraError> {
        if self.backend() != rhs.backend() {
            return Err(self.mismatch(rhs));
        }
        Ok(self.value() == rhs.value())
    }
}
