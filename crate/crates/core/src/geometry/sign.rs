use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Side of a line. Ordered so that sign strings sort like their ASCII text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub fn of<T: num_traits::Signed>(x: &T) -> Sign {
        if x.is_positive() {
            Sign::Plus
        } else if x.is_negative() {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Plus,
            _ => Sign::Minus,
        }
    }

    fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        }
    }
}

/// Covector of a cell of a projective line arrangement: one sign per line.
///
/// Faces have no zero entries, edges one, vertices two. Cells of the
/// projective plane are antipodal pairs on the sphere, so vectors are kept
/// normalized with their first nonzero entry `+`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(Vec<Sign>);

impl SignVector {
    /// Wraps and normalizes.
    pub fn new(signs: Vec<Sign>) -> Self {
        SignVector(signs).normalized()
    }

    /// Wraps without normalizing (a cell of the sphere, not the plane).
    pub fn raw(signs: Vec<Sign>) -> Self {
        SignVector(signs)
    }

    pub fn normalized(mut self) -> Self {
        if self.0.iter().find(|s| **s != Sign::Zero) == Some(&Sign::Minus) {
            for s in &mut self.0 {
                *s = s.flip();
            }
        }
        self
    }

    pub fn negated(&self) -> Self {
        SignVector(self.0.iter().map(|s| s.flip()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Sign {
        self.0[i]
    }

    /// Negates the listed coordinates and renormalizes.
    pub fn flip_at(&self, coords: &[usize]) -> Self {
        let mut v = self.0.clone();
        for &c in coords {
            v[c] = v[c].flip();
        }
        SignVector(v).normalized()
    }

    pub fn with(&self, i: usize, s: Sign) -> Self {
        let mut v = self.0.clone();
        v[i] = s;
        SignVector(v)
    }

    pub fn zeros(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] == Sign::Zero).collect()
    }

    /// `self <= other` in the face order of the sphere: `other` agrees with
    /// `self` wherever `self` is nonzero.
    pub fn conforms_to(&self, other: &SignVector) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(a, b)| *a == Sign::Zero || a == b)
    }

    /// Number of sphere cells `±self` lying below `other` (0, 1 or 2).
    pub fn incidences(&self, other: &SignVector) -> usize {
        usize::from(self.conforms_to(other)) + usize::from(self.negated().conforms_to(other))
    }

    /// Reindexes: entry `i` of the result is `sign[i] * self[source[i]]`.
    pub fn permuted(&self, source: &[usize], sign: &[Sign]) -> Self {
        SignVector(
            source
                .iter()
                .zip(sign)
                .map(|(&s, &f)| self.0[s].times(f))
                .collect(),
        )
        .normalized()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector({self})")
    }
}

impl FromStr for SignVector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                '0' => Ok(Sign::Zero),
                other => Err(format!("invalid sign character `{other}` in `{s}`")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let v = SignVector(signs);
        if v.clone().normalized() != v {
            return Err(format!("sign vector `{s}` is not normalized"));
        }
        Ok(v)
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
