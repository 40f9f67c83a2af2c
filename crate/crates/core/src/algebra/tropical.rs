use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::lp::{lex_argmax_by, HullOracle, Weights};
use super::{AlgebraError, Monomial, Rational};

/// Max-plus polynomial `x -> max_e <e, x>` without constant offsets.
///
/// The canonical form keeps only the vertices of the convex hull of the
/// exponent set; the represented function is the support function of that
/// polytope, so two canonical sets are equal iff the functions are.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TropicalTermSet {
    nvars: usize,
    terms: BTreeSet<Monomial>,
}

/// Integer directions used to spot hull vertices without an LP.
fn probe_directions(nvars: usize) -> Vec<Vec<i64>> {
    let mut dirs = Vec::new();
    for d in 0..nvars {
        let mut w = vec![0; nvars];
        w[d] = 1;
        dirs.push(w.clone());
        w[d] = -1;
        dirs.push(w);
    }
    for seed in 1..=24i64 {
        let w: Vec<i64> = (0..nvars as i64)
            .map(|i| ((i + 1) * (seed * 7 + 3) * 2654435761i64).rem_euclid(1009) - 504)
            .collect();
        dirs.push(w.iter().map(|x| -x).collect());
        dirs.push(w);
    }
    dirs
}

impl TropicalTermSet {
    /// Builds and canonicalizes; an empty set is rejected.
    pub fn new<I>(nvars: usize, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let terms: BTreeSet<Monomial> = terms.into_iter().collect();
        if terms.is_empty() {
            return Err(AlgebraError::EmptyTropicalSet);
        }
        if let Some(m) = terms.iter().find(|m| m.nvars() != nvars) {
            return Err(AlgebraError::ArityMismatch {
                expected: nvars,
                found: m.nvars(),
            });
        }
        Ok(Self::canonical(nvars, terms))
    }

    pub fn single(m: Monomial) -> Self {
        let nvars = m.nvars();
        TropicalTermSet {
            nvars,
            terms: BTreeSet::from([m]),
        }
    }

    fn canonical(nvars: usize, terms: BTreeSet<Monomial>) -> Self {
        TropicalTermSet {
            nvars,
            terms: extreme_points(nvars, terms),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms_desc(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().rev()
    }

    pub fn min_term(&self) -> &Monomial {
        self.terms.iter().next().expect("nonempty term set")
    }

    /// Minkowski sum, canonicalized.
    pub fn minkowski(&self, other: &Self) -> Self {
        if other.terms.len() == 1 {
            return self.translate(other.min_term());
        }
        if self.terms.len() == 1 {
            return other.translate(self.min_term());
        }
        let sum: BTreeSet<Monomial> = self
            .terms
            .iter()
            .flat_map(|a| other.terms.iter().map(move |b| a.mul(b)))
            .collect();
        Self::canonical(self.nvars, sum)
    }

    /// Union, canonicalized (tropical addition of polynomials).
    pub fn union(&self, other: &Self) -> Self {
        let all: BTreeSet<Monomial> = self.terms.union(&other.terms).cloned().collect();
        Self::canonical(self.nvars, all)
    }

    pub fn translate(&self, shift: &Monomial) -> Self {
        TropicalTermSet {
            nvars: self.nvars,
            terms: self.terms.iter().map(|m| m.mul(shift)).collect(),
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|m| {
                m.entries()
                    .iter()
                    .zip(point)
                    .filter(|(e, _)| **e != 0)
                    .fold(Rational::zero(), |acc, (&e, x)| acc + x * BigInt::from(e))
            })
            .max()
            .expect("nonempty term set")
    }
}

impl TropicalTermSet {
    /// For each vertex, a direction in which it is the unique maximum.
    fn vertex_directions(&self) -> Vec<(&Monomial, Weights)> {
        let pts: Vec<&Monomial> = self.terms.iter().collect();
        let mut oracle = HullOracle::new(pts.clone());
        (0..pts.len())
            .map(|i| {
                let w = oracle.separate(pts[i], Some(i)).expect("canonical terms are vertices");
                (pts[i], w)
            })
            .collect()
    }

    /// `q` with `self = summand + q` as polytopes, if there is one.
    ///
    /// Every vertex `v` of a Minkowski sum splits uniquely as the sum of the
    /// maxima of the summands in any direction selecting `v`, which gives the
    /// candidate vertices of `q`. The candidate is right iff `summand + q`
    /// has exactly the vertices of `self`.
    pub fn minkowski_difference(&self, summand: &Self) -> Option<Self> {
        if self.nvars != summand.nvars {
            return None;
        }
        let mut q = BTreeSet::new();
        let parts: Vec<&Monomial> = summand.terms.iter().collect();
        for (v, w) in self.vertex_directions() {
            q.insert(v.div(parts[w.lex_argmax(&parts, None)]));
        }
        let q = TropicalTermSet {
            nvars: self.nvars,
            terms: q,
        };
        (summand.minkowski(&q) == *self).then_some(q)
    }
}

/// Reduces a term set to the vertices of its convex hull.
///
/// Points winning a probe direction are vertices outright. Every other
/// point is tested against the vertices found so far: when it lies outside
/// their hull, the separating direction's maximum over the whole set is a
/// new vertex, and the test repeats.
pub fn extreme_points(nvars: usize, terms: BTreeSet<Monomial>) -> BTreeSet<Monomial> {
    if terms.len() <= 2 {
        return terms;
    }
    let pts: Vec<Monomial> = terms.into_iter().collect();
    let refs: Vec<&Monomial> = pts.iter().collect();
    let mut vertex = vec![false; pts.len()];
    for w in probe_directions(nvars) {
        vertex[lex_argmax_by(&refs, None, |p| p.dot(&w))] = true;
    }
    let mut oracle = HullOracle::new((0..pts.len()).filter(|&j| vertex[j]).map(|j| &pts[j]).collect());
    for i in 0..pts.len() {
        while !vertex[i] {
            let Some(w) = oracle.separate(&pts[i], None) else {
                break;
            };
            let j = w.lex_argmax(&refs, None);
            debug_assert!(!vertex[j]);
            vertex[j] = true;
            oracle.push(&pts[j]);
        }
    }
    pts.into_iter()
        .zip(vertex)
        .filter_map(|(p, keep)| keep.then_some(p))
        .collect()
}

/// Tropical rational function `num(x) - den(x)`.
///
/// Both parts are canonical and jointly translated so that the graded-lex
/// smallest vector of `den` is the origin.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TropicalElement {
    num: TropicalTermSet,
    den: TropicalTermSet,
}

impl TropicalElement {
    pub fn from_parts(num: TropicalTermSet, den: TropicalTermSet) -> Result<Self, AlgebraError> {
        if num.nvars != den.nvars {
            return Err(AlgebraError::ArityMismatch {
                expected: num.nvars,
                found: den.nvars,
            });
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: TropicalTermSet, den: TropicalTermSet) -> Self {
        let shift = den.min_term().neg();
        if shift.is_one() {
            return TropicalElement { num, den };
        }
        TropicalElement {
            num: num.translate(&shift),
            den: den.translate(&shift),
        }
    }

    /// The multiplicative unit (the zero function).
    pub fn one(nvars: usize) -> Self {
        let zero = TropicalTermSet::single(Monomial::one(nvars));
        TropicalElement {
            num: zero.clone(),
            den: zero,
        }
    }

    pub fn generator(nvars: usize, index: usize) -> Self {
        TropicalElement {
            num: TropicalTermSet::single(Monomial::var(nvars, index)),
            den: TropicalTermSet::single(Monomial::one(nvars)),
        }
    }

    pub fn num(&self) -> &TropicalTermSet {
        &self.num
    }

    pub fn den(&self) -> &TropicalTermSet {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.nvars() != other.nvars() {
            return Err(AlgebraError::ArityMismatch {
                expected: self.nvars(),
                found: other.nvars(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(Self::normalized(
            self.num.minkowski(&other.num),
            self.den.minkowski(&other.den),
        ))
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        if self.den == other.den {
            return Ok(Self::normalized(self.num.union(&other.num), self.den.clone()));
        }
        let num = self
            .num
            .minkowski(&other.den)
            .union(&other.num.minkowski(&self.den));
        Ok(Self::normalized(num, self.den.minkowski(&other.den)))
    }

    /// Divides, then cancels the denominator when it is a Minkowski summand
    /// of the numerator.
    pub fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(Self::normalized(
            self.num.minkowski(&other.den),
            self.den.minkowski(&other.num),
        )
        .simplified())
    }

    fn simplified(self) -> Self {
        if self.den.len() == 1 {
            return self;
        }
        match self.num.minkowski_difference(&self.den) {
            Some(q) => TropicalElement {
                num: q,
                den: TropicalTermSet::single(Monomial::one(self.nvars())),
            },
            None => self,
        }
    }

    /// Pointwise equality of the two piecewise-linear functions.
    pub fn equals(&self, other: &Self) -> Result<bool, AlgebraError> {
        self.check(other)?;
        if self == other {
            return Ok(true);
        }
        Ok(self.num.minkowski(&other.den) == other.num.minkowski(&self.den))
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, AlgebraError> {
        if point.len() != self.nvars() {
            return Err(AlgebraError::ArityMismatch {
                expected: self.nvars(),
                found: point.len(),
            });
        }
        Ok(self.num.evaluate(point) - self.den.evaluate(point))
    }
}
