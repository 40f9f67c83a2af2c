use std::collections::{BTreeMap, BinaryHeap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::packed::{small_integer, Packing};
use super::{AlgebraError, Monomial, Rational};

/// Sparse multivariate Laurent polynomial with rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by graded-lex order, so the last
/// entry is the leading term. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::term(Monomial::var(nvars, index), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPolynomial { nvars, terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        LaurentPolynomial { nvars, terms: map }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order (leading term first).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// The single term, when this polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Componentwise minimum of all exponent vectors (the monomial content).
    pub fn min_exponents(&self) -> Option<Monomial> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, m| acc.meet(m)))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Value at a rational point. Fails if a negative power meets a zero coordinate.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, AlgebraError> {
        if point.len() != self.nvars {
            return Err(AlgebraError::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (&e, x) in m.entries().iter().zip(point) {
                if e == 0 {
                    continue;
                }
                if x.is_zero() {
                    if e < 0 {
                        return Err(AlgebraError::DivisionByZero);
                    }
                    v = Rational::zero();
                    break;
                }
                let base = if e < 0 { x.recip() } else { x.clone() };
                v *= num_traits::pow(base, e.unsigned_abs() as usize);
            }
            total += v;
        }
        Ok(total)
    }

    fn max_degree_shifted(&self, shift: &Monomial) -> i64 {
        let base = shift.degree();
        self.terms.keys().map(|m| m.degree() - base).max().unwrap_or(0)
    }

    fn integer_terms(&self) -> Option<Vec<(&Monomial, i128)>> {
        self.terms.iter().map(|(m, c)| Some((m, small_integer(c)?))).collect()
    }

    fn from_packed(nvars: usize, packing: &Packing, terms: impl IntoIterator<Item = (u128, i128)>) -> Self {
        LaurentPolynomial {
            nvars,
            terms: terms
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(k, c)| (packing.unpack(k), Rational::from_integer(c.into())))
                .collect(),
        }
    }

    /// Product over packed monomials and `i128` coefficients; `None` when the
    /// operands do not fit or a coefficient overflows.
    fn mul_packed(&self, rhs: &LaurentPolynomial) -> Option<LaurentPolynomial> {
        let (sa, sb) = (self.min_exponents()?, rhs.min_exponents()?);
        let degree = self.max_degree_shifted(&sa) + rhs.max_degree_shifted(&sb);
        let packing = Packing::for_degree(self.nvars, degree)?;
        let a: Vec<(u128, i128)> = self
            .integer_terms()?
            .into_iter()
            .map(|(m, c)| (packing.pack_shifted(m, &sa), c))
            .collect();
        let b: Vec<(u128, i128)> = rhs
            .integer_terms()?
            .into_iter()
            .map(|(m, c)| (packing.pack_shifted(m, &sb), c))
            .collect();
        let mut acc: FxHashMap<u128, i128> = FxHashMap::default();
        acc.reserve(a.len() * b.len());
        for &(ka, ca) in &a {
            for &(kb, cb) in &b {
                let slot = acc.entry(ka + kb).or_insert(0);
                *slot = slot.checked_add(ca.checked_mul(cb)?)?;
            }
        }
        Some(Self::from_packed(self.nvars, &packing, acc).mul_monomial(&sa.mul(&sb)))
    }

    /// Exact division of the shifted operands over packed monomials and
    /// `i128` coefficients. The outer `None` means the fast path does not
    /// apply (overflow, non-integral quotient coefficient).
    fn exact_divide_packed(
        &self,
        divisor: &LaurentPolynomial,
        p_shift: &Monomial,
        q_shift: &Monomial,
    ) -> Option<Option<LaurentPolynomial>> {
        // With graded-lex order no remainder term exceeds the dividend's degree.
        let degree = self.max_degree_shifted(p_shift);
        let packing = Packing::for_degree(self.nvars, degree)?;
        if divisor.max_degree_shifted(q_shift) > degree {
            return Some(None);
        }
        let q: Vec<(u128, i128)> = divisor
            .integer_terms()?
            .into_iter()
            .map(|(m, c)| (packing.pack_shifted(m, q_shift), c))
            .collect();
        let (lead_k, lead_c) = *q.iter().max_by_key(|(k, _)| *k)?;
        let mut rem: FxHashMap<u128, i128> = FxHashMap::default();
        rem.reserve(self.terms.len() * 2);
        for (m, c) in self.integer_terms()? {
            rem.insert(packing.pack_shifted(m, p_shift), c);
        }
        let mut heap: BinaryHeap<u128> = rem.keys().copied().collect();
        let mut quotient: Vec<(u128, i128)> = Vec::new();
        while let Some(k) = heap.pop() {
            let Some(&c) = rem.get(&k) else {
                continue;
            };
            if !packing.divides(lead_k, k) {
                return Some(None);
            }
            if c % lead_c != 0 {
                return None;
            }
            let (t_k, t_c) = (k - lead_k, c / lead_c);
            for &(qk, qc) in &q {
                let key = qk + t_k;
                let delta = t_c.checked_mul(qc)?;
                match rem.get_mut(&key) {
                    Some(v) => {
                        *v = v.checked_sub(delta)?;
                        if *v == 0 {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, delta.checked_neg()?);
                        heap.push(key);
                    }
                }
            }
            quotient.push((t_k, t_c));
        }
        Some(Some(Self::from_packed(self.nvars, &packing, quotient)))
    }

    fn sub_scaled_shifted(&mut self, other: &LaurentPolynomial, shift: &Monomial, c: &Rational) {
        for (m, v) in &other.terms {
            let key = m.mul(shift);
            let delta = v * c;
            match self.terms.get_mut(&key) {
                Some(existing) => {
                    *existing -= delta;
                    if existing.is_zero() {
                        self.terms.remove(&key);
                    }
                }
                None => {
                    self.terms.insert(key, -delta);
                }
            }
        }
    }

    /// Exact division in the Laurent ring.
    ///
    /// Returns `Ok(Some(r))` with `self = divisor * r`, `Ok(None)` when no
    /// Laurent quotient exists. Monomial factors of the divisor are units and
    /// never obstruct divisibility.
    pub fn exact_divide(&self, divisor: &LaurentPolynomial) -> Result<Option<Self>, AlgebraError> {
        if divisor.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if divisor.nvars != self.nvars {
            return Err(AlgebraError::ArityMismatch {
                expected: self.nvars,
                found: divisor.nvars,
            });
        }
        if self.is_zero() {
            return Ok(Some(Self::zero(self.nvars)));
        }
        // Shift both operands into the polynomial ring with no variable
        // dividing them. The divisor is then coprime to every monomial, so
        // Laurent divisibility coincides with polynomial divisibility.
        let q_shift = divisor.min_exponents().expect("nonzero divisor");
        let p_shift = self.min_exponents().expect("nonzero dividend");
        if let Some(result) = self.exact_divide_packed(divisor, &p_shift, &q_shift) {
            return Ok(result.map(|q| q.mul_monomial(&p_shift.div(&q_shift))));
        }
        let q = divisor.mul_monomial(&q_shift.neg());
        let mut rem = self.mul_monomial(&p_shift.neg());
        let (lead_m, lead_c) = {
            let (m, c) = q.leading().expect("nonzero divisor");
            (m.clone(), c.clone())
        };
        let mut quotient: BTreeMap<Monomial, Rational> = BTreeMap::new();
        while let Some((m, c)) = rem.leading() {
            if !lead_m.divides(m) {
                return Ok(None);
            }
            let t_m = m.div(&lead_m);
            let t_c = c / &lead_c;
            rem.sub_scaled_shifted(&q, &t_m, &t_c);
            quotient.insert(t_m, t_c);
        }
        let quotient = LaurentPolynomial {
            nvars: self.nvars,
            terms: quotient,
        };
        Ok(Some(quotient.mul_monomial(&p_shift.div(&q_shift))))
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, rhs.nvars, "generator count mismatch");
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            match terms.get_mut(m) {
                Some(v) => {
                    *v += c;
                    if v.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        LaurentPolynomial {
            nvars: self.nvars,
            terms,
        }
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.nvars, rhs.nvars, "generator count mismatch");
        if self.terms.len() * rhs.terms.len() > 16 {
            if let Some(p) = self.mul_packed(rhs) {
                return p;
            }
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        LaurentPolynomial {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}
