use num_traits::{One, Zero};

use super::{AlgebraError, LaurentPolynomial, Rational};

/// Rational function `num / den` over the Laurent ring.
///
/// Not fully reduced: there is no multivariate gcd. The stored pair is
/// normalized so that `den` has no monomial content and a graded-lex leading
/// coefficient of one; whenever `den` divides `num` exactly, `den` is one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldElement {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

impl FieldElement {
    pub fn from_parts(num: LaurentPolynomial, den: LaurentPolynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.nvars() != den.nvars() {
            return Err(AlgebraError::ArityMismatch {
                expected: num.nvars(),
                found: den.nvars(),
            });
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPolynomial, den: LaurentPolynomial) -> Self {
        let nvars = num.nvars();
        if num.is_zero() {
            return FieldElement {
                num,
                den: LaurentPolynomial::one(nvars),
            };
        }
        let content = den.min_exponents().expect("nonzero denominator").neg();
        let mut num = num.mul_monomial(&content);
        let mut den = den.mul_monomial(&content);
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        FieldElement { num, den }
    }

    pub fn from_laurent(p: LaurentPolynomial) -> Self {
        let nvars = p.nvars();
        FieldElement {
            num: p,
            den: LaurentPolynomial::one(nvars),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_laurent(LaurentPolynomial::constant(nvars, c))
    }

    pub fn generator(nvars: usize, index: usize) -> Self {
        Self::from_laurent(LaurentPolynomial::var(nvars, index))
    }

    pub fn num(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn den(&self) -> &LaurentPolynomial {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The element as a Laurent polynomial, if its denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentPolynomial> {
        self.den.is_one().then_some(&self.num)
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

    /// One attempt at exact division of `num` by `den`.
    pub fn simplified(self) -> Self {
        if self.den.is_one() {
            return self;
        }
        match self.num.exact_divide(&self.den) {
            Ok(Some(q)) => Self::from_laurent(q),
            _ => self,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(Self::normalized(&self.num * &other.num, &self.den * &other.den))
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        if self.den == other.den {
            return Ok(Self::normalized(&self.num + &other.num, self.den.clone()));
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Ok(Self::normalized(num, &self.den * &other.den))
    }

    pub fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        if other.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalized(&self.num * &other.den, &self.den * &other.num).simplified())
    }

    /// Equality of rational functions by cross multiplication.
    pub fn equals(&self, other: &Self) -> Result<bool, AlgebraError> {
        self.check(other)?;
        if self == other {
            return Ok(true);
        }
        Ok(&self.num * &other.den == &other.num * &self.den)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, AlgebraError> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.num.evaluate(point)? / d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Monomial;

    fn gen(g: usize, i: usize) -> FieldElement {
        FieldElement::generator(g, i)
    }

    #[test]
    fn product_cancels_to_one() {
        let (a, b) = (gen(2, 0), gen(2, 1));
        let ab = a.div(&b).unwrap();
        let ba = b.div(&a).unwrap();
        let one = ab.mul(&ba).unwrap();
        assert!(one.num().is_one() && one.den().is_one());
    }

    #[test]
    fn division_simplifies_exact_quotients() {
        let (x, y) = (gen(2, 0), gen(2, 1));
        let xy = x.mul(&y).unwrap();
        let num = xy.mul(&x).unwrap().add(&xy.mul(&y).unwrap()).unwrap();
        let q = num.div(&x.add(&y).unwrap()).unwrap();
        assert_eq!(q, xy);
    }

    #[test]
    fn monomial_denominator_moves_into_numerator() {
        let (a, b, c) = (gen(3, 0), gen(3, 1), gen(3, 2));
        let s = a.mul(&b).unwrap().add(&c.mul(&c).unwrap()).unwrap();
        let q = s.div(&c).unwrap();
        assert!(q.den().is_one());
        assert!(q
            .num()
            .terms_desc()
            .any(|(m, _)| *m == Monomial::new(vec![1, 1, -1])));
    }

    #[test]
    fn cross_multiplied_equality() {
        let (a, b, c) = (gen(3, 0), gen(3, 1), gen(3, 2));
        let lhs = a.div(&b).unwrap();
        let rhs = FieldElement::from_parts(
            (a.mul(&c).unwrap()).num().clone(),
            (b.mul(&c).unwrap()).num().clone(),
        )
        .unwrap();
        assert!(lhs.equals(&rhs).unwrap());
        assert!(!a.equals(&a.add(&b).unwrap()).unwrap());
    }

    #[test]
    fn division_by_zero() {
        let a = gen(1, 0);
        let zero = FieldElement::constant(1, Rational::zero());
        assert_eq!(a.div(&zero), Err(AlgebraError::DivisionByZero));
    }
}
