use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{GeometryError, Sign};
use crate::algebra::Rational;

pub type Vec3 = [Rational; 3];

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn dot(a: &Vec3, b: &Vec3) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn det3(a: &Vec3, b: &Vec3, c: &Vec3) -> Rational {
    dot(a, &cross(b, c))
}

pub fn is_zero_vec(a: &Vec3) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Primitive integer representative with first nonzero entry positive.
pub fn canonical_key(v: &Vec3) -> [BigInt; 3] {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in &mut ints {
            *x /= &g;
        }
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in &mut ints {
            *x = -x.clone();
        }
    }
    let [a, b, c]: [BigInt; 3] = ints.try_into().expect("three coordinates");
    [a, b, c]
}

fn key_vec(key: &[BigInt; 3]) -> Vec3 {
    [
        Rational::from_integer(key[0].clone()),
        Rational::from_integer(key[1].clone()),
        Rational::from_integer(key[2].clone()),
    ]
}

/// Point of the real projective plane in homogeneous coordinates.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    coords: Vec3,
}

/// Line `u*x + v*y + w*z = 0` of the real projective plane.
#[derive(Clone, Debug)]
pub struct ProjLine {
    coeffs: Vec3,
}

impl ProjPoint {
    pub fn new(coords: Vec3) -> Result<Self, GeometryError> {
        if is_zero_vec(&coords) {
            return Err(GeometryError::ZeroVector);
        }
        Ok(ProjPoint { coords })
    }

    /// The affine point `(x, y)` as `(x : y : 1)`.
    pub fn affine(x: Rational, y: Rational) -> Self {
        ProjPoint {
            coords: [x, y, Rational::one()],
        }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Result<Self, GeometryError> {
        Self::new([x.into(), y.into(), z.into()].map(|v: BigInt| Rational::from_integer(v)))
    }

    pub fn coords(&self) -> &Vec3 {
        &self.coords
    }

    pub fn key(&self) -> [BigInt; 3] {
        canonical_key(&self.coords)
    }

    /// The same point with its canonical integer coordinates.
    pub fn canonical(&self) -> Self {
        ProjPoint {
            coords: key_vec(&self.key()),
        }
    }

    pub fn same_as(&self, other: &ProjPoint) -> bool {
        is_zero_vec(&cross(&self.coords, &other.coords))
    }
}

impl ProjLine {
    pub fn new(coeffs: Vec3) -> Result<Self, GeometryError> {
        if is_zero_vec(&coeffs) {
            return Err(GeometryError::ZeroVector);
        }
        Ok(ProjLine { coeffs })
    }

    pub fn coeffs(&self) -> &Vec3 {
        &self.coeffs
    }

    pub fn key(&self) -> [BigInt; 3] {
        canonical_key(&self.coeffs)
    }

    pub fn canonical(&self) -> Self {
        ProjLine {
            coeffs: key_vec(&self.key()),
        }
    }

    /// Side of `p` with respect to this line, for the given representatives.
    pub fn side(&self, p: &Vec3) -> Sign {
        Sign::of(&dot(&self.coeffs, p))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.key();
        write!(f, "({a}:{b}:{c})")
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.key();
        write!(f, "[{a}:{b}:{c}]")
    }
}

/// Projective duality under the pairing `u*x + v*y + w*z`.
///
/// The chosen representative is kept, so a moving point whose coordinates
/// vary continuously has a continuously varying dual line.
pub fn dualize(p: &ProjPoint) -> ProjLine {
    ProjLine {
        coeffs: p.coords.clone(),
    }
}

pub fn dualize_line(l: &ProjLine) -> ProjPoint {
    ProjPoint {
        coords: l.coeffs.clone(),
    }
}

/// Sign of the determinant of the canonical coordinates; zero iff collinear.
pub fn collinear_sign(p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> Sign {
    Sign::of(&det3(&key_vec(&p.key()), &key_vec(&q.key()), &key_vec(&r.key())))
}

/// Ordered list of points.
#[derive(Clone, Debug)]
pub struct Configuration {
    points: Vec<ProjPoint>,
}

impl Configuration {
    pub fn new(points: Vec<ProjPoint>) -> Self {
        Configuration { points }
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// First violation of genericity: a repeated pair or a collinear triple.
    pub fn degeneracy(&self) -> Option<Vec<usize>> {
        let n = self.points.len();
        for i in 0..n {
            for j in i + 1..n {
                if self.points[i].same_as(&self.points[j]) {
                    return Some(vec![i, j]);
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let s = Sign::of(&det3(
                        &self.points[i].coords,
                        &self.points[j].coords,
                        &self.points[k].coords,
                    ));
                    if s == Sign::Zero {
                        return Some(vec![i, j, k]);
                    }
                }
            }
        }
        None
    }
}

/// Pairwise distinct points, no three collinear.
pub fn is_generic(c: &Configuration) -> bool {
    c.degeneracy().is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64, z: i64) -> ProjPoint {
        ProjPoint::from_ints(x, y, z).unwrap()
    }

    #[test]
    fn dual_of_origin_is_line_at_infinity() {
        let l = dualize(&p(0, 0, 1));
        assert_eq!(l.key(), [0.into(), 0.into(), 1.into()]);
        let l = dualize(&p(1, 2, 3));
        assert_eq!(l.key(), [1.into(), 2.into(), 3.into()]);
        assert!(dualize_line(&l).same_as(&p(1, 2, 3)));
    }

    #[test]
    fn canonical_key_is_primitive_and_signed() {
        let q = ProjPoint::new([
            Rational::new((-2).into(), 3.into()),
            Rational::from_integer(0.into()),
            Rational::new(4.into(), 3.into()),
        ])
        .unwrap();
        assert_eq!(q.key(), [1.into(), 0.into(), (-2).into()]);
    }

    #[test]
    fn collinearity() {
        assert_eq!(collinear_sign(&p(0, 0, 1), &p(1, 0, 1), &p(2, 0, 1)), Sign::Zero);
        assert_ne!(collinear_sign(&p(0, 0, 1), &p(1, 0, 1), &p(0, 1, 1)), Sign::Zero);
        assert_eq!(collinear_sign(&p(1, 0, 0), &p(0, 1, 0), &p(1, 1, 0)), Sign::Zero);
    }

    #[test]
    fn genericity() {
        let tri = Configuration::new(vec![p(0, 0, 1), p(1, 0, 1), p(0, 1, 1)]);
        assert!(is_generic(&tri));
        let rep = Configuration::new(vec![p(0, 0, 1), p(1, 0, 1), p(2, 0, 2)]);
        assert_eq!(rep.degeneracy(), Some(vec![1, 2]));
        let col = Configuration::new(vec![p(0, 0, 1), p(1, 0, 1), p(0, 1, 1), p(2, 0, 1)]);
        assert!(!is_generic(&col));
    }

    #[test]
    fn zero_vector_rejected() {
        assert!(ProjPoint::from_ints(0, 0, 0).is_err());
    }
}
