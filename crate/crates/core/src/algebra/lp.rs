//! Exact convex-hull membership by phase-one simplex over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, PrimInt, Signed, ToPrimitive, Zero};

use super::{Monomial, Rational};

/// Decides whether `target` lies in the convex hull of `points`.
pub fn in_convex_hull(target: &Monomial, points: &[&Monomial]) -> bool {
    separating_direction(target, points).is_none()
}

/// A direction `w` with `<w, target> > <w, p>` for every point, or `None`
/// when `target` lies in the convex hull of `points`, which must be
/// distinct.
pub fn separating_direction(target: &Monomial, points: &[&Monomial]) -> Option<Vec<Rational>> {
    HullOracle::new(points.to_vec()).separate(target, None).map(|w| w.to_rationals())
}

/// Repeated separation queries against a set of distinct points, by column
/// generation.
///
/// Each query solves the LP over a working set of columns; while the
/// direction fails to separate the whole set, the best point in that
/// direction joins. The working set is kept between queries unless it has
/// grown past a few times the dimension.
pub struct HullOracle<'a> {
    points: Vec<&'a Monomial>,
    working: Vec<usize>,
}

impl<'a> HullOracle<'a> {
    pub fn new(points: Vec<&'a Monomial>) -> Self {
        HullOracle {
            points,
            working: Vec::new(),
        }
    }

    pub fn push(&mut self, p: &'a Monomial) {
        self.points.push(p);
    }

    /// Separates `target` from every point except the one at `skip`.
    pub fn separate(&mut self, target: &Monomial, skip: Option<usize>) -> Option<Weights> {
        let points = &self.points;
        let others = || (0..points.len()).filter(move |&j| Some(j) != skip);
        if points.len() - usize::from(skip.is_some()) <= 2 * target.nvars() + 2 {
            let subset: Vec<&Monomial> = others().map(|j| points[j]).collect();
            return dense_separating_direction(target, &subset);
        }
        if skip.is_none() && points.contains(&target) {
            return None;
        }
        if self.working.len() > 8 * target.nvars() {
            self.working.clear();
        }
        if self.working.iter().all(|&j| Some(j) == skip) {
            let toward: Vec<i64> = target.entries().iter().map(|&e| e as i64).collect();
            let first = others().max_by_key(|&j| points[j].dot(&toward)).expect("nonempty point set");
            self.working.push(first);
        }
        loop {
            let subset: Vec<&Monomial> = self
                .working
                .iter()
                .filter(|&&j| Some(j) != skip)
                .map(|&j| self.points[j])
                .collect();
            let w = dense_separating_direction(target, &subset)?;
            let j = w.lex_argmax(&self.points, skip);
            if !w.at_least(self.points[j], target) {
                return Some(w);
            }
            self.working.push(j);
        }
    }
}

/// An integral direction, in machine integers when the entries are small
/// enough that no score over `i32` exponents can overflow.
#[derive(Clone, Debug)]
pub enum Weights {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

const SMALL: i128 = 1 << 90;

impl Weights {
    /// A positive multiple of `w` with integer entries.
    pub fn new(w: &[Rational]) -> Self {
        let lcm = w.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        Self::from_big(w.iter().map(|x| x.numer() * (&lcm / x.denom())).collect())
    }

    fn from_big(big: Vec<BigInt>) -> Self {
        let limit = BigInt::from(SMALL);
        if big.len() <= 64 && big.iter().all(|x| x.abs() < limit) {
            Weights::Small(big.iter().map(|x| x.to_i128().expect("bounded")).collect())
        } else {
            Weights::Big(big)
        }
    }

    fn from_ints(w: Vec<i128>) -> Self {
        if w.len() <= 64 && w.iter().all(|x| x.abs() < SMALL) {
            Weights::Small(w)
        } else {
            Weights::Big(w.into_iter().map(BigInt::from).collect())
        }
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        match self {
            Weights::Small(w) => w.iter().map(|&x| Rational::from_integer(x.into())).collect(),
            Weights::Big(w) => w.iter().map(|x| Rational::from_integer(x.clone())).collect(),
        }
    }

    /// Whether `target` scores strictly above every point.
    fn separates(&self, target: &Monomial, points: &[&Monomial]) -> bool {
        points.iter().all(|p| !self.at_least(p, target))
    }

    /// Index of the maximum score, ties broken toward larger entries.
    pub fn lex_argmax(&self, points: &[&Monomial], skip: Option<usize>) -> usize {
        match self {
            Weights::Small(w) => lex_argmax_by(points, skip, |p| small_score(p, w)),
            Weights::Big(w) => lex_argmax_by(points, skip, |p| big_score(p, w)),
        }
    }

    /// Whether `p` scores at least as high as `q`.
    pub fn at_least(&self, p: &Monomial, q: &Monomial) -> bool {
        match self {
            Weights::Small(w) => small_score(p, w) >= small_score(q, w),
            Weights::Big(w) => big_score(p, w) >= big_score(q, w),
        }
    }
}

fn small_score(m: &Monomial, w: &[i128]) -> i128 {
    m.entries().iter().zip(w).map(|(&e, &x)| e as i128 * x).sum()
}

fn big_score(m: &Monomial, w: &[BigInt]) -> BigInt {
    m.entries()
        .iter()
        .zip(w)
        .filter(|(&e, _)| e != 0)
        .map(|(&e, x)| x * e)
        .sum()
}

pub(crate) fn lex_argmax_by<S: Ord>(
    points: &[&Monomial],
    skip: Option<usize>,
    score: impl Fn(&Monomial) -> S,
) -> usize {
    let mut best: Option<(usize, S)> = None;
    for (i, p) in points.iter().enumerate() {
        if Some(i) == skip {
            continue;
        }
        let s = score(p);
        let better = match &best {
            None => true,
            Some((b, bs)) => s > *bs || (s == *bs && p.entries() > points[*b].entries()),
        };
        if better {
            best = Some((i, s));
        }
    }
    best.expect("nonempty point set").0
}

/// Solves the feasibility problem `sum(l_i * p_i) = target`, `sum(l_i) = 1`,
/// `l >= 0` with a dense phase-one tableau over all of `points`. When
/// infeasible, the final duals are a Farkas certificate and give the
/// direction. Machine integers are tried first, rationals last.
fn dense_separating_direction(target: &Monomial, points: &[&Monomial]) -> Option<Weights> {
    let ints = |w: Vec<i128>| Weights::from_ints(w);
    let w = match separating_direction_int::<i64>(target, points) {
        Ok(w) => w.map(|w| ints(w.into_iter().map(i128::from).collect())),
        Err(Overflow) => match separating_direction_int::<i128>(target, points) {
            Ok(w) => w.map(ints),
            Err(Overflow) => separating_direction_rational(target, points).map(|w| Weights::new(&w)),
        },
    };
    debug_assert!(w.as_ref().is_none_or(|w| w.separates(target, points)));
    w
}

struct Overflow;

const DANTZIG_PIVOTS: usize = 64;

fn mul<T: PrimInt>(a: T, b: T) -> Result<T, Overflow> {
    a.checked_mul(&b).ok_or(Overflow)
}

fn sub<T: PrimInt>(a: T, b: T) -> Result<T, Overflow> {
    a.checked_sub(&b).ok_or(Overflow)
}

fn unit<T: Clone + Zero + std::ops::Neg<Output = T>>(dim: usize, d: usize, up: bool, one: T) -> Vec<T> {
    let mut w = vec![T::zero(); dim];
    w[d] = if up { one } else { -one };
    w
}

/// Rows not constant over `points`, or the unit direction of a constant row
/// the target violates.
fn active_rows(target: &Monomial, points: &[&Monomial]) -> Result<Vec<usize>, (usize, bool)> {
    let dim = target.nvars();
    let mut rows = Vec::new();
    for d in 0..dim {
        let c = points[0].entries()[d];
        if points.iter().all(|p| p.entries()[d] == c) {
            if target.entries()[d] != c {
                return Err((d, target.entries()[d] > c));
            }
        } else {
            rows.push(d);
        }
    }
    Ok(rows)
}

/// The same simplex, fraction-free: every entry is the true tableau value
/// times the current pivot product `den`, and each update divides exactly.
/// Pivots follow Dantzig's rule at first and Bland's rule after
/// `DANTZIG_PIVOTS`, which rules out cycling.
fn separating_direction_int<T>(target: &Monomial, points: &[&Monomial]) -> Result<Option<Vec<T>>, Overflow>
where
    T: PrimInt + Signed + From<i32>,
    BigInt: From<T>,
{
    let dim = target.nvars();
    if points.is_empty() {
        return Ok(Some(vec![T::zero(); dim]));
    }
    if points.contains(&target) {
        return Ok(None);
    }
    let rows = match active_rows(target, points) {
        Ok(rows) => rows,
        Err((d, up)) => return Ok(Some(unit(dim, d, up, T::one()))),
    };
    let m = points.len();
    let r = rows.len() + 1;
    let width = m + r + 1;
    let rhs = width - 1;
    let mut t: Vec<Vec<T>> = Vec::with_capacity(r + 1);
    let mut flipped = vec![false; r];
    for (ri, &d) in rows.iter().enumerate() {
        let mut row: Vec<T> = points.iter().map(|p| <T as From<i32>>::from(p.entries()[d])).collect();
        row.resize(width, T::zero());
        row[m + ri] = T::one();
        row[rhs] = <T as From<i32>>::from(target.entries()[d]);
        if row[rhs] < T::zero() {
            flipped[ri] = true;
            for x in row[..m].iter_mut() {
                *x = -*x;
            }
            row[rhs] = -row[rhs];
        }
        t.push(row);
    }
    let mut last = vec![T::one(); m];
    last.resize(width, T::zero());
    last[m + r - 1] = T::one();
    last[rhs] = T::one();
    t.push(last);
    // The cost row rides along as row `r`.
    let mut cost = vec![T::zero(); width];
    for row in &t {
        for j in (0..m).chain([rhs]) {
            cost[j] = sub(cost[j], row[j])?;
        }
    }
    t.push(cost);
    let mut basis: Vec<usize> = (m..m + r).collect();
    let mut den = T::one();
    let mut pivots = 0;

    loop {
        let entering = if pivots < DANTZIG_PIVOTS {
            (0..m + r).filter(|&j| t[r][j] < T::zero()).min_by_key(|&j| (t[r][j], j))
        } else {
            (0..m + r).find(|&j| t[r][j] < T::zero())
        };
        let Some(enter) = entering else {
            break;
        };
        pivots += 1;
        let mut leave: Option<usize> = None;
        for i in 0..r {
            if t[i][enter] > T::zero() {
                let better = match leave {
                    None => true,
                    Some(l) => {
                        // t[i][rhs] / t[i][enter] against t[l][rhs] / t[l][enter].
                        let a = mul(t[i][rhs], t[l][enter])?;
                        let b = mul(t[l][rhs], t[i][enter])?;
                        a < b || (a == b && basis[i] < basis[l])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
        }
        let pr = leave.expect("phase-one objective is bounded below");
        let p = t[pr][enter];
        let prow = t[pr].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == pr {
                continue;
            }
            let f = row[enter];
            if f.is_zero() {
                for x in row.iter_mut() {
                    *x = mul(p, *x)? / den;
                }
            } else {
                for (x, &q) in row.iter_mut().zip(&prow) {
                    *x = sub(mul(p, *x)?, mul(f, q)?)? / den;
                }
            }
        }
        den = p;
        basis[pr] = enter;
    }
    if t[r][rhs].is_zero() {
        return Ok(None);
    }
    // Reduced cost of artificial j is 1 - y_j; scale by den > 0.
    let mut w = vec![T::zero(); dim];
    for (ri, &d) in rows.iter().enumerate() {
        let y = sub(den, t[r][m + ri])?;
        w[d] = if flipped[ri] { -y } else { y };
    }
    Ok(Some(w))
}

fn separating_direction_rational(target: &Monomial, points: &[&Monomial]) -> Option<Vec<Rational>> {
    let dim = target.nvars();
    if points.is_empty() {
        return Some(vec![Rational::zero(); dim]);
    }
    if points.contains(&target) {
        return None;
    }
    // Coordinates constant over all points must match the target exactly;
    // they carry no information for the LP otherwise.
    let rows = match active_rows(target, points) {
        Ok(rows) => rows,
        Err((d, up)) => return Some(unit(dim, d, up, Rational::one())),
    };

    let m = points.len();
    let r = rows.len() + 1;
    // Columns: m structural variables, r artificials, then the right-hand side.
    let width = m + r + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(r);
    for (ri, &d) in rows.iter().enumerate() {
        let mut row: Vec<Rational> = points
            .iter()
            .map(|p| Rational::from_integer(BigInt::from(p.entries()[d])))
            .collect();
        row.resize(width, Rational::zero());
        row[m + ri] = Rational::one();
        row[width - 1] = Rational::from_integer(BigInt::from(target.entries()[d]));
        t.push(row);
    }
    let mut last = vec![Rational::one(); m];
    last.resize(width, Rational::zero());
    last[m + r - 1] = Rational::one();
    last[width - 1] = Rational::one();
    t.push(last);
    let mut flipped = vec![false; r];
    for (i, row) in t.iter_mut().enumerate() {
        if row[width - 1].is_negative() {
            flipped[i] = true;
            for (j, x) in row.iter_mut().enumerate() {
                if j < m || j == width - 1 {
                    *x = -x.clone();
                }
            }
        }
    }
    let mut basis: Vec<usize> = (m..m + r).collect();
    // Reduced costs of the phase-one objective (sum of artificials).
    let mut cost: Vec<Rational> = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..m {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }

    while let Some(enter) = (0..m + r).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[width - 1] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((pivot_row, _)) = leave else {
            // Unbounded is impossible for a phase-one problem.
            unreachable!("phase-one objective is bounded below");
        };
        let pivot = t[pivot_row][enter].clone();
        for x in t[pivot_row].iter_mut() {
            *x /= &pivot;
        }
        let prow = t[pivot_row].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == pivot_row || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (x, p) in cost.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        basis[pivot_row] = enter;
    }
    if cost[width - 1].is_zero() {
        return None;
    }
    // Reduced cost of artificial j is 1 - y_j.
    let mut w = vec![Rational::zero(); dim];
    for (ri, &d) in rows.iter().enumerate() {
        let y = Rational::one() - &cost[m + ri];
        w[d] = if flipped[ri] { -y } else { y };
    }
    Some(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[i32]) -> Monomial {
        Monomial::new(v.to_vec())
    }

    #[test]
    fn midpoint_is_inside() {
        let (a, b) = (m(&[0, 0]), m(&[2, 0]));
        assert!(in_convex_hull(&m(&[1, 0]), &[&a, &b]));
        assert!(!in_convex_hull(&m(&[3, 0]), &[&a, &b]));
        assert!(!in_convex_hull(&m(&[1, 1]), &[&a, &b]));
    }

    #[test]
    fn separating_direction_is_strict() {
        let pts = [m(&[0, 0, 1]), m(&[2, 0, 1]), m(&[0, 2, 1]), m(&[1, 1, 1])];
        let refs: Vec<&Monomial> = pts[..3].iter().collect();
        assert!(separating_direction(&pts[3], &refs).is_none());
        let w = separating_direction(&m(&[2, 2, 1]), &refs).unwrap();
        let dot = |p: &Monomial| -> Rational {
            p.entries().iter().zip(&w).map(|(&e, x)| x * BigInt::from(e)).sum()
        };
        assert!(refs.iter().all(|p| dot(p) < dot(&m(&[2, 2, 1]))));
        let off = separating_direction(&m(&[0, 0, 2]), &refs).unwrap();
        assert_eq!(off[2], Rational::one());
    }

    fn separates(w: &[Rational], target: &Monomial, points: &[&Monomial]) -> bool {
        let score = |p: &Monomial| -> Rational {
            p.entries().iter().zip(w).map(|(&e, x)| x * BigInt::from(e)).sum()
        };
        let top = score(target);
        points.iter().all(|p| score(p) < top)
    }

    #[test]
    fn integer_and_rational_simplex_agree() {
        use rand::{Rng, SeedableRng};
        let mut g = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..300 {
            let dim = g.gen_range(1..=6);
            let pick = |g: &mut rand_chacha::ChaCha8Rng| {
                Monomial::new((0..dim).map(|_| g.gen_range(-3..=3)).collect())
            };
            let target = pick(&mut g);
            let count = g.gen_range(1..=12);
            let pts: Vec<Monomial> = (0..count).map(|_| pick(&mut g)).collect();
            let refs: Vec<&Monomial> = pts.iter().collect();
            let Ok(fast) = separating_direction_int::<i64>(&target, &refs) else {
                panic!("small inputs overflowed");
            };
            let slow = separating_direction_rational(&target, &refs);
            assert_eq!(fast.is_some(), slow.is_some());
            if let Some(w) = fast {
                let w: Vec<Rational> = w.into_iter().map(|x| Rational::from_integer(x.into())).collect();
                assert!(separates(&w, &target, &refs));
            }
        }
    }

    #[test]
    fn column_generation_matches_the_full_lp() {
        use rand::{Rng, SeedableRng};
        let mut g = rand_chacha::ChaCha8Rng::seed_from_u64(10);
        for _ in 0..200 {
            let dim = g.gen_range(2..=6);
            let pick = |g: &mut rand_chacha::ChaCha8Rng| {
                Monomial::new((0..dim).map(|_| g.gen_range(-4..=4)).collect())
            };
            let target = pick(&mut g);
            let count = g.gen_range(15..=60);
            let pts: Vec<Monomial> = (0..count).map(|_| pick(&mut g)).collect();
            let refs: Vec<&Monomial> = pts.iter().collect();
            let generated = separating_direction(&target, &refs);
            assert_eq!(generated.is_some(), dense_separating_direction(&target, &refs).is_some());
            if let Some(w) = generated {
                assert!(separates(&w, &target, &refs));
            }
        }
    }

    #[test]
    fn triangle_vertices_are_not_redundant() {
        let pts = [m(&[0, 0]), m(&[1, 0]), m(&[0, 1])];
        for i in 0..3 {
            let others: Vec<&Monomial> = (0..3).filter(|&j| j != i).map(|j| &pts[j]).collect();
            assert!(!in_convex_hull(&pts[i], &others));
        }
        assert!(!in_convex_hull(&m(&[1, 1]), &pts.iter().collect::<Vec<_>>()));
    }

    #[test]
    fn interior_of_cube_section() {
        let pts: Vec<Monomial> = vec![
            m(&[0, 0, 0]),
            m(&[2, 0, 0]),
            m(&[0, 2, 0]),
            m(&[0, 0, 2]),
            m(&[2, 2, 2]),
        ];
        let refs: Vec<&Monomial> = pts.iter().collect();
        assert!(in_convex_hull(&m(&[1, 1, 1]), &refs));
        assert!(!in_convex_hull(&m(&[2, 2, 0]), &refs));
    }
}
