use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::trajectory::{Point2, Trajectory};
use super::MotionError;
use crate::algebra::{format_rational, simplest_between, Rational};
use crate::geometry::Sign;

/// `c2*t^2 + c1*t + c0` over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadratic {
    pub c2: Rational,
    pub c1: Rational,
    pub c0: Rational,
}

impl Quadratic {
    pub fn new(c2: Rational, c1: Rational, c0: Rational) -> Self {
        Quadratic { c2, c1, c0 }
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        (&self.c2 * t + &self.c1) * t + &self.c0
    }

    pub fn is_zero(&self) -> bool {
        self.c2.is_zero() && self.c1.is_zero() && self.c0.is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        if !self.c2.is_zero() {
            Some(2)
        } else if !self.c1.is_zero() {
            Some(1)
        } else if !self.c0.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    fn derivative_at(&self, t: &Rational) -> Rational {
        Rational::from_integer(2.into()) * &self.c2 * t + &self.c1
    }

    fn proportional(&self, other: &Quadratic) -> bool {
        let a = [&self.c2, &self.c1, &self.c0];
        let b = [&other.c2, &other.c1, &other.c0];
        (0..3).all(|i| (i + 1..3).all(|j| a[i] * b[j] == a[j] * b[i]))
    }
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})t^2 + ({})t + ({})",
            format_rational(&self.c2),
            format_rational(&self.c1),
            format_rational(&self.c0)
        )
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// A simple real root of a quadratic, as an exact rational or as an open
/// isolating interval whose endpoints are not roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventTime {
    /// Index of the segment, within the breakpoints of the event's points.
    pub segment: usize,
    pub poly: Quadratic,
    /// 0 for the smaller root of `poly`, 1 for the larger.
    pub root_index: usize,
    lo: Rational,
    hi: Rational,
}

impl EventTime {
    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn exact(&self) -> Option<&Rational> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    /// Halves the isolating interval.
    pub fn refine(&mut self) {
        if self.exact().is_some() {
            return;
        }
        let mid = (&self.lo + &self.hi) / Rational::from_integer(2.into());
        let fm = self.poly.eval(&mid);
        if fm.is_zero() {
            self.lo = mid.clone();
            self.hi = mid;
        } else if Sign::of(&fm) == Sign::of(&self.poly.eval(&self.lo)) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    pub fn refine_to(&mut self, width: &Rational) {
        while &self.hi - &self.lo > *width {
            self.refine();
        }
    }

    /// Exact comparison of the root with a rational.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        if let Some(x) = self.exact() {
            return x.cmp(r);
        }
        if r <= &self.lo {
            return Ordering::Greater;
        }
        if r >= &self.hi {
            return Ordering::Less;
        }
        // An irrational root never equals r, and f(r) != 0 inside the interval.
        if Sign::of(&self.poly.eval(r)) == Sign::of(&self.poly.eval(&self.lo)) {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Exact comparison of two roots; `None` when they are equal.
    pub fn compare(&self, other: &EventTime) -> Option<Ordering> {
        match (self.exact(), other.exact()) {
            (Some(a), Some(b)) => return Some(a.cmp(b)).filter(|o| o.is_ne()),
            (Some(a), None) => return Some(other.cmp_rational(a).reverse()),
            (None, Some(b)) => return Some(self.cmp_rational(b)),
            (None, None) => {}
        }
        // Both roots are irrational, so both quadratics are irreducible over
        // Q: they share a root iff they are proportional.
        if self.poly.proportional(&other.poly) {
            return Some(self.root_index.cmp(&other.root_index)).filter(|o| o.is_ne());
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            if a.hi <= b.lo {
                return Some(Ordering::Less);
            }
            if b.hi <= a.lo {
                return Some(Ordering::Greater);
            }
            a.refine();
            b.refine();
        }
    }

    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        ((&self.lo + &self.hi) / Rational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    pub fn interval_string(&self) -> String {
        match self.exact() {
            Some(x) => format_rational(x),
            None => format!("({}, {})", format_rational(&self.lo), format_rational(&self.hi)),
        }
    }
}

/// Three points becoming collinear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotionEvent {
    pub triple: [usize; 3],
    pub time: EventTime,
    /// Sign of the orientation determinant just before and after.
    pub before: Sign,
    pub after: Sign,
}

/// Linear function `g0 + g1*t` of one coordinate difference on a segment.
#[derive(Clone, Debug)]
pub(crate) struct Linear {
    pub g0: Rational,
    pub g1: Rational,
}

impl Linear {
    fn mul(&self, other: &Linear) -> Quadratic {
        Quadratic::new(
            &self.g1 * &other.g1,
            &self.g0 * &other.g1 + &self.g1 * &other.g0,
            &self.g0 * &other.g0,
        )
    }

    /// Sign at the root `t`.
    pub fn sign_at(&self, t: &EventTime) -> Sign {
        if self.g1.is_zero() {
            return Sign::of(&self.g0);
        }
        let r = -&self.g0 / &self.g1;
        match t.cmp_rational(&r) {
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::of(&self.g1),
            Ordering::Less => Sign::of(&self.g1).flip(),
        }
    }
}

/// Affine-in-t coordinates of one point on `[s0, s1]`.
fn affine_motion(a: &Point2, b: &Point2, s0: &Rational, s1: &Rational) -> [Linear; 2] {
    let len = s1 - s0;
    [0, 1].map(|c| {
        let g1 = (&b[c] - &a[c]) / &len;
        Linear {
            g0: &a[c] - &g1 * s0,
            g1,
        }
    })
}

pub(crate) fn difference(p: &[Linear; 2], q: &[Linear; 2]) -> [Linear; 2] {
    [0, 1].map(|c| Linear {
        g0: &p[c].g0 - &q[c].g0,
        g1: &p[c].g1 - &q[c].g1,
    })
}

/// Coordinates of the three points of `triple` as linear functions of `t`
/// on segment `segment` of their merged breakpoints.
pub(crate) fn segment_motion(
    traj: &Trajectory,
    triple: [usize; 3],
    segment: usize,
) -> [[Linear; 2]; 3] {
    let bps = traj.breakpoints(&triple);
    let (s0, s1) = (&bps[segment], &bps[segment + 1]);
    triple.map(|p| {
        let path = &traj.paths()[p];
        affine_motion(&path.position_at(s0), &path.position_at(s1), s0, s1)
    })
}

/// Orientation determinant of points `(x, y, 1)` as a quadratic in `t`.
fn orientation(m: &[[Linear; 2]; 3]) -> Quadratic {
    let u = difference(&m[1], &m[0]);
    let v = difference(&m[2], &m[0]);
    let a = u[0].mul(&v[1]);
    let b = u[1].mul(&v[0]);
    Quadratic::new(&a.c2 - &b.c2, &a.c1 - &b.c1, &a.c0 - &b.c0)
}

fn interval_pair(s0: &Rational, s1: &Rational) -> (Rational, Rational) {
    (s0.clone(), s1.clone())
}

/// Simple roots of `f` strictly inside `(s0, s1)`.
fn segment_roots(
    f: &Quadratic,
    triple: [usize; 3],
    segment: usize,
    s0: &Rational,
    s1: &Rational,
) -> Result<Vec<EventTime>, MotionError> {
    let (f0, f1) = (f.eval(s0), f.eval(s1));
    let event = |lo: Rational, hi: Rational, root_index: usize| EventTime {
        segment,
        poly: f.clone(),
        root_index,
        lo,
        hi,
    };
    let endpoint = |t: &Rational| MotionError::EndpointEvent {
        triple,
        time: t.clone(),
    };
    match f.degree() {
        None => {
            return Err(MotionError::IdenticallyZero {
                triple,
                interval: interval_pair(s0, s1),
            })
        }
        Some(0) => return Ok(Vec::new()),
        _ => {}
    }
    if f0.is_zero() {
        return Err(endpoint(s0));
    }
    if f1.is_zero() {
        return Err(endpoint(s1));
    }
    if f.degree() == Some(1) {
        let r = -&f.c0 / &f.c1;
        return Ok(if &r > s0 && &r < s1 {
            vec![event(r.clone(), r, 0)]
        } else {
            Vec::new()
        });
    }
    let two = Rational::from_integer(2.into());
    let disc = &f.c1 * &f.c1 - Rational::from_integer(4.into()) * &f.c2 * &f.c0;
    let vertex = -&f.c1 / (&two * &f.c2);
    if disc.is_negative() {
        return Ok(Vec::new());
    }
    if disc.is_zero() {
        if &vertex >= s0 && &vertex <= s1 {
            return Err(MotionError::DegenerateEvent {
                triple,
                time: vertex,
            });
        }
        return Ok(Vec::new());
    }
    let inside = |r: &Rational| r > s0 && r < s1;
    if let Some(sq) = rational_sqrt(&disc) {
        let (r1, r2) = {
            let a = (-&f.c1 - &sq) / (&two * &f.c2);
            let b = (-&f.c1 + &sq) / (&two * &f.c2);
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        };
        let mut out = Vec::new();
        for (idx, r) in [(0, r1), (1, r2)] {
            if inside(&r) {
                out.push(event(r.clone(), r, idx));
            }
        }
        return Ok(out);
    }
    // Irrational roots straddle the vertex; f is monotone on either side.
    let mut out = Vec::new();
    let fv = f.eval(&vertex);
    if &vertex > s0 {
        let hi = if &vertex < s1 { vertex.clone() } else { s1.clone() };
        let fh = if &vertex < s1 { fv.clone() } else { f1.clone() };
        if Sign::of(&f0) != Sign::of(&fh) {
            out.push(event(s0.clone(), hi, 0));
        }
    }
    if &vertex < s1 {
        let lo = if &vertex > s0 { vertex.clone() } else { s0.clone() };
        let fl = if &vertex > s0 { fv } else { f0 };
        if Sign::of(&fl) != Sign::of(&f1) {
            out.push(event(lo, s1.clone(), 1));
        }
    }
    Ok(out)
}

fn triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push([i, j, k]);
            }
        }
    }
    out
}

pub(crate) fn check_generic_at(traj: &Trajectory, t: &Rational) -> Result<(), MotionError> {
    match traj.configuration_at(t).degeneracy() {
        Some(indices) => Err(MotionError::NotGeneric {
            indices,
            time: t.clone(),
        }),
        None => Ok(()),
    }
}

fn triple_events(traj: &Trajectory, triple: [usize; 3]) -> Result<Vec<MotionEvent>, MotionError> {
    let bps = traj.breakpoints(&triple);
    let mut out = Vec::new();
    for seg in 0..bps.len() - 1 {
        let f = orientation(&segment_motion(traj, triple, seg));
        for time in segment_roots(&f, triple, seg, &bps[seg], &bps[seg + 1])? {
            let r = time.exact().cloned();
            let before = match r {
                Some(r) => Sign::of(&f.derivative_at(&r)).flip(),
                None => Sign::of(&f.eval(time.lo())),
            };
            out.push(MotionEvent {
                triple,
                time,
                before,
                after: before.flip(),
            });
        }
    }
    Ok(out)
}

/// All collinearity events of a trajectory, grouped by triple.
pub fn detect_events(traj: &Trajectory) -> Result<Vec<MotionEvent>, MotionError> {
    check_generic_at(traj, &Rational::zero())?;
    check_generic_at(traj, &Rational::one())?;
    let per_triple: Vec<Result<Vec<MotionEvent>, MotionError>> = triples(traj.len())
        .into_par_iter()
        .map(|t| triple_events(traj, t))
        .collect();
    let mut out = Vec::new();
    for r in per_triple {
        out.extend(r?);
    }
    Ok(out)
}

/// Sorts events by time; two events at the same instant are an error.
pub fn order_events(events: Vec<MotionEvent>) -> Result<Vec<MotionEvent>, MotionError> {
    let mut sorted: Vec<MotionEvent> = Vec::with_capacity(events.len());
    for e in events {
        // Binary search for the insertion point.
        let (mut lo, mut hi) = (0, sorted.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match sorted[mid].time.compare(&e.time) {
                Some(Ordering::Less) => lo = mid + 1,
                Some(_) => hi = mid,
                None => {
                    return Err(MotionError::SimultaneousEvents {
                        first: sorted[mid].triple,
                        second: e.triple,
                        time: e.time.interval_string(),
                    })
                }
            }
        }
        // Neighbours at the insertion point are the only candidates for ties.
        for idx in [lo.wrapping_sub(1), lo] {
            if let Some(other) = sorted.get(idx) {
                if other.time.compare(&e.time).is_none() {
                    return Err(MotionError::SimultaneousEvents {
                        first: other.triple,
                        second: e.triple,
                        time: e.time.interval_string(),
                    });
                }
            }
        }
        sorted.insert(lo, e);
    }
    Ok(sorted)
}

/// Rational times `0 = s_0 < s_1 < ... < s_m = 1` with event `q` strictly
/// between `s_q` and `s_{q+1}`. Refines the events' isolating intervals.
pub fn sample_times(events: &mut [MotionEvent]) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    for q in 1..events.len() {
        let (left, right) = events.split_at_mut(q);
        let (a, b) = (&mut left[q - 1].time, &mut right[0].time);
        while a.hi() >= b.lo() {
            a.refine();
            b.refine();
        }
        out.push(simplest_between(a.hi(), b.lo()));
    }
    out.push(Rational::one());
    out
}
