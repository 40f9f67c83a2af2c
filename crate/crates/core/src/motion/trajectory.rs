use num_traits::{One, Zero};

use super::MotionError;
use crate::algebra::Rational;
use crate::geometry::{Configuration, ProjLine, ProjPoint};

/// Affine point `(x, y)` of the chart `z = 1`.
pub type Point2 = [Rational; 2];

fn lerp(a: &Point2, b: &Point2, s: &Rational) -> Point2 {
    [
        &a[0] + (&b[0] - &a[0]) * s,
        &a[1] + (&b[1] - &a[1]) * s,
    ]
}

/// Piecewise-linear path of one point over `t` in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointPath {
    times: Vec<Rational>,
    positions: Vec<Point2>,
}

impl PointPath {
    pub fn new(times: Vec<Rational>, positions: Vec<Point2>) -> Result<Self, MotionError> {
        if times.len() < 2 || times.len() != positions.len() {
            return Err(MotionError::InvalidTrajectory(format!(
                "need matching times and positions with at least two entries, got {} and {}",
                times.len(),
                positions.len()
            )));
        }
        if !times[0].is_zero() || !times[times.len() - 1].is_one() {
            return Err(MotionError::InvalidTrajectory(
                "breakpoints must start at 0 and end at 1".into(),
            ));
        }
        if times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(MotionError::InvalidTrajectory(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        Ok(PointPath { times, positions })
    }

    pub fn constant(p: Point2) -> Self {
        PointPath {
            times: vec![Rational::zero(), Rational::one()],
            positions: vec![p.clone(), p],
        }
    }

    pub fn times(&self) -> &[Rational] {
        &self.times
    }

    pub fn positions(&self) -> &[Point2] {
        &self.positions
    }

    pub fn start(&self) -> &Point2 {
        &self.positions[0]
    }

    pub fn end(&self) -> &Point2 {
        &self.positions[self.positions.len() - 1]
    }

    /// Position at `t`, clamped to `[0, 1]`.
    pub fn position_at(&self, t: &Rational) -> Point2 {
        let seg = match self.times.iter().position(|s| s > t) {
            None => return self.end().clone(),
            Some(0) => return self.start().clone(),
            Some(i) => i - 1,
        };
        let (t0, t1) = (&self.times[seg], &self.times[seg + 1]);
        let s = (t - t0) / (t1 - t0);
        lerp(&self.positions[seg], &self.positions[seg + 1], &s)
    }

    /// The same path run backwards.
    pub fn reversed(&self) -> Self {
        PointPath {
            times: self.times.iter().rev().map(|t| Rational::one() - t).collect(),
            positions: self.positions.iter().rev().cloned().collect(),
        }
    }

    /// Runs `self` on `[0, 1/2]` and `next` on `[1/2, 1]`.
    pub fn concat(&self, next: &PointPath) -> Result<Self, MotionError> {
        if self.end() != next.start() {
            return Err(MotionError::InvalidTrajectory(
                "concatenated paths do not meet".into(),
            ));
        }
        let half = Rational::new(1.into(), 2.into());
        let mut times: Vec<Rational> = self.times.iter().map(|t| t * &half).collect();
        let mut positions = self.positions.clone();
        times.extend(next.times.iter().skip(1).map(|t| &half + t * &half));
        positions.extend(next.positions.iter().skip(1).cloned());
        PointPath::new(times, positions)
    }

    /// Composes with a piecewise-linear increasing bijection of `[0, 1]`
    /// given by its breakpoints `(old time, new time)`.
    pub fn reparameterized(&self, knots: &[(Rational, Rational)]) -> Result<Self, MotionError> {
        let phi = PointPath::new(
            knots.iter().map(|(old, _)| old.clone()).collect(),
            knots
                .iter()
                .map(|(_, new)| [new.clone(), Rational::zero()])
                .collect(),
        )?;
        if knots.windows(2).any(|w| w[0].1 >= w[1].1)
            || !knots[0].1.is_zero()
            || !knots[knots.len() - 1].1.is_one()
        {
            return Err(MotionError::InvalidTrajectory(
                "reparameterization must be an increasing bijection of [0, 1]".into(),
            ));
        }
        let inverse = PointPath::new(
            knots.iter().map(|(_, new)| new.clone()).collect(),
            knots
                .iter()
                .map(|(old, _)| [old.clone(), Rational::zero()])
                .collect(),
        )?;
        let mut times: Vec<Rational> = self
            .times
            .iter()
            .map(|t| phi.position_at(t)[0].clone())
            .chain(knots.iter().map(|(_, new)| new.clone()))
            .collect();
        times.sort();
        times.dedup();
        let positions = times
            .iter()
            .map(|s| self.position_at(&inverse.position_at(s)[0]))
            .collect();
        PointPath::new(times, positions)
    }
}

/// Motion of `n` points in the affine chart over `t` in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    paths: Vec<PointPath>,
}

impl Trajectory {
    pub fn new(paths: Vec<PointPath>) -> Self {
        Trajectory { paths }
    }

    pub fn constant(points: &[Point2]) -> Self {
        Trajectory {
            paths: points.iter().cloned().map(PointPath::constant).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn paths(&self) -> &[PointPath] {
        &self.paths
    }

    pub fn position_at(&self, t: &Rational) -> Vec<Point2> {
        self.paths.iter().map(|p| p.position_at(t)).collect()
    }

    pub fn configuration_at(&self, t: &Rational) -> Configuration {
        Configuration::new(
            self.position_at(t)
                .into_iter()
                .map(|[x, y]| ProjPoint::affine(x, y))
                .collect(),
        )
    }

    /// Dual lines `(x, y, 1)` of the points at `t`, indexed by point.
    pub fn lines_at(&self, t: &Rational) -> Vec<ProjLine> {
        self.position_at(t)
            .into_iter()
            .map(|[x, y]| ProjLine::new([x, y, Rational::one()]).expect("z = 1"))
            .collect()
    }

    /// Union of the breakpoints of the listed points, sorted.
    pub fn breakpoints(&self, points: &[usize]) -> Vec<Rational> {
        let mut ts: Vec<Rational> = points
            .iter()
            .flat_map(|&p| self.paths[p].times.iter().cloned())
            .collect();
        ts.sort();
        ts.dedup();
        ts
    }

    pub fn reversed(&self) -> Self {
        Trajectory {
            paths: self.paths.iter().map(PointPath::reversed).collect(),
        }
    }

    /// Runs `self` on `[0, 1/2]` and `next` on `[1/2, 1]`.
    pub fn concat(&self, next: &Trajectory) -> Result<Self, MotionError> {
        if self.len() != next.len() {
            return Err(MotionError::InvalidTrajectory(
                "concatenated trajectories move different numbers of points".into(),
            ));
        }
        Ok(Trajectory {
            paths: self
                .paths
                .iter()
                .zip(&next.paths)
                .map(|(a, b)| a.concat(b))
                .collect::<Result<_, _>>()?,
        })
    }

    pub fn reparameterized(&self, knots: &[(Rational, Rational)]) -> Result<Self, MotionError> {
        Ok(Trajectory {
            paths: self
                .paths
                .iter()
                .map(|p| p.reparameterized(knots))
                .collect::<Result<_, _>>()?,
        })
    }
}
