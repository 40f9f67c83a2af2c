use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use super::trajectory::{Point2, PointPath, Trajectory};
use super::MotionError;
use crate::algebra::Rational;
use crate::geometry::{Configuration, ProjPoint};

/// Artin generator `s_index` (1-based), or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BraidLetter {
    pub index: usize,
    pub inverse: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BraidWord(pub Vec<BraidLetter>);

impl FromStr for BraidWord {
    type Err = MotionError;

    /// Whitespace-separated letters `s3` or `s3^-1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |tok: &str| MotionError::InvalidWord(format!("cannot read letter `{tok}`"));
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let rest = tok.strip_prefix('s').ok_or_else(|| bad(tok))?;
            let (num, inverse) = match rest.strip_suffix("^-1") {
                Some(num) => (num, true),
                None => (rest, false),
            };
            let index: usize = num.parse().map_err(|_| bad(tok))?;
            if index == 0 {
                return Err(bad(tok));
            }
            letters.push(BraidLetter { index, inverse });
        }
        Ok(BraidWord(letters))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| format!("s{}{}", l.index, if l.inverse { "^-1" } else { "" }))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Half-angle parameters `u_k ~ tan(k*pi/(2K))` for `k = 0..K`, with
/// `u_k * u_{K-k} = 1` so that the arc is symmetric; `None` stands for the
/// half turn.
fn half_angles(segments: usize) -> Vec<Option<Rational>> {
    let mut u: Vec<Option<Rational>> = vec![None; segments + 1];
    for k in 0..=segments {
        if 2 * k < segments {
            let x = (k as f64 * std::f64::consts::PI / (2.0 * segments as f64)).tan();
            let milli = (x * 1000.0).round() as i64;
            u[k] = Some(Rational::new(milli.into(), 1000.into()));
        } else if 2 * k == segments {
            u[k] = Some(Rational::one());
        }
    }
    for k in 0..segments {
        if 2 * k > segments {
            let partner = u[segments - k].clone().expect("smaller index already set");
            u[k] = Some(partner.recip());
        }
    }
    u
}

/// Rotates `d` by the angle with half-angle tangent `u` (a half turn for `None`).
fn rotate(d: &Point2, u: &Option<Rational>) -> Point2 {
    match u {
        None => [-d[0].clone(), -d[1].clone()],
        Some(u) => {
            let one = Rational::one();
            let den = &one + u * u;
            let c = (&one - u * u) / &den;
            let s = (Rational::from_integer(2.into()) * u) / &den;
            [&c * &d[0] - &s * &d[1], &s * &d[0] + &c * &d[1]]
        }
    }
}

/// Realizes a braid word as a motion of the `base` points.
///
/// Letter `s_i` swaps the `i`-th and `(i+1)`-th points from the left along a
/// counterclockwise half turn about their midpoint (clockwise for the
/// inverse), polygonized with `segments` chords whose vertices lie exactly
/// on the circle. Letter `l` of `L` runs during `[l/L, (l+1)/L]`.
pub fn braid_word_to_trajectory(
    word: &BraidWord,
    base: &[Point2],
    segments: usize,
) -> Result<Trajectory, MotionError> {
    let n = base.len();
    if segments < 2 {
        return Err(MotionError::InvalidWord(
            "arcs need at least two segments".into(),
        ));
    }
    let generic = |pts: &[Point2], t: &Rational| -> Result<(), MotionError> {
        let c = Configuration::new(
            pts.iter()
                .map(|p| ProjPoint::affine(p[0].clone(), p[1].clone()))
                .collect(),
        );
        match c.degeneracy() {
            Some(indices) => Err(MotionError::NotGeneric {
                indices,
                time: t.clone(),
            }),
            None => Ok(()),
        }
    };
    generic(base, &Rational::zero())?;
    for i in 0..n {
        for j in i + 1..n {
            if base[i][0] == base[j][0] {
                return Err(MotionError::InvalidWord(format!(
                    "points {i} and {j} share an x-coordinate"
                )));
            }
        }
    }
    if let Some(l) = word.0.iter().find(|l| l.index >= n) {
        return Err(MotionError::InvalidWord(format!(
            "generator s{} needs at least {} points",
            l.index,
            l.index + 1
        )));
    }
    if word.0.is_empty() {
        return Ok(Trajectory::constant(base));
    }
    let letters = word.0.len();
    let total = Rational::from_integer(((letters * segments) as i64).into());
    let u = half_angles(segments);
    let mut cur: Vec<Point2> = base.to_vec();
    let mut times: Vec<Vec<Rational>> = vec![vec![Rational::zero()]; n];
    let mut positions: Vec<Vec<Point2>> = base.iter().map(|p| vec![p.clone()]).collect();
    let half = Rational::new(1.into(), 2.into());
    for (l, letter) in word.0.iter().enumerate() {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| cur[a][0].cmp(&cur[b][0]));
        let (p, q) = (order[letter.index - 1], order[letter.index]);
        let mid = [
            (&cur[p][0] + &cur[q][0]) * &half,
            (&cur[p][1] + &cur[q][1]) * &half,
        ];
        let d = [&cur[p][0] - &mid[0], &cur[p][1] - &mid[1]];
        for k in 1..=segments {
            let t = Rational::from_integer(((l * segments + k) as i64).into()) / &total;
            let uk = u[k].clone().map(|x| if letter.inverse { -x } else { x });
            let r = rotate(&d, &uk);
            let pp = [&mid[0] + &r[0], &mid[1] + &r[1]];
            let qq = [&mid[0] - &r[0], &mid[1] - &r[1]];
            times[p].push(t.clone());
            positions[p].push(pp.clone());
            times[q].push(t);
            positions[q].push(qq.clone());
            if k == segments {
                cur[p] = pp;
                cur[q] = qq;
            }
        }
        let end = Rational::from_integer(((l + 1) as i64).into())
            / Rational::from_integer((letters as i64).into());
        generic(&cur, &end)?;
    }
    let paths = times
        .into_iter()
        .zip(positions)
        .map(|(mut ts, mut ps)| {
            if ts.last().is_some_and(|t| !t.is_one()) {
                ts.push(Rational::one());
                ps.push(ps.last().expect("nonempty").clone());
            }
            PointPath::new(ts, ps)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Trajectory::new(paths))
}
