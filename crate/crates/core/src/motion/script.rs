use serde::{Deserialize, Serialize};

use super::events::{detect_events, difference, order_events, sample_times, segment_motion};
use super::trajectory::Trajectory;
use super::{MotionError, MotionEvent};
use crate::algebra::{format_rational, Rational};
use crate::geometry::{cross, dot, DualArrangement, FlipSite, Sign, SignVector};

/// One flip of a compiled motion, in the point-indexed frame.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptEntry {
    pub triple: [usize; 3],
    /// The collapsing triangle just before the event.
    pub face: SignVector,
    #[serde(with = "rational_string")]
    pub t_minus: Rational,
    #[serde(with = "rational_string")]
    pub t_plus: Rational,
}

impl ScriptEntry {
    pub fn site(&self) -> FlipSite {
        FlipSite::new(self.triple, self.face.clone())
    }
}

/// Flips performed by a motion, in time order.
///
/// Sign vectors are over the lines `(x, y, 1)` dual to the moving points,
/// indexed by point; this frame varies continuously along the motion.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipScript {
    pub n: usize,
    pub entries: Vec<ScriptEntry>,
}

impl FlipScript {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn truncated(mut self, len: usize) -> Self {
        self.entries.truncate(len);
        self
    }
}

mod rational_string {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        crate::algebra::parse_rational(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("invalid rational `{s}`")))
    }
}

/// Arrangement of the point-indexed dual lines at time `t`.
pub fn tracked_arrangement(traj: &Trajectory, t: &Rational) -> Result<DualArrangement, MotionError> {
    DualArrangement::from_lines(&traj.lines_at(t)).map_err(|e| match e {
        crate::geometry::GeometryError::NotGeneric { indices } => MotionError::NotGeneric {
            indices,
            time: t.clone(),
        },
        other => MotionError::InvalidTrajectory(other.to_string()),
    })
}

/// The triangle of the event's lines just before the event, read off from
/// the position of the middle point on the collinearity line.
fn collapsing_face(
    traj: &Trajectory,
    event: &MotionEvent,
    t_minus: &Rational,
) -> Result<SignVector, MotionError> {
    let [i, j, k] = event.triple;
    let m = segment_motion(traj, event.triple, event.time.segment);
    // At the event P_k = a*P_i + b*P_j with a + b = 1.
    let dij = difference(&m[0], &m[1]);
    let dkj = difference(&m[2], &m[1]);
    let dik = difference(&m[0], &m[2]);
    let axis = (0..2)
        .find(|&c| dij[c].sign_at(&event.time) != Sign::Zero)
        .ok_or_else(|| MotionError::NotGeneric {
            indices: vec![i, j],
            time: event.time.lo().clone(),
        })?;
    let den = dij[axis].sign_at(&event.time);
    let sa = dkj[axis].sign_at(&event.time).times(den);
    let sb = dik[axis].sign_at(&event.time).times(den);
    if sa == Sign::Zero || sb == Sign::Zero {
        let other = if sa == Sign::Zero { j } else { i };
        return Err(MotionError::NotGeneric {
            indices: vec![other, k],
            time: event.time.lo().clone(),
        });
    }
    let d = event.before;
    let lines = traj.lines_at(t_minus);
    let v = cross(lines[i].coeffs(), lines[j].coeffs());
    let signs = (0..traj.len())
        .map(|c| {
            if c == i {
                sa.flip().times(d)
            } else if c == j {
                sb.flip().times(d)
            } else if c == k {
                d
            } else {
                Sign::of(&dot(lines[c].coeffs(), &v))
            }
        })
        .collect();
    Ok(SignVector::new(signs))
}

/// Compiles a motion into its sequence of triangle flips.
///
/// Each flip is checked against the arrangements rebuilt at rational times
/// on either side of its event: the triangle must be a face at `t_minus`,
/// and flipping it must give exactly the arrangement at `t_plus`.
pub fn compile_flip_script(traj: &Trajectory) -> Result<FlipScript, MotionError> {
    let mut events = order_events(detect_events(traj)?)?;
    let samples = sample_times(&mut events);
    let mut current = tracked_arrangement(traj, &samples[0])?;
    let mut entries = Vec::with_capacity(events.len());
    for (q, event) in events.iter().enumerate() {
        let (t_minus, t_plus) = (&samples[q], &samples[q + 1]);
        let next = tracked_arrangement(traj, t_plus)?;
        let face = collapsing_face(traj, event, t_minus)?;
        let obstructed = || MotionError::ObstructedTriangle {
            triple: event.triple,
            interval: (t_minus.clone(), t_plus.clone()),
        };
        let site = current.site(event.triple, &face).ok_or_else(obstructed)?;
        let flipped = current.apply_flip(&site).map_err(|_| obstructed())?;
        if flipped != next {
            return Err(obstructed());
        }
        entries.push(ScriptEntry {
            triple: event.triple,
            face,
            t_minus: t_minus.clone(),
            t_plus: t_plus.clone(),
        });
        current = next;
    }
    Ok(FlipScript {
        n: traj.len(),
        entries,
    })
}
