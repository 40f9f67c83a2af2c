use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use super::labeling::{generator_count, initial_labeling, propagate, script_sites, Labeling};
use super::EngineError;
use crate::algebra::{indexed_names, parse, serialize, Backend, Rational, Semifield, SemifieldElement};
use crate::geometry::{build_arrangement, LineFrame, Sign, SignVector};
use crate::motion::{compile_flip_script, tracked_arrangement, FlipScript, Trajectory};

/// The label transformation of a closed motion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantResult {
    pub backend: Backend,
    /// `permutation[j] = i` when point `j` ends where point `i` started.
    pub permutation: Vec<usize>,
    /// Final labels keyed by the faces of the initial canonical arrangement.
    pub labels: Labeling,
    pub script_length: usize,
}

/// Everything computed for one closed motion.
#[derive(Clone, Debug)]
pub struct InvariantRun {
    pub result: InvariantResult,
    pub script: FlipScript,
}

/// Generator names `g0, g1, ...` used in results.
pub fn generator_names(n: usize) -> Vec<String> {
    indexed_names("g", generator_count(n))
}

fn closure_permutation(traj: &Trajectory) -> Result<Vec<usize>, EngineError> {
    let start = traj.configuration_at(&Rational::zero());
    let end = traj.configuration_at(&Rational::one());
    let keys: Vec<_> = start.points().iter().map(|p| p.key()).collect();
    end.points()
        .iter()
        .map(|p| {
            let k = p.key();
            keys.iter().position(|s| *s == k).ok_or(EngineError::NotClosed)
        })
        .collect()
}

/// Runs a closed motion and re-expresses the final labels over the initial
/// arrangement.
///
/// `labels` overrides the default generator labeling; its keys must be the
/// faces of the initial canonical arrangement.
pub fn compute_invariant(
    traj: &Trajectory,
    backend: Backend,
    labels: Option<Labeling>,
) -> Result<InvariantRun, EngineError> {
    let permutation = closure_permutation(traj)?;
    let script = compile_flip_script(traj)?;
    let zero = Rational::zero();
    let canonical = build_arrangement(&traj.configuration_at(&zero))?;
    let l0 = match labels {
        None => initial_labeling(&canonical, backend),
        Some(l) => {
            if !l.labels().keys().eq(canonical.faces().iter()) {
                return Err(EngineError::InvalidLabels(
                    "label keys differ from the faces of the initial arrangement".into(),
                ));
            }
            if l.labels().values().any(|v| v.backend() != backend) {
                return Err(EngineError::InvalidLabels("labels use another backend".into()));
            }
            l
        }
    };
    let frame = LineFrame::new(&traj.lines_at(&zero));
    let tracked0 = tracked_arrangement(traj, &zero)?;
    let l0_tracked = l0.rekeyed(|k| frame.from_canonical(k));
    debug_assert!(l0_tracked.labels().keys().eq(tracked0.faces().iter()));
    let (l1, _) = propagate(&l0_tracked, &script_sites(&script), &tracked0)?;

    // Line j at t = 1 is line permutation[j] at t = 0, with the same (x, y, 1).
    let n = permutation.len();
    let mut source = vec![0; n];
    for (j, &i) in permutation.iter().enumerate() {
        source[i] = j;
    }
    let plus = vec![Sign::Plus; n];
    let final_labels = l1.rekeyed(|k| frame.to_canonical(&k.permuted(&source, &plus)));
    if !final_labels.labels().keys().eq(canonical.faces().iter()) {
        return Err(EngineError::Internal(
            "final faces do not match the initial arrangement".into(),
        ));
    }
    Ok(InvariantRun {
        result: InvariantResult {
            backend,
            permutation,
            labels: final_labels,
            script_length: script.len(),
        },
        script,
    })
}

impl InvariantResult {
    pub fn n(&self) -> usize {
        self.permutation.len()
    }

    pub fn to_json(&self) -> Value {
        let names = generator_names(self.n());
        let labels: Map<String, Value> = self
            .labels
            .labels()
            .iter()
            .map(|(k, v)| (k.to_string(), Value::String(serialize(v, &names))))
            .collect();
        json!({
            "backend": self.backend.name(),
            "labels": labels,
            "permutation": self.permutation,
            "script_length": self.script_length,
        })
    }

    /// Pretty JSON with a trailing newline; byte-identical for equal results.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("plain JSON");
        s.push('\n');
        s
    }

    pub fn from_json(v: &Value) -> Result<Self, EngineError> {
        let bad = |m: &str| EngineError::InvalidResult(m.to_string());
        let obj = v.as_object().ok_or_else(|| bad("result must be an object"))?;
        let backend: Backend = obj
            .get("backend")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing backend"))?
            .parse()
            .map_err(|e: String| bad(&e))?;
        let permutation: Vec<usize> = obj
            .get("permutation")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing permutation"))?
            .iter()
            .map(|x| x.as_u64().map(|u| u as usize).ok_or_else(|| bad("bad permutation entry")))
            .collect::<Result<_, _>>()?;
        let n = permutation.len();
        let mut seen = vec![false; n];
        for &p in &permutation {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(bad("permutation is not a bijection"));
            }
        }
        let script_length = obj
            .get("script_length")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing script_length"))? as usize;
        let names = generator_names(n);
        let mut labels = BTreeMap::new();
        for (k, text) in obj
            .get("labels")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing labels"))?
        {
            let key: SignVector = k.parse().map_err(|e: String| bad(&e))?;
            if key.len() != n || !key.zeros().is_empty() {
                return Err(bad(&format!("`{k}` is not a face of {n} lines")));
            }
            let text = text.as_str().ok_or_else(|| bad("labels must be strings"))?;
            let value = parse(text, backend, &names)
                .map_err(|e| bad(&format!("label of {k}: {e}")))?;
            labels.insert(key, value);
        }
        if labels.len() != generator_count(n) {
            return Err(bad("wrong number of faces"));
        }
        Ok(InvariantResult {
            backend,
            permutation,
            labels: Labeling::new(labels),
            script_length,
        })
    }
}

/// Why two results differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Difference {
    Permutation,
    Face {
        face: SignVector,
        left: String,
        right: String,
    },
}

/// First difference between two results of the same shape, if any.
pub fn first_difference(
    r1: &InvariantResult,
    r2: &InvariantResult,
) -> Result<Option<Difference>, EngineError> {
    if r1.n() != r2.n() {
        return Err(EngineError::ShapeMismatch(format!(
            "{} points vs {} points",
            r1.n(),
            r2.n()
        )));
    }
    if r1.backend != r2.backend {
        return Err(EngineError::ShapeMismatch(format!(
            "{} vs {} backend",
            r1.backend, r2.backend
        )));
    }
    if !r1.labels.labels().keys().eq(r2.labels.labels().keys()) {
        return Err(EngineError::ShapeMismatch("different face sets".into()));
    }
    if r1.permutation != r2.permutation {
        return Ok(Some(Difference::Permutation));
    }
    let names = generator_names(r1.n());
    for ((face, a), b) in r1.labels.labels().iter().zip(r2.labels.labels().values()) {
        if !a.sf_equals(b)? {
            return Ok(Some(Difference::Face {
                face: face.clone(),
                left: serialize(a, &names),
                right: serialize(b, &names),
            }));
        }
    }
    Ok(None)
}

pub fn compare_invariants(r1: &InvariantResult, r2: &InvariantResult) -> Result<bool, EngineError> {
    Ok(first_difference(r1, r2)?.is_none())
}

/// True when every face carries its own initial generator.
pub fn is_identity(r: &InvariantResult) -> Result<bool, EngineError> {
    let g = r.labels.len();
    for (idx, v) in r.labels.labels().values().enumerate() {
        if !v.sf_equals(&SemifieldElement::generator(r.backend, g, idx))? {
            return Ok(false);
        }
    }
    Ok(r.permutation.iter().enumerate().all(|(j, &i)| i == j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motion::{Point2, PointPath};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn pt(x: i64, y: i64) -> Point2 {
        [q(x, 1), q(y, 1)]
    }

    fn one_event() -> Trajectory {
        Trajectory::new(vec![
            PointPath::constant(pt(0, 0)),
            PointPath::constant(pt(4, 0)),
            PointPath::constant(pt(0, 4)),
            PointPath::new(vec![q(0, 1), q(1, 1)], vec![pt(1, 1), pt(3, 3)]).unwrap(),
        ])
    }

    #[test]
    fn constant_motion_is_identity() {
        let t = Trajectory::constant(&[pt(0, 0), pt(4, 0), pt(0, 4), pt(1, 1)]);
        for backend in [Backend::Classical, Backend::Tropical] {
            let r = compute_invariant(&t, backend, None).unwrap().result;
            assert!(is_identity(&r).unwrap());
            assert_eq!(r.script_length, 0);
        }
    }

    #[test]
    fn mirrored_motion_is_identity() {
        let t = one_event();
        let l = t.concat(&t.reversed()).unwrap();
        let r = compute_invariant(&l, Backend::Classical, None).unwrap().result;
        assert_eq!(r.script_length, 2);
        assert!(is_identity(&r).unwrap());
    }

    #[test]
    fn open_motion_is_rejected() {
        assert!(matches!(
            compute_invariant(&one_event(), Backend::Classical, None),
            Err(EngineError::NotClosed)
        ));
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let t = one_event();
        let l = t.concat(&t.reversed()).unwrap();
        for backend in [Backend::Classical, Backend::Tropical] {
            let r = compute_invariant(&l, backend, None).unwrap().result;
            let text = r.to_json_string();
            let back = InvariantResult::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back.to_json_string(), text);
            assert!(compare_invariants(&r, &back).unwrap());
        }
    }
}
