use rayon::prelude::*;

use super::labeling::{initial_labeling, initial_values, propagate, script_sites, Labeling};
use super::EngineError;
use crate::algebra::{indexed_names, serialize, AlgebraError, Backend, Rational};
use crate::geometry::{DualArrangement, FlipSite};
use crate::motion::tracked_arrangement;
use crate::random::{random_generic_motion, rng, sub_seed};

/// A label whose denominator does not cancel to a monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditFailure {
    pub trial: usize,
    pub face: String,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub n: usize,
    pub trials: usize,
    pub script_length: usize,
    pub seed: u64,
    pub flips: usize,
    pub labels_checked: usize,
    pub laurent_labels: usize,
    pub failures: Vec<AuditFailure>,
}

impl AuditReport {
    pub fn all_laurent(&self) -> bool {
        self.laurent_labels == self.labels_checked
    }
}

struct TrialOutcome {
    flips: usize,
    checked: usize,
    failures: Vec<AuditFailure>,
}

fn audit_trial(n: usize, script_length: usize, seed: u64, trial: usize) -> Result<TrialOutcome, EngineError> {
    let mut r = rng(sub_seed(seed, trial as u64));
    let (traj, script) = random_generic_motion(&mut r, n, 3, 20, 1000)
        .ok_or_else(|| EngineError::Internal("no generic random motion found".into()))?;
    let script = script.truncated(script_length);
    let a0 = tracked_arrangement(&traj, &Rational::from_integer(0.into()))?;
    let l0 = initial_labeling(&a0, Backend::Classical);
    let (l, _) = propagate(&l0, &script_sites(&script), &a0)?;
    let names = indexed_names("g", l.len());
    let mut failures = Vec::new();
    for (face, v) in l.labels() {
        let x = v.as_classical().expect("classical labels");
        let laurent = x.den().as_monomial().is_some()
            || x.num().exact_divide(x.den())?.is_some();
        if !laurent {
            failures.push(AuditFailure {
                trial,
                face: face.to_string(),
                label: serialize(v, &names),
            });
        }
    }
    Ok(TrialOutcome {
        flips: script.len(),
        checked: l.len(),
        failures,
    })
}

/// Propagates random geometric flip scripts of at most `script_length`
/// flips and checks that every label is a Laurent polynomial.
///
/// Trials run in parallel; trial `t` uses its own stream derived from
/// `seed`, so the report does not depend on scheduling.
pub fn laurent_audit(n: usize, trials: usize, script_length: usize, seed: u64) -> Result<AuditReport, EngineError> {
    if n < 3 {
        return Err(EngineError::InvalidArgument(
            "the audit needs at least three points".into(),
        ));
    }
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|t| audit_trial(n, script_length, seed, t))
        .collect::<Result<_, _>>()?;
    let labels_checked: usize = outcomes.iter().map(|o| o.checked).sum();
    let failures: Vec<AuditFailure> = outcomes.iter().flat_map(|o| o.failures.clone()).collect();
    Ok(AuditReport {
        n,
        trials,
        script_length,
        seed,
        flips: outcomes.iter().map(|o| o.flips).sum(),
        labels_checked,
        laurent_labels: labels_checked - failures.len(),
        failures,
    })
}

/// Outcome of comparing symbolic propagation, evaluated at a point, with
/// numeric propagation from the same point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvaluationCheck {
    Agree,
    /// A division by zero occurred (classical only).
    Skipped,
    Disagree { face: String },
}

pub fn evaluation_check(
    a0: &DualArrangement,
    sites: &[FlipSite],
    backend: Backend,
    point: &[Rational],
) -> Result<EvaluationCheck, EngineError> {
    let symbolic = propagate(&initial_labeling(a0, backend), sites, a0)?.0;
    let numeric = match propagate(&initial_values(a0, backend, point), sites, a0) {
        Ok((l, _)) => l,
        Err(EngineError::Algebra(AlgebraError::DivisionByZero)) => return Ok(EvaluationCheck::Skipped),
        Err(e) => return Err(e),
    };
    let evaluated: Labeling<Rational> = match symbolic.try_map(|v| v.evaluate(point)) {
        Ok(l) => l,
        Err(AlgebraError::DivisionByZero) => return Ok(EvaluationCheck::Skipped),
        Err(e) => return Err(e.into()),
    };
    for ((face, sym), num) in evaluated.labels().iter().zip(numeric.labels().values()) {
        if sym != num.value() {
            return Ok(EvaluationCheck::Disagree {
                face: face.to_string(),
            });
        }
    }
    Ok(EvaluationCheck::Agree)
}

