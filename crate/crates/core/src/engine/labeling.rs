use std::collections::BTreeMap;

use super::EngineError;
use crate::algebra::{Backend, NumericValue, Rational, Semifield, SemifieldElement};
use crate::geometry::{DualArrangement, FlipSite, SignVector};
use crate::motion::FlipScript;

/// Labels on the faces of an arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling<T = SemifieldElement> {
    labels: BTreeMap<SignVector, T>,
}

/// Number of generators for `n` lines: one per face.
pub fn generator_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2 + 1
}

/// The Desargues rule `(e0*w0 + e1*w1 + e2*w2) / x` in any semifield.
pub fn desargues<T: Semifield>(x: &T, pairs: [(&T, &T); 3]) -> Result<T, EngineError> {
    let [p0, p1, p2] = pairs.map(|(e, w)| e.otimes(w));
    Ok(p0?.oplus(&p1?)?.oplus(&p2?)?.oslash(x)?)
}

impl<T> Labeling<T> {
    pub fn new(labels: BTreeMap<SignVector, T>) -> Self {
        Labeling { labels }
    }

    pub fn labels(&self) -> &BTreeMap<SignVector, T> {
        &self.labels
    }

    pub fn into_labels(self) -> BTreeMap<SignVector, T> {
        self.labels
    }

    pub fn get(&self, face: &SignVector) -> Option<&T> {
        self.labels.get(face)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Same labels under new keys. `rekey` must be injective.
    pub fn rekeyed(self, rekey: impl Fn(&SignVector) -> SignVector) -> Self {
        Labeling {
            labels: self.labels.into_iter().map(|(k, v)| (rekey(&k), v)).collect(),
        }
    }

    pub fn try_map<U, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<Labeling<U>, E> {
        Ok(Labeling {
            labels: self
                .labels
                .iter()
                .map(|(k, v)| Ok((k.clone(), f(v)?)))
                .collect::<Result<_, E>>()?,
        })
    }
}

impl<T: Semifield> Labeling<T> {
    fn role(&self, face: &SignVector) -> Result<&T, EngineError> {
        self.labels.get(face).ok_or_else(|| EngineError::MissingRole {
            face: face.to_string(),
        })
    }

    /// Key-set equality plus `sf_equals` on every face.
    pub fn sf_equals(&self, other: &Labeling<T>) -> Result<bool, EngineError> {
        if self.labels.len() != other.labels.len() {
            return Ok(false);
        }
        for ((ka, va), (kb, vb)) in self.labels.iter().zip(&other.labels) {
            if ka != kb || !va.sf_equals(vb)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Generator `r` on the `r`-th face in sign-vector order.
pub fn initial_labeling(a: &DualArrangement, backend: Backend) -> Labeling {
    let g = a.faces().len();
    Labeling {
        labels: a
            .faces()
            .iter()
            .enumerate()
            .map(|(r, f)| (f.clone(), SemifieldElement::generator(backend, g, r)))
            .collect(),
    }
}

/// The point values of the generators, as a numeric labeling.
pub fn initial_values(a: &DualArrangement, backend: Backend, point: &[Rational]) -> Labeling<NumericValue> {
    Labeling {
        labels: a
            .faces()
            .iter()
            .zip(point)
            .map(|(f, v)| (f.clone(), NumericValue::new(backend, v.clone())))
            .collect(),
    }
}

/// Replaces the label of the triangle by the Desargues transform, moving it
/// to the key of the inverted triangle.
pub fn flip_label<T: Semifield>(l: &Labeling<T>, site: &FlipSite) -> Result<Labeling<T>, EngineError> {
    let x = l.role(&site.face)?;
    let pairs = site.pairs();
    let mut roles = Vec::with_capacity(6);
    for (e, w) in &pairs {
        roles.push((l.role(e)?, l.role(w)?));
    }
    let x_new = desargues(x, [roles[0], roles[1], roles[2]])?;
    let mut labels = l.labels.clone();
    labels.remove(&site.face);
    labels.insert(site.replacement(), x_new);
    Ok(Labeling { labels })
}

/// Folds [`flip_label`] over `sites`, advancing the arrangement alongside
/// and checking that each site is present when it is used.
pub fn propagate<T: Semifield>(
    l0: &Labeling<T>,
    sites: &[FlipSite],
    a0: &DualArrangement,
) -> Result<(Labeling<T>, DualArrangement), EngineError> {
    let mut l = l0.clone();
    let mut a = a0.clone();
    for (index, site) in sites.iter().enumerate() {
        if a.site(site.triple, &site.face).is_none() {
            return Err(EngineError::InvalidScript {
                index,
                face: site.face.to_string(),
            });
        }
        l = flip_label(&l, site)?;
        a = a.apply_flip(site)?;
    }
    Ok((l, a))
}

pub fn script_sites(script: &FlipScript) -> Vec<FlipSite> {
    script.entries.iter().map(|e| e.site()).collect()
}
