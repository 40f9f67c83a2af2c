//! The octagon relation as a fixed symbolic computation.
//!
//! Eleven symbols `a..k` label the faces around a codimension-two
//! degeneration; eight flips produce `l..s`, after which the last three
//! labels come back to `i, j, k`. The formulas below spell out which faces
//! pair up in each flip. The fifth flip (producing `p`) follows the same
//! pattern as the others: boundary pairs `(d, g)`, then the two most recent
//! interior labels. The seventh flip divides by `o`.

use super::labeling::desargues;
use super::EngineError;
use crate::algebra::{serialize, Backend, Semifield, SemifieldElement};

const NAMES: [&str; 11] = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k"];

/// One checked identity with both sides in canonical text form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OctagonReport {
    pub backend: Backend,
    pub identities: Vec<IdentityCheck>,
}

/// The octagon computation, optionally with a corrupted fifth flip as a
/// negative control.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OctagonFixture {
    pub corrupt_fifth_flip: bool,
}

type El = SemifieldElement;

struct Ops {
    backend: Backend,
}

impl Ops {
    fn sym(&self, name: &str) -> El {
        let idx = NAMES.iter().position(|n| *n == name).expect("fixture symbol");
        El::generator(self.backend, NAMES.len(), idx)
    }

    fn prod(&self, xs: &[&El]) -> Result<El, EngineError> {
        let mut acc = El::one(self.backend, NAMES.len());
        for x in xs {
            acc = acc.otimes(x)?;
        }
        Ok(acc)
    }

    /// `(sum of products) / (product)`, each product given by symbol names.
    fn expr(&self, num: &[&[&str]], den: &[&str]) -> Result<El, EngineError> {
        let mut sum: Option<El> = None;
        for term in num {
            let syms: Vec<El> = term.iter().map(|s| self.sym(s)).collect();
            let t = self.prod(&syms.iter().collect::<Vec<_>>())?;
            sum = Some(match sum {
                None => t,
                Some(s) => s.oplus(&t)?,
            });
        }
        let d: Vec<El> = den.iter().map(|s| self.sym(s)).collect();
        Ok(sum.expect("nonempty numerator").oslash(&self.prod(&d.iter().collect::<Vec<_>>())?)?)
    }
}

fn names() -> Vec<String> {
    NAMES.iter().map(|s| s.to_string()).collect()
}

/// The flips in order, each computed from the labels before it.
struct Flips {
    backend: Backend,
    corrupt_fifth_flip: bool,
    done: Vec<El>,
}

impl Flips {
    /// The `count` first flip values, computing any that are missing.
    fn upto(&mut self, count: usize) -> Result<&[El], EngineError> {
        let ops = Ops {
            backend: self.backend,
        };
        let [a, b, c, d, e, f, g, h, i, j, k] = NAMES.map(|s| ops.sym(s));
        while self.done.len() < count {
            let v = &self.done;
            let next = match v.len() {
                0 => desargues(&i, [(&a, &j), (&b, &k), (&c, &h)])?,
                1 => desargues(&j, [(&c, &f), (&d, &k), (&e, &v[0])])?,
                2 => desargues(&k, [(&f, &a), (&g, &v[0]), (&h, &v[1])])?,
                3 => desargues(&v[0], [(&a, &d), (&b, &v[1]), (&c, &v[2])])?,
                4 => {
                    let x = if self.corrupt_fifth_flip { &j } else { &v[1] };
                    desargues(x, [(&d, &g), (&e, &v[2]), (&f, &v[3])])?
                }
                5 => desargues(&v[2], [(&h, &v[3]), (&a, &v[4]), (&b, &g)])?,
                6 => desargues(&v[3], [(&b, &e), (&c, &v[4]), (&d, &v[5])])?,
                _ => desargues(&v[4], [(&e, &h), (&f, &v[5]), (&g, &v[6])])?,
            };
            self.done.push(next);
        }
        Ok(&self.done[..count])
    }
}

impl OctagonFixture {
    fn start(&self, backend: Backend) -> Flips {
        Flips {
            backend,
            corrupt_fifth_flip: self.corrupt_fifth_flip,
            done: Vec::with_capacity(8),
        }
    }

    /// The eight flip values `l, m, n, o, p, q, r, s`.
    pub fn flips(&self, backend: Backend) -> Result<[El; 8], EngineError> {
        let mut flips = self.start(backend);
        flips.upto(8)?;
        Ok(flips.done.try_into().expect("eight flips"))
    }

    /// Checks, in order: the expanded forms of `l, m, n, o`; `q = i`,
    /// `r = j`, `s = k`; and the closed form of `p`. Stops at the first
    /// identity that fails, before computing later flips.
    pub fn verify(&self, backend: Backend) -> Result<OctagonReport, EngineError> {
        let ops = Ops { backend };
        let mut flips = self.start(backend);
        // (name, flip index, right-hand side)
        let checks: Vec<(&'static str, usize, El)> = vec![
            (
                "l = (a⊗j ⊕ b⊗k ⊕ c⊗h) ⊘ i",
                0,
                ops.expr(&[&["a", "j"], &["b", "k"], &["c", "h"]], &["i"])?,
            ),
            (
                "m = (c⊗f⊗i ⊕ d⊗k⊗i ⊕ e⊗a⊗j ⊕ e⊗b⊗k ⊕ e⊗c⊗h) ⊘ (i⊗j)",
                1,
                ops.expr(
                    &[
                        &["c", "f", "i"],
                        &["d", "k", "i"],
                        &["e", "a", "j"],
                        &["e", "b", "k"],
                        &["e", "c", "h"],
                    ],
                    &["i", "j"],
                )?,
            ),
            (
                "n = (f⊗a⊗i⊗j ⊕ g⊗a⊗j² ⊕ g⊗b⊗k⊗j ⊕ g⊗c⊗h⊗j ⊕ h⊗c⊗f⊗i ⊕ h⊗d⊗k⊗i ⊕ h⊗e⊗a⊗j ⊕ h⊗e⊗b⊗k ⊕ e⊗c⊗h²) ⊘ (i⊗j⊗k)",
                2,
                ops.expr(
                    &[
                        &["f", "a", "i", "j"],
                        &["g", "a", "j", "j"],
                        &["g", "b", "k", "j"],
                        &["g", "c", "h", "j"],
                        &["h", "c", "f", "i"],
                        &["h", "d", "k", "i"],
                        &["h", "e", "a", "j"],
                        &["h", "e", "b", "k"],
                        &["e", "c", "h", "h"],
                    ],
                    &["i", "j", "k"],
                )?,
            ),
            (
                "o = (b⊗e⊗k ⊕ d⊗i⊗k ⊕ c⊗g⊗j ⊕ c⊗f⊗i ⊕ c⊗e⊗h) ⊘ (j⊗k)",
                3,
                ops.expr(
                    &[
                        &["b", "e", "k"],
                        &["d", "i", "k"],
                        &["c", "g", "j"],
                        &["c", "f", "i"],
                        &["c", "e", "h"],
                    ],
                    &["j", "k"],
                )?,
            ),
            ("q = i", 5, ops.sym("i")),
            ("r = j", 6, ops.sym("j")),
            ("s = k", 7, ops.sym("k")),
            (
                "p = (e⊗h ⊕ f⊗i ⊕ g⊗j) ⊘ k",
                4,
                ops.expr(&[&["e", "h"], &["f", "i"], &["g", "j"]], &["k"])?,
            ),
        ];
        let names = names();
        let mut identities = Vec::new();
        for (name, index, rhs) in checks {
            let lhs = &flips.upto(index + 1)?[index];
            let check = IdentityCheck {
                name,
                lhs: serialize(lhs, &names),
                rhs: serialize(&rhs, &names),
            };
            if !lhs.sf_equals(&rhs)? {
                return Err(EngineError::RelationFailed {
                    identity: name.to_string(),
                    lhs: check.lhs,
                    rhs: check.rhs,
                });
            }
            identities.push(check);
        }
        Ok(OctagonReport {
            backend,
            identities,
        })
    }
}

pub fn verify_octagon(backend: Backend) -> Result<OctagonReport, EngineError> {
    OctagonFixture::default().verify(backend)
}
