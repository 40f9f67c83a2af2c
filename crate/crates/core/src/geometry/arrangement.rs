use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::projective::{cross, dot, is_zero_vec, Vec3};
use super::{dualize, Configuration, GeometryError, ProjLine, Sign, SignVector};
use crate::algebra::Rational;

/// Combinatorial arrangement of `n` lines in the projective plane.
///
/// Every cell is identified by its normalized covector over the line order
/// the arrangement was built with. The dual graph `D_n` has the faces as
/// vertices and the edges as its edges; in general position every vertex of
/// the arrangement is four-valent, so every face of `D_n` is a quadrilateral.
#[derive(Clone, Debug)]
pub struct DualArrangement {
    n: usize,
    /// Canonical keys of the lines, when the arrangement came from geometry.
    lines: Option<Vec<[BigInt; 3]>>,
    vertices: BTreeSet<SignVector>,
    edges: BTreeSet<SignVector>,
    faces: BTreeSet<SignVector>,
}

impl PartialEq for DualArrangement {
    /// Equality of the cell structure; the recorded line keys are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.vertices == other.vertices
            && self.edges == other.edges
            && self.faces == other.faces
    }
}

impl Eq for DualArrangement {}

type IVec = [BigInt; 3];

fn icross(a: &IVec, b: &IVec) -> IVec {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn idot(a: &IVec, b: &IVec) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn izero(a: &IVec) -> bool {
    a.iter().all(Zero::is_zero)
}

fn iscale(a: &IVec, k: &BigInt) -> IVec {
    [&a[0] * k, &a[1] * k, &a[2] * k]
}

fn iadd(a: &IVec, b: &IVec) -> IVec {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

fn isign(x: &BigInt) -> Sign {
    match x.sign() {
        num_bigint::Sign::Minus => Sign::Minus,
        num_bigint::Sign::NoSign => Sign::Zero,
        num_bigint::Sign::Plus => Sign::Plus,
    }
}

fn combine(p: &Vec3, q: &Vec3, alpha: &Rational, beta: &Rational) -> Vec3 {
    [
        alpha * &p[0] + beta * &q[0],
        alpha * &p[1] + beta * &q[1],
        alpha * &p[2] + beta * &q[2],
    ]
}

/// A positive integer multiple of `v`.
fn integral(v: &Vec3) -> IVec {
    use num_integer::Integer;
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    [0, 1, 2].map(|i| v[i].numer() * (&l / v[i].denom()))
}

/// Two independent points spanning the line `l`.
fn line_basis(l: &IVec) -> (IVec, IVec) {
    let [u, v, w] = l.clone();
    let z = BigInt::zero();
    let cands = [
        [-v.clone(), u.clone(), z.clone()],
        [-w.clone(), z.clone(), u],
        [z, -w, v],
    ];
    for a in 0..3 {
        for b in a + 1..3 {
            if !izero(&icross(&cands[a], &cands[b])) {
                return (cands[a].clone(), cands[b].clone());
            }
        }
    }
    unreachable!("nonzero line has a two-dimensional kernel")
}

fn covector_at(lines: &[IVec], point: &IVec) -> Vec<Sign> {
    lines.iter().map(|l| isign(&idot(l, point))).collect()
}

/// A point on a line spanned by `p, q`, kept as `v` with
/// `|p x q|^2 v = alpha p + beta q`. Its affine parameter is `alpha / beta`,
/// infinite when `beta = 0`.
struct OnLine {
    v: IVec,
    alpha: BigInt,
    beta: BigInt,
}

impl OnLine {
    fn cmp_param(&self, other: &OnLine) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self.beta.is_zero(), other.beta.is_zero()) {
            (true, true) => Equal,
            (true, false) => Greater,
            (false, true) => Less,
            (false, false) => {
                // alpha1/beta1 vs alpha2/beta2 with signed denominators.
                let lhs = &self.alpha * &other.beta;
                let rhs = &other.alpha * &self.beta;
                let ord = lhs.cmp(&rhs);
                if self.beta.is_negative() != other.beta.is_negative() {
                    ord.reverse()
                } else {
                    ord
                }
            }
        }
    }

    /// The representative `s p + q` (up to a positive factor) of its parameter `s`.
    fn affine(&self) -> IVec {
        if self.beta.is_negative() {
            iscale(&self.v, &-BigInt::one())
        } else {
            self.v.clone()
        }
    }
}

impl DualArrangement {
    /// Builds the arrangement of the given lines, in the given order and with
    /// the given representatives (which fix the meaning of `+`/`-`).
    pub fn from_lines(lines: &[ProjLine]) -> Result<Self, GeometryError> {
        let coeffs: Vec<Vec3> = lines.iter().map(|l| l.coeffs().clone()).collect();
        let mut a = Self::from_coeffs(&coeffs)?;
        a.lines = Some(lines.iter().map(|l| l.key()).collect());
        Ok(a)
    }

    fn from_coeffs(lines: &[Vec3]) -> Result<Self, GeometryError> {
        let n = lines.len();
        if n == 0 {
            return Ok(DualArrangement {
                n,
                lines: None,
                vertices: BTreeSet::new(),
                edges: BTreeSet::new(),
                faces: BTreeSet::from([SignVector::new(Vec::new())]),
            });
        }
        if lines.iter().any(is_zero_vec) {
            return Err(GeometryError::ZeroVector);
        }
        // Positive rescaling keeps every side, so integer coefficients suffice.
        let lines: Vec<IVec> = lines.iter().map(integral).collect();
        let mut vertices = BTreeSet::new();
        let mut on_line: Vec<Vec<IVec>> = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                let v = icross(&lines[i], &lines[j]);
                if izero(&v) {
                    return Err(GeometryError::NotGeneric { indices: vec![i, j] });
                }
                let mut cov = covector_at(&lines, &v);
                cov[i] = Sign::Zero;
                cov[j] = Sign::Zero;
                if let Some(k) = (0..n).find(|&k| k != i && k != j && cov[k] == Sign::Zero) {
                    return Err(GeometryError::NotGeneric { indices: vec![i, j, k] });
                }
                vertices.insert(SignVector::new(cov));
                on_line[i].push(v.clone());
                on_line[j].push(v);
            }
        }

        let mut edges = BTreeSet::new();
        for (i, verts) in on_line.iter().enumerate() {
            let (p, q) = line_basis(&lines[i]);
            let w = icross(&p, &q);
            let ww = idot(&w, &w);
            let mut pts: Vec<OnLine> = verts
                .iter()
                .map(|v| OnLine {
                    alpha: idot(&icross(v, &q), &w),
                    beta: idot(&icross(&p, v), &w),
                    v: v.clone(),
                })
                .collect();
            pts.sort_by(OnLine::cmp_param);
            // Parameter s + 1 (or s - 1) past a finite vertex.
            let shifted = |a: &OnLine, up: bool| -> IVec {
                let k = if up { a.beta.clone() } else { -&a.beta };
                let step = iscale(&p, &k);
                let r = iadd(&iscale(&a.v, &ww), &step);
                if a.beta.is_negative() {
                    iscale(&r, &-BigInt::one())
                } else {
                    r
                }
            };
            let mut mids: Vec<IVec> = pts
                .windows(2)
                .map(|w| match (w[0].beta.is_zero(), w[1].beta.is_zero()) {
                    (false, false) => iadd(
                        &iscale(&w[0].affine(), &w[1].beta.abs()),
                        &iscale(&w[1].affine(), &w[0].beta.abs()),
                    ),
                    (false, true) => shifted(&w[0], true),
                    _ => unreachable!("infinity sorts last"),
                })
                .collect();
            // The arc closing the circle through the point at infinity.
            let wrap = match (pts.first(), pts.last()) {
                (None, _) => p.clone(),
                (Some(first), Some(last)) if last.beta.is_zero() => {
                    if first.beta.is_zero() {
                        q.clone()
                    } else {
                        shifted(first, false)
                    }
                }
                (_, Some(last)) => shifted(last, true),
                (Some(_), None) => unreachable!(),
            };
            mids.push(wrap);
            for pt in &mids {
                let mut cov = covector_at(&lines, pt);
                cov[i] = Sign::Zero;
                debug_assert!((0..n).all(|k| k == i || cov[k] != Sign::Zero));
                edges.insert(SignVector::new(cov));
            }
        }

        let mut faces = BTreeSet::new();
        for e in &edges {
            let i = e.zeros()[0];
            faces.insert(e.with(i, Sign::Plus).normalized());
            faces.insert(e.with(i, Sign::Minus).normalized());
        }
        Ok(DualArrangement {
            n,
            lines: None,
            vertices,
            edges,
            faces,
        })
    }

    pub fn line_count(&self) -> usize {
        self.n
    }

    pub fn line_keys(&self) -> Option<&[[BigInt; 3]]> {
        self.lines.as_deref()
    }

    pub fn vertices(&self) -> &BTreeSet<SignVector> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<SignVector> {
        &self.edges
    }

    pub fn faces(&self) -> &BTreeSet<SignVector> {
        &self.faces
    }

    pub fn has_face(&self, f: &SignVector) -> bool {
        self.faces.contains(f)
    }

    /// Lines of the bounding edges of every face, with multiplicity.
    pub fn face_boundaries(&self) -> BTreeMap<SignVector, Vec<usize>> {
        let mut out: BTreeMap<SignVector, Vec<usize>> =
            self.faces.iter().map(|f| (f.clone(), Vec::new())).collect();
        for e in &self.edges {
            let i = e.zeros()[0];
            for s in [Sign::Plus, Sign::Minus] {
                let f = e.with(i, s).normalized();
                out.get_mut(&f).expect("edge side is a face").push(i);
            }
        }
        out
    }

    /// Number of edge ends at each vertex (loops count twice).
    pub fn vertex_degrees(&self) -> BTreeMap<SignVector, usize> {
        let mut deg: BTreeMap<SignVector, usize> =
            self.vertices.iter().map(|v| (v.clone(), 0)).collect();
        for e in &self.edges {
            let i = e.zeros()[0];
            for j in (0..self.n).filter(|&j| j != i) {
                let v = e.with(j, Sign::Zero).normalized();
                if let Some(d) = deg.get_mut(&v) {
                    *d += v.incidences(e);
                }
            }
        }
        deg
    }

    /// Faces sharing an edge with `f`.
    pub fn neighbors(&self, f: &SignVector) -> Vec<SignVector> {
        (0..self.n)
            .filter(|&i| self.edges.contains(&f.with(i, Sign::Zero).normalized()))
            .map(|i| f.flip_at(&[i]))
            .collect()
    }

    /// Triangular faces, sorted.
    pub fn triangles(&self) -> Vec<SignVector> {
        self.face_boundaries()
            .into_iter()
            .filter(|(_, b)| b.len() == 3)
            .map(|(f, _)| f)
            .collect()
    }

    /// One site per triangular face bounded by three distinct lines whose
    /// surrounding hexagon is present.
    pub fn flip_sites(&self) -> Vec<FlipSite> {
        self.face_boundaries()
            .into_iter()
            .filter_map(|(f, mut b)| {
                if b.len() != 3 {
                    return None;
                }
                b.sort_unstable();
                b.dedup();
                if b.len() != 3 {
                    return None;
                }
                let site = FlipSite::new([b[0], b[1], b[2]], f);
                site.hexagon().iter().all(|g| self.faces.contains(g)).then_some(site)
            })
            .collect()
    }

    /// The site at face `f` on lines `triple`, if it is one.
    pub fn site(&self, triple: [usize; 3], f: &SignVector) -> Option<FlipSite> {
        let site = FlipSite::new(triple, f.clone());
        if !self.faces.contains(f) {
            return None;
        }
        let mut b = self.face_boundaries().remove(f)?;
        b.sort_unstable();
        (b == site.triple.to_vec() && site.hexagon().iter().all(|g| self.faces.contains(g)))
            .then_some(site)
    }

    /// Inverts the triangle of `site`: the closed triangle's cells are
    /// replaced by those of the opposite triangle `tau`; nothing else moves.
    pub fn apply_flip(&self, site: &FlipSite) -> Result<Self, GeometryError> {
        if self.site(site.triple, &site.face).is_none() {
            return Err(GeometryError::SiteNotPresent {
                triple: site.triple,
                face: site.face.to_string(),
            });
        }
        let t = site.triple;
        let sigma = site.face.clone();
        let tau_raw = SignVector::raw(
            (0..self.n)
                .map(|c| if t.contains(&c) { sigma.get(c).flip() } else { sigma.get(c) })
                .collect(),
        );
        let mut next = self.clone();
        next.lines = None;
        next.faces.remove(&sigma);
        let mut new_edges = Vec::new();
        let mut new_vertices = Vec::new();
        for &m in &t {
            let old = sigma.with(m, Sign::Zero).normalized();
            debug_assert!(next.edges.contains(&old));
            next.edges.remove(&old);
            new_edges.push(tau_raw.with(m, Sign::Zero).normalized());
        }
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            let old = sigma.with(a, Sign::Zero).with(b, Sign::Zero).normalized();
            debug_assert!(next.vertices.contains(&old));
            next.vertices.remove(&old);
            new_vertices.push(tau_raw.with(a, Sign::Zero).with(b, Sign::Zero).normalized());
        }
        next.faces.insert(site.replacement());
        next.edges.extend(new_edges);
        next.vertices.extend(new_vertices);
        Ok(next)
    }

    /// Debug dump: line keys, face sign strings and triangles.
    pub fn to_json(&self) -> Value {
        let lines: Value = match &self.lines {
            Some(keys) => keys
                .iter()
                .map(|k| k.iter().map(bigint_json).collect::<Vec<_>>())
                .collect(),
            None => Value::Null,
        };
        json!({
            "lines": lines,
            "vertices": self.vertices.len(),
            "edges": self.edges.len(),
            "faces": self.faces.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "triangles": self.triangles().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        })
    }
}

fn bigint_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

/// Arrangement of the dual lines, sorted by canonical line key and using the
/// canonical representatives.
pub fn build_arrangement(c: &Configuration) -> Result<DualArrangement, GeometryError> {
    if let Some(indices) = c.degeneracy() {
        return Err(GeometryError::NotGeneric { indices });
    }
    let mut lines: Vec<ProjLine> = c.points().iter().map(|p| dualize(p).canonical()).collect();
    lines.sort_by_key(|l| l.key());
    DualArrangement::from_lines(&lines)
}

/// Triangle inversion data: the collapsing face and its hexagon.
///
/// For each line `m` of the triple, the edge neighbour `E_m` is the face across
/// `m`, and the vertex neighbour `W_m` is the face touching the triangle only
/// at the vertex opposite that edge. `(E_m, W_m)` are the opposite pairs that
/// multiply in the flip rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlipSite {
    pub triple: [usize; 3],
    pub face: SignVector,
}

impl FlipSite {
    pub fn new(mut triple: [usize; 3], face: SignVector) -> Self {
        triple.sort_unstable();
        FlipSite {
            triple,
            face: face.normalized(),
        }
    }

    pub fn edge_neighbor(&self, slot: usize) -> SignVector {
        self.face.flip_at(&[self.triple[slot]])
    }

    pub fn vertex_neighbor(&self, slot: usize) -> SignVector {
        let others: Vec<usize> = (0..3).filter(|&s| s != slot).map(|s| self.triple[s]).collect();
        self.face.flip_at(&others)
    }

    /// The face that replaces the triangle after the flip.
    pub fn replacement(&self) -> SignVector {
        self.face.flip_at(&self.triple)
    }

    /// The three opposite pairs `(E_m, W_m)`.
    pub fn pairs(&self) -> [(SignVector, SignVector); 3] {
        [0, 1, 2].map(|s| (self.edge_neighbor(s), self.vertex_neighbor(s)))
    }

    /// The six faces around the triangle.
    pub fn hexagon(&self) -> Vec<SignVector> {
        self.pairs().into_iter().flat_map(|(e, w)| [e, w]).collect()
    }

    /// Triangle, hexagon and replacement face.
    pub fn role_faces(&self) -> Vec<SignVector> {
        let mut v = vec![self.face.clone()];
        v.extend(self.hexagon());
        v.push(self.replacement());
        v
    }

    /// The site that undoes this flip.
    pub fn reverse(&self) -> FlipSite {
        FlipSite::new(self.triple, self.replacement())
    }
}

/// A point strictly inside face `f` of the arrangement of `lines`.
///
/// For three or more lines the face is a pointed cone on the sphere and the
/// sum of its correctly oriented vertex rays lies in its interior.
pub fn face_interior_point(lines: &[ProjLine], f: &SignVector) -> Option<Vec3> {
    let ls: Vec<Vec3> = lines.iter().map(|l| l.coeffs().clone()).collect();
    let n = ls.len();
    let sign_rational = |s: Sign| match s {
        Sign::Plus => Rational::one(),
        Sign::Minus => -Rational::one(),
        Sign::Zero => Rational::zero(),
    };
    match n {
        0 => return Some([Rational::zero(), Rational::zero(), Rational::one()]),
        1 => {
            let s = sign_rational(f.get(0));
            return Some(ls[0].clone().map(|x| x * &s));
        }
        2 => {
            let w = cross(&ls[0], &ls[1]);
            let u0 = cross(&ls[1], &w);
            let u1 = cross(&w, &ls[0]);
            return Some(combine(&u0, &u1, &sign_rational(f.get(0)), &sign_rational(f.get(1))));
        }
        _ => {}
    }
    let mut sum = [Rational::zero(), Rational::zero(), Rational::zero()];
    let mut found = 0;
    for i in 0..n {
        for j in i + 1..n {
            let v = cross(&ls[i], &ls[j]);
            let mut orient: Option<Sign> = None;
            let mut ok = true;
            for k in (0..n).filter(|&k| k != i && k != j) {
                let rel = Sign::of(&dot(&ls[k], &v)).times(f.get(k));
                match orient {
                    None => orient = Some(rel),
                    Some(o) if o == rel => {}
                    Some(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let s = sign_rational(orient.expect("n >= 3"));
                for (acc, x) in sum.iter_mut().zip(v) {
                    *acc += x * &s;
                }
                found += 1;
            }
        }
    }
    (found >= 3).then_some(sum)
}
