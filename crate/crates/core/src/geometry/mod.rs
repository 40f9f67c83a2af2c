//! Points, dual lines and the combinatorics of projective line arrangements.

mod arrangement;
mod projective;
mod sign;

pub use arrangement::{build_arrangement, face_interior_point, DualArrangement, FlipSite};
pub use projective::{
    canonical_key, collinear_sign, cross, det3, dot, dualize, dualize_line, is_generic,
    is_zero_vec, Configuration, ProjLine, ProjPoint, Vec3,
};
pub use sign::{Sign, SignVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("zero vector is not a projective point")]
    ZeroVector,
    #[error("configuration is not generic at indices {indices:?}")]
    NotGeneric { indices: Vec<usize> },
    #[error("no flip site on lines {triple:?} at face {face}")]
    SiteNotPresent { triple: [usize; 3], face: String },
}

/// Relation between point-indexed lines (with their chart representatives)
/// and the canonical order of an arrangement.
///
/// Line `p` sits at canonical position `position[p]`, and its representative
/// is `sign[p]` times the canonical one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineFrame {
    position: Vec<usize>,
    sign: Vec<Sign>,
}

impl LineFrame {
    pub fn new(lines: &[ProjLine]) -> Self {
        let mut order: Vec<usize> = (0..lines.len()).collect();
        order.sort_by_key(|&p| lines[p].key());
        let mut position = vec![0; lines.len()];
        for (c, &p) in order.iter().enumerate() {
            position[p] = c;
        }
        let sign = lines
            .iter()
            .map(|l| {
                let first = l
                    .coeffs()
                    .iter()
                    .find(|x| !num_traits::Zero::is_zero(*x))
                    .expect("nonzero line");
                Sign::of(first)
            })
            .collect();
        LineFrame { position, sign }
    }

    pub fn position(&self, p: usize) -> usize {
        self.position[p]
    }

    pub fn positions(&self) -> &[usize] {
        &self.position
    }

    /// Converts a covector from the point-indexed frame to the canonical one.
    pub fn to_canonical(&self, sv: &SignVector) -> SignVector {
        let n = self.position.len();
        let mut source = vec![0; n];
        let mut sign = vec![Sign::Plus; n];
        for p in 0..n {
            source[self.position[p]] = p;
            sign[self.position[p]] = self.sign[p];
        }
        sv.permuted(&source, &sign)
    }

    /// Inverse of [`LineFrame::to_canonical`].
    pub fn from_canonical(&self, sv: &SignVector) -> SignVector {
        sv.permuted(&self.position, &self.sign)
    }
}
