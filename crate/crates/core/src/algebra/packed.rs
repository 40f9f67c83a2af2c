//! Exponent vectors packed into a single `u128` for the integer fast paths
//! of multiplication and exact division.

use num_traits::ToPrimitive;

use super::{Monomial, Rational};

/// Fixed-width fields: total degree in the top field, then the entries with
/// the first variable most significant. For nonnegative entries integer
/// order is graded-lex order and integer addition is monomial
/// multiplication, as long as no degree exceeds the bound.
#[derive(Clone, Copy, Debug)]
pub(super) struct Packing {
    nvars: usize,
    bits: u32,
}

impl Packing {
    /// A packing for nonnegative monomials of total degree at most `max_degree`.
    pub fn for_degree(nvars: usize, max_degree: i64) -> Option<Packing> {
        let max = u64::try_from(max_degree).ok()?;
        let bits = (64 - max.leading_zeros()).max(1);
        ((nvars as u32 + 1) * bits <= 128).then_some(Packing { nvars, bits })
    }

    fn mask(&self) -> u128 {
        (1u128 << self.bits) - 1
    }

    /// Packs `m / shift`; every entry of the quotient must be nonnegative.
    pub fn pack_shifted(&self, m: &Monomial, shift: &Monomial) -> u128 {
        let mut key = 0u128;
        let mut degree = 0u128;
        for (&e, &s) in m.entries().iter().zip(shift.entries()) {
            let d = (e - s) as u128;
            degree += d;
            key = (key << self.bits) | d;
        }
        (degree << (self.nvars as u32 * self.bits)) | key
    }

    pub fn unpack(&self, key: u128) -> Monomial {
        let mask = self.mask();
        let mut entries = vec![0i32; self.nvars];
        for (i, e) in entries.iter_mut().enumerate() {
            let shift = (self.nvars - 1 - i) as u32 * self.bits;
            *e = ((key >> shift) & mask) as i32;
        }
        Monomial::new(entries)
    }

    /// Fieldwise `a <= b`.
    pub fn divides(&self, a: u128, b: u128) -> bool {
        let mask = self.mask();
        (0..self.nvars as u32).all(|i| {
            let s = i * self.bits;
            (a >> s) & mask <= (b >> s) & mask
        })
    }
}

/// The coefficient as a machine integer, if it is one.
pub(super) fn small_integer(c: &Rational) -> Option<i128> {
    if !num_traits::One::is_one(c.denom()) {
        return None;
    }
    c.numer().to_i128()
}
