use std::fmt;

use crate::error::{Error, Result};

/// A subset of a group of order ≤ 64, as a bitmask over element indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GSet(u64);

impl GSet {
    pub const EMPTY: GSet = GSet(0);

    pub fn from_bits(bits: u64) -> Self {
        GSet(bits)
    }

    pub fn full(order: usize) -> Self {
        GSet(if order >= 64 { u64::MAX } else { (1u64 << order) - 1 })
    }

    pub fn singleton(x: usize) -> Self {
        GSet(1 << x)
    }

    pub fn from_indices(xs: impl IntoIterator<Item = usize>) -> Self {
        GSet(xs.into_iter().fold(0, |acc, x| acc | (1 << x)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, x: usize) -> bool {
        x < 64 && self.0 >> x & 1 == 1
    }

    pub fn union(self, other: GSet) -> GSet {
        GSet(self.0 | other.0)
    }

    pub fn intersect(self, other: GSet) -> GSet {
        GSet(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: GSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in increasing index order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(x)
        })
    }

    /// Comma-separated indices, each below `order`.
    pub fn parse(text: &str, order: usize) -> Result<GSet> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(GSet::EMPTY);
        }
        let mut s = GSet::EMPTY;
        for part in text.split(',') {
            let x: usize = part.trim().parse().map_err(|_| Error::Parse(format!("bad element `{part}`")))?;
            if x >= order {
                return Err(Error::Parse(format!("element {x} outside a group of order {order}")));
            }
            s = s.union(GSet::singleton(x));
        }
        Ok(s)
    }
}

impl fmt::Display for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}
