//! Fixed-width vertex subsets.
//!
//! Vertex `v` (1-indexed, as everywhere in the public API) lives in bit
//! `v - 1`. A single `u64` therefore holds subsets of `[63]`; bit 63 is never
//! used so that `mask(n)` stays a plain shift.

use std::cmp::Ordering;
use std::fmt;

/// Largest vertex count supported by the enumeration core.
pub const MAX_VERTICES: usize = 63;

/// A subset of `[n]` stored as a bit-vector.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// All of `[n]`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        VertexSet(mask(n))
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(bit(v))
    }

    /// Builds a set from 1-indexed labels.
    ///
    /// Panics on a label outside `1..=63`.
    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Self {
        let mut bits = 0;
        for v in labels {
            bits |= bit(v);
        }
        VertexSet(bits)
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v >= 1 && v <= MAX_VERTICES && self.0 & bit(v) != 0
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | bit(v))
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !bit(v))
    }

    #[inline]
    pub const fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn is_strict_subset(self, other: Self) -> bool {
        self.0 != other.0 && self.is_subset(other)
    }

    /// Largest label in the set.
    pub fn max(self) -> Option<usize> {
        match self.0 {
            0 => None,
            b => Some(64 - b.leading_zeros() as usize),
        }
    }

    /// Labels in increasing order.
    pub fn iter(self) -> Labels {
        Labels(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Parses a comma-separated label list (the empty string is the empty set).
    pub fn parse_labels(text: &str, n: usize) -> Result<Self, String> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(VertexSet::EMPTY);
        }
        let mut set = VertexSet::EMPTY;
        for tok in text.split(',') {
            let v: usize = tok
                .trim()
                .parse()
                .map_err(|_| format!("bad vertex label {tok:?}"))?;
            if v == 0 || v > n {
                return Err(format!("vertex {v} outside 1..={n}"));
            }
            if set.contains(v) {
                return Err(format!("vertex {v} repeated"));
            }
            set = set.with(v);
        }
        Ok(set)
    }

    /// Comma-separated labels, no braces.
    pub fn to_labels_string(self) -> String {
        let mut out = String::new();
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&v.to_string());
        }
        out
    }
}

#[inline]
pub(crate) const fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
fn bit(v: usize) -> u64 {
    assert!(
        (1..=MAX_VERTICES).contains(&v),
        "vertex label {v} out of range"
    );
    1u64 << (v - 1)
}

/// Lexicographic order on the increasing label sequences, a proper prefix
/// sorting first. This is the order depth-first enumeration emits.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        let above = !(low | (low - 1));
        if self.0 & low != 0 {
            // self's next label is smaller unless other has run out.
            if other.0 & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.0 & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_labels_string())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_labels_string())
    }
}

/// Serialised as the ascending list of labels.
impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

pub struct Labels(u64);

impl Iterator for Labels {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Labels {}
