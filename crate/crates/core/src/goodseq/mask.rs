use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ground-set size a [`SubsetMask`] can encode.
pub const MAX_GROUND: u32 = 31;

/// A subset of `[1, n]`; bit `i - 1` set iff `i` is a member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn from_bits(bits: u32) -> Self {
        SubsetMask(bits)
    }

    /// `[1, m]`.
    pub fn prefix(m: u32) -> Self {
        debug_assert!(m <= MAX_GROUND);
        SubsetMask(((1u64 << m) - 1) as u32)
    }

    pub fn from_elements(elements: &[u32]) -> Result<Self> {
        let mut bits = 0u32;
        for &e in elements {
            if e == 0 || e > MAX_GROUND {
                return Err(Error::InvalidParameter(format!(
                    "subset element {e} outside [1,{MAX_GROUND}]"
                )));
            }
            bits |= 1 << (e - 1);
        }
        Ok(SubsetMask(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, element: u32) -> bool {
        (1..=MAX_GROUND).contains(&element) && self.0 & (1 << (element - 1)) != 0
    }

    #[inline]
    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_proper_subset_of(self, other: SubsetMask) -> bool {
        self != other && self.is_subset_of(other)
    }

    pub fn difference(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & !other.0)
    }

    /// Smallest element (1-based), if any.
    pub fn min_element(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    /// Members in ascending order, 1-based.
    pub fn elements(self) -> Vec<u32> {
        (0..32)
            .filter(|b| self.0 & (1 << b) != 0)
            .map(|b| b + 1)
            .collect()
    }

    /// Every proper subset, largest mask value first.
    pub fn proper_subsets(self) -> impl Iterator<Item = SubsetMask> {
        let full = self.0;
        let mut next = if full == 0 {
            None
        } else {
            Some((full - 1) & full)
        };
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 {
                None
            } else {
                Some((cur - 1) & full)
            };
            Some(SubsetMask(cur))
        })
    }

    pub fn fits(self, n: u32) -> bool {
        n >= MAX_GROUND || self.0 >> n == 0
    }
}

impl Serialize for SubsetMask {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements().serialize(s)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A sequence `a_1..a_L` of subsets of `[1, n]`. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SequenceRecord", into = "SequenceRecord")]
pub struct SubsetSequence {
    n: u32,
    entries: Vec<SubsetMask>,
}

impl SubsetSequence {
    pub fn new(n: u32, entries: Vec<SubsetMask>) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::InvalidParameter(format!(
                "ground set size {n} exceeds {MAX_GROUND}"
            )));
        }
        if let Some((pos, bad)) = entries.iter().enumerate().find(|(_, m)| !m.fits(n)) {
            return Err(Error::InvalidParameter(format!(
                "entry {} = {bad} is not a subset of [1,{n}]",
                pos + 1
            )));
        }
        Ok(SubsetSequence { n, entries })
    }

    /// Convenience constructor from element lists.
    pub fn from_sets(n: u32, sets: &[&[u32]]) -> Result<Self> {
        let entries = sets
            .iter()
            .map(|s| SubsetMask::from_elements(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, entries)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[SubsetMask] {
        &self.entries
    }

    /// Entry at 1-based `position`.
    pub fn get(&self, position: u32) -> Option<SubsetMask> {
        (position as usize)
            .checked_sub(1)
            .and_then(|i| self.entries.get(i).copied())
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [SubsetMask] {
        &mut self.entries
    }

    pub fn cardinalities(&self) -> Vec<u32> {
        self.entries.iter().map(|m| m.len()).collect()
    }
}

impl fmt::Display for SubsetSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|m| m.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct SequenceRecord {
    n: u32,
    entries: Vec<Vec<u32>>,
}

impl From<SubsetSequence> for SequenceRecord {
    fn from(seq: SubsetSequence) -> Self {
        SequenceRecord {
            n: seq.n,
            entries: seq.entries.iter().map(|m| m.elements()).collect(),
        }
    }
}

impl TryFrom<SequenceRecord> for SubsetSequence {
    type Error = Error;

    fn try_from(rec: SequenceRecord) -> Result<Self> {
        let entries = rec
            .entries
            .iter()
            .map(|e| SubsetMask::from_elements(e))
            .collect::<Result<Vec<_>>>()?;
        SubsetSequence::new(rec.n, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn proper_subsets_enumeration() {
        let m = SubsetMask::from_bits(0b101);
        let subs: Vec<u32> = m.proper_subsets().map(|s| s.bits()).collect();
        assert_eq!(subs, vec![0b100, 0b001, 0]);
        assert_eq!(SubsetMask::EMPTY.proper_subsets().count(), 0);
        assert_eq!(SubsetMask::prefix(4).proper_subsets().count(), 15);
    }

    #[test]
    fn containment() {
        let a = SubsetMask::from_elements(&[1, 3]).unwrap();
        let b = SubsetMask::from_elements(&[1, 2, 3]).unwrap();
        assert!(a.is_proper_subset_of(b));
        assert!(!b.is_subset_of(a));
        assert!(a.is_subset_of(a) && !a.is_proper_subset_of(a));
        assert_eq!(b.difference(a).min_element(), Some(2));
        assert_eq!(a.to_string(), "{1,3}");
    }

    #[test]
    fn sequence_rejects_out_of_range_entries() {
        assert!(SubsetSequence::from_sets(2, &[&[3]]).is_err());
        assert!(SubsetSequence::from_sets(2, &[&[1, 2], &[]]).is_ok());
    }

    #[test]
    fn json_shape() {
        let seq = SubsetSequence::from_sets(2, &[&[1, 2], &[1], &[]]).unwrap();
        let text = serde_json::to_string(&seq).unwrap();
        assert_eq!(text, r#"{"n":2,"entries":[[1,2],[1],[]]}"#);
        let back: SubsetSequence = serde_json::from_str(&text).unwrap();
        assert_eq!(back, seq);
        assert!(serde_json::from_str::<SubsetSequence>(r#"{"n":1,"entries":[[2]]}"#).is_err());
    }
}
