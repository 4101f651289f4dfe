//! Vertex ids and bitset-backed vertex sets.
//!
//! Every face, facet, missing face and tower prefix in this crate is a
//! [`VertexSet`]: a set of at most 64 vertex ids packed into a `u64`.
//! Subset, union and intersection tests are single word operations, and
//! the ordering used everywhere for output is lexicographic on the sorted
//! id lists, so emitted face lists are byte-deterministic.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a vertex within one polytope. Ids are dense: a polytope on
/// `n` vertices uses ids `0..n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(u8);

impl VertexId {
    /// Upper bound (exclusive) on vertex ids.
    pub const CAPACITY: usize = 64;

    pub fn new(index: usize) -> Result<Self> {
        if index < Self::CAPACITY {
            Ok(VertexId(index as u8))
        } else {
            Err(Error::TooManyVertices { n: index + 1 })
        }
    }

    pub(crate) const fn new_unchecked(index: usize) -> Self {
        VertexId(index as u8)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of vertex ids, stored as a 64-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: VertexId) -> Self {
        VertexSet(1 << v.0)
    }

    /// Builds a set from raw indices, rejecting indices 64 and above.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Result<Self> {
        let mut set = VertexSet::EMPTY;
        for i in indices {
            set = set.insert(VertexId::new(i)?);
        }
        Ok(set)
    }

    /// The set `{0, 1, .., n-1}`.
    pub fn full(n: usize) -> Result<Self> {
        if n > VertexId::CAPACITY {
            return Err(Error::TooManyVertices { n });
        }
        if n == 64 {
            Ok(VertexSet(u64::MAX))
        } else {
            Ok(VertexSet((1u64 << n) - 1))
        }
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, v: VertexId) -> bool {
        self.0 & (1 << v.0) != 0
    }

    #[must_use]
    pub const fn insert(self, v: VertexId) -> Self {
        VertexSet(self.0 | (1 << v.0))
    }

    #[must_use]
    pub const fn remove(self, v: VertexId) -> Self {
        VertexSet(self.0 & !(1 << v.0))
    }

    #[must_use]
    pub const fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[must_use]
    pub const fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[must_use]
    pub const fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub const fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<VertexId> {
        if self.is_empty() {
            None
        } else {
            Some(VertexId(self.0.trailing_zeros() as u8))
        }
    }

    /// Iterates members in ascending id order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// All subsets of `self` with exactly `k` members, ascending in the
    /// set ordering (lexicographic on sorted id lists).
    pub fn subsets_of_size(self, k: usize) -> SubsetsOfSize {
        SubsetsOfSize::new(self, k)
    }

    pub fn to_vec(self) -> Vec<VertexId> {
        self.iter().collect()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        iter.into_iter()
            .fold(VertexSet::EMPTY, |set, v| set.insert(v))
    }
}

impl IntoIterator for VertexSet {
    type Item = VertexId;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        // Lexicographic on the sorted id lists, NOT on the raw bits:
        // {0,5} sorts before {1,2} even though 0b100001 > 0b000110.
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone)]
pub struct Iter(u64);

impl Iterator for Iter {
    type Item = VertexId;

    fn next(&mut self) -> Option<VertexId> {
        if self.0 == 0 {
            return None;
        }
        let id = self.0.trailing_zeros() as u8;
        self.0 &= self.0 - 1;
        Some(VertexId(id))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Iterator over the `k`-element subsets of a fixed set, produced by
/// walking index combinations of the sorted member list.
pub struct SubsetsOfSize {
    members: Vec<VertexId>,
    indices: Vec<usize>,
    done: bool,
}

impl SubsetsOfSize {
    fn new(set: VertexSet, k: usize) -> Self {
        let members = set.to_vec();
        let done = k > members.len();
        SubsetsOfSize {
            members,
            indices: (0..k).collect(),
            done,
        }
    }
}

impl Iterator for SubsetsOfSize {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        if self.done {
            return None;
        }
        let subset: VertexSet = self.indices.iter().map(|&i| self.members[i]).collect();
        // Advance to the next index combination.
        let k = self.indices.len();
        let n = self.members.len();
        let mut pos = k;
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            if self.indices[pos] < n - (k - pos) {
                self.indices[pos] += 1;
                for later in pos + 1..k {
                    self.indices[later] = self.indices[later - 1] + 1;
                }
                break;
            }
        }
        Some(subset)
    }
}

/// Builds a [`VertexSet`] from integer literals; panics on indices >= 64.
/// Intended for tests and examples.
#[macro_export]
macro_rules! vset {
    ($($id:expr),* $(,)?) => {
        $crate::VertexSet::from_indices([$($id as usize),*]).expect("vertex id out of range")
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_ordering_is_lexicographic_on_sorted_lists() {
        assert!(vset![0, 5] < vset![1, 2]);
        assert!(vset![1] < vset![1, 2]);
        assert!(vset![0, 1, 2] < vset![0, 1, 3]);
        assert_eq!(vset![2, 0].cmp(&vset![0, 2]), Ordering::Equal);
    }

    #[test]
    fn iteration_is_ascending() {
        let ids: Vec<usize> = vset![5, 0, 63, 17].iter().map(VertexId::index).collect();
        assert_eq!(ids, [0, 5, 17, 63]);
    }

    #[test]
    fn subset_and_boolean_ops() {
        let a = vset![0, 2, 4];
        let b = vset![0, 1, 2, 3, 4];
        assert!(a.is_subset_of(b));
        assert!(!b.is_subset_of(a));
        assert_eq!(a.union(vset![1]), vset![0, 1, 2, 4]);
        assert_eq!(b.difference(a), vset![1, 3]);
        assert_eq!(a.intersection(vset![2, 3]), vset![2]);
        assert!(a.is_disjoint(vset![1, 3]));
    }

    #[test]
    fn subsets_of_size_enumerates_in_order() {
        let subsets: Vec<VertexSet> = vset![0, 1, 2, 3].subsets_of_size(2).collect();
        assert_eq!(
            subsets,
            vec![
                vset![0, 1],
                vset![0, 2],
                vset![0, 3],
                vset![1, 2],
                vset![1, 3],
                vset![2, 3]
            ]
        );
        let mut sorted = subsets.clone();
        sorted.sort();
        assert_eq!(subsets, sorted);
        assert_eq!(vset![0, 1].subsets_of_size(3).count(), 0);
        assert_eq!(vset![0, 1].subsets_of_size(0).count(), 1);
    }

    #[test]
    fn id_range_is_checked() {
        assert!(VertexId::new(63).is_ok());
        assert_eq!(
            VertexId::new(64),
            Err(Error::TooManyVertices { n: 65 })
        );
        assert_eq!(VertexSet::full(64).unwrap().len(), 64);
        assert!(VertexSet::full(65).is_err());
    }

    #[test]
    fn display_formats_members() {
        assert_eq!(vset![4, 0, 2].to_string(), "{0,2,4}");
        assert_eq!(VertexSet::EMPTY.to_string(), "{}");
    }
}
