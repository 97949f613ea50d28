//! Finite sets of positive vertex ids.
//!
//! Vertex `v` lives at bit `v - 1`, so ids up to 64 fit in a single inline word;
//! larger ids spill into extra words without changing the interface.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::Vertex;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    // No trailing zero words, so derived equality and hashing are canonical.
    words: SmallVec<[u64; 1]>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: Vertex) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    /// `{1, ..., n}`.
    pub fn range(n: u32) -> Self {
        (1..=n).collect()
    }

    /// Set with bit `i` of `mask` mapped to `labels[i]`.
    pub fn from_mask(mask: u64, labels: &[Vertex]) -> Self {
        let mut s = Self::new();
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            s.insert(labels[i]);
            m &= m - 1;
        }
        s
    }

    fn locate(v: Vertex) -> (usize, u64) {
        assert!(v >= 1, "vertex ids are positive");
        let i = (v - 1) as usize;
        (i / 64, 1u64 << (i % 64))
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        let (w, bit) = Self::locate(v);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & bit == 0;
        self.words[w] |= bit;
        fresh
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        let (w, bit) = Self::locate(v);
        if w >= self.words.len() || self.words[w] & bit == 0 {
            return false;
        }
        self.words[w] &= !bit;
        self.trim();
        true
    }

    pub fn contains(&self, v: Vertex) -> bool {
        if v == 0 {
            return false;
        }
        let (w, bit) = Self::locate(v);
        self.words.get(w).is_some_and(|x| x & bit != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.len() <= other.words.len()
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (a, b) in words.iter_mut().zip(&short.words) {
            *a |= b;
        }
        Self { words }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = Self {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        };
        s.trim();
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut words = self.words.clone();
        for (a, b) in words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        let mut s = Self { words };
        s.trim();
        s
    }

    pub fn with(&self, v: Vertex) -> Self {
        let mut s = self.clone();
        s.insert(v);
        s
    }

    pub fn without(&self, v: Vertex) -> Self {
        let mut s = self.clone();
        s.remove(v);
        s
    }

    pub fn first(&self) -> Option<Vertex> {
        self.iter().next()
    }

    pub fn last(&self) -> Option<Vertex> {
        let w = self.words.len().checked_sub(1)?;
        let top = 63 - self.words[w].leading_zeros();
        Some((w as u32) * 64 + top + 1)
    }

    /// Ascending iteration.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    /// The bit mask when every id is at most 64.
    pub fn as_word(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    /// Mask of this set relative to an ascending list of labels, or `None` when an
    /// element is missing from `labels` or `labels` is longer than 64.
    pub fn local_mask(&self, labels: &[Vertex]) -> Option<u64> {
        if labels.len() > 64 {
            return None;
        }
        let mut mask = 0u64;
        for v in self.iter() {
            let i = labels.binary_search(&v).ok()?;
            mask |= 1 << i;
        }
        Some(mask)
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros();
                self.current &= self.current - 1;
                return Some(self.index as u32 * 64 + bit + 1);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = Vertex;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl FromIterator<Vertex> for VertexSet {
    /// Panics on the id 0.
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut s = Self::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<const N: usize> From<[Vertex; N]> for VertexSet {
    fn from(vs: [Vertex; N]) -> Self {
        vs.into_iter().collect()
    }
}

impl From<&[Vertex]> for VertexSet {
    fn from(vs: &[Vertex]) -> Self {
        vs.iter().copied().collect()
    }
}

/// Lexicographic order on the ascending element sequences.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
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
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_and_large_ids_share_one_interface() {
        let mut s = VertexSet::from([3, 1, 64]);
        assert_eq!(s.to_vec(), vec![1, 3, 64]);
        assert_eq!(s.as_word(), Some(1 | 4 | (1 << 63)));
        s.insert(200);
        assert_eq!(s.as_word(), None);
        assert_eq!(s.last(), Some(200));
        assert!(s.contains(200) && !s.contains(199));
        s.remove(200);
        assert_eq!(s, VertexSet::from([1, 3, 64]));
        assert_eq!(s.as_word(), Some(1 | 4 | (1 << 63)));
    }

    #[test]
    fn set_algebra() {
        let a = VertexSet::from([1, 2, 3, 70]);
        let b = VertexSet::from([2, 70, 90]);
        assert_eq!(a.union(&b).to_vec(), vec![1, 2, 3, 70, 90]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2, 70]);
        assert_eq!(a.difference(&b).to_vec(), vec![1, 3]);
        assert_eq!(a.difference(&b).as_word(), Some(0b101));
        assert!(VertexSet::from([2, 70]).is_subset(&a));
        assert!(!b.is_subset(&a));
        assert!(VertexSet::new().is_subset(&a));
        assert!(VertexSet::from([1]).is_disjoint(&b));
    }

    #[test]
    fn lexicographic_order() {
        let mut v = vec![
            VertexSet::from([1, 3]),
            VertexSet::from([1, 2, 3]),
            VertexSet::new(),
            VertexSet::from([1, 2]),
        ];
        v.sort();
        let shown: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["{}", "{1,2}", "{1,2,3}", "{1,3}"]);
    }

    #[test]
    fn masks_round_trip() {
        let labels = [2, 5, 9, 11];
        let s = VertexSet::from([5, 11]);
        let m = s.local_mask(&labels).unwrap();
        assert_eq!(m, 0b1010);
        assert_eq!(VertexSet::from_mask(m, &labels), s);
        assert_eq!(VertexSet::from([3]).local_mask(&labels), None);
    }
}
