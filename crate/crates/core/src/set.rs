// SPDX-License-Identifier: Apache-2.0
//! Dense vertex sets over `[0, n)` and a flat arena for storing many of them.

use smallvec::SmallVec;
use std::fmt;

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// Borrowed view of a vertex set: the universe size plus its bit words.
#[derive(Clone, Copy)]
pub struct SetRef<'a> {
    n: usize,
    words: &'a [u64],
}

impl<'a> SetRef<'a> {
    pub(crate) fn new(n: usize, words: &'a [u64]) -> Self {
        debug_assert_eq!(words.len(), words_for(n));
        SetRef { n, words }
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &'a [u64] {
        self.words
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v >> 6] >> (v & 63) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> Members<'a> {
        Members {
            words: self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_owned(&self) -> VertexSet {
        VertexSet {
            n: self.n,
            words: SmallVec::from_slice(self.words),
        }
    }

    pub fn intersects(&self, other: SetRef<'_>) -> bool {
        self.words
            .iter()
            .zip(other.words)
            .any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: SetRef<'_>) -> bool {
        self.words
            .iter()
            .zip(other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Number of members strictly below `v`.
    pub fn rank(&self, v: usize) -> usize {
        let w = v >> 6;
        let mut r: usize = self.words[..w].iter().map(|x| x.count_ones() as usize).sum();
        if v & 63 != 0 {
            r += (self.words[w] & ((1u64 << (v & 63)) - 1)).count_ones() as usize;
        }
        r
    }

    /// The member with exactly `i` members below it.
    pub fn select(&self, mut i: usize) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            let c = w.count_ones() as usize;
            if i < c {
                let mut x = w;
                for _ in 0..i {
                    x &= x - 1;
                }
                return Some(wi * 64 + x.trailing_zeros() as usize);
            }
            i -= c;
        }
        None
    }
}

pub struct Members<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Members<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// An owned subset of `[0, n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: SmallVec<[u64; 4]>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            words: SmallVec::from_elem(0, words_for(n)),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for w in s.words.iter_mut() {
            *w = !0;
        }
        s.trim();
        s
    }

    /// Members `lo..hi` (clamped to the universe).
    pub fn range(n: usize, lo: usize, hi: usize) -> Self {
        let mut s = Self::empty(n);
        for v in lo..hi.min(n) {
            s.insert(v);
        }
        s
    }

    /// Panics if a member is outside the universe.
    pub fn from_members<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Self {
        let mut s = Self::empty(n);
        for v in members {
            assert!(v < n, "vertex {v} outside universe of size {n}");
            s.insert(v);
        }
        s
    }

    /// Bits above `n` are cleared.
    pub fn from_words(n: usize, words: &[u64]) -> Self {
        let mut s = VertexSet {
            n,
            words: SmallVec::from_slice(words),
        };
        s.trim();
        s
    }

    fn trim(&mut self) {
        if self.n % 64 != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << (self.n % 64)) - 1;
            }
        }
    }

    pub fn as_ref(&self) -> SetRef<'_> {
        SetRef::new(self.n, &self.words)
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.n);
        self.words[v >> 6] |= 1u64 << (v & 63);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < self.n);
        self.words[v >> 6] &= !(1u64 << (v & 63));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.as_ref().contains(v)
    }

    pub fn len(&self) -> usize {
        self.as_ref().len()
    }

    pub fn is_empty(&self) -> bool {
        self.as_ref().is_empty()
    }

    pub fn iter(&self) -> Members<'_> {
        self.as_ref().iter()
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub fn union_with(&mut self, other: SetRef<'_>) {
        for (a, b) in self.words.iter_mut().zip(other.words()) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: SetRef<'_>) {
        for (a, b) in self.words.iter_mut().zip(other.words()) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: SetRef<'_>) {
        for (a, b) in self.words.iter_mut().zip(other.words()) {
            *a &= !b;
        }
    }

    pub fn rank(&self, v: usize) -> usize {
        self.as_ref().rank(v)
    }

    pub fn select(&self, i: usize) -> Option<usize> {
        self.as_ref().select(i)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Debug for SetRef<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl<'a> From<&'a VertexSet> for SetRef<'a> {
    fn from(s: &'a VertexSet) -> Self {
        s.as_ref()
    }
}

/// Many equal-universe sets stored back to back with a fixed stride.
#[derive(Clone, PartialEq, Eq)]
pub struct SetFamily {
    n: usize,
    stride: usize,
    words: Vec<u64>,
}

impl SetFamily {
    pub fn new(n: usize) -> Self {
        SetFamily {
            n,
            stride: words_for(n),
            words: Vec::new(),
        }
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        if self.stride == 0 {
            // n = 0: every set is empty, track count in the word buffer length instead.
            self.words.len()
        } else {
            self.words.len() / self.stride
        }
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn push(&mut self, s: SetRef<'_>) {
        assert_eq!(s.universe(), self.n, "universe mismatch");
        if self.stride == 0 {
            self.words.push(0);
        } else {
            self.words.extend_from_slice(s.words());
        }
    }

    /// Appends an empty set and returns its words for in-place filling.
    pub fn push_empty(&mut self) -> &mut [u64] {
        if self.stride == 0 {
            self.words.push(0);
            return &mut [];
        }
        let start = self.words.len();
        self.words.resize(start + self.stride, 0);
        &mut self.words[start..]
    }

    /// Appends `count` empty sets and returns their words, `stride` per set.
    pub fn push_empty_n(&mut self, count: usize) -> &mut [u64] {
        if self.stride == 0 {
            self.words.resize(self.words.len() + count, 0);
            return &mut [];
        }
        let start = self.words.len();
        self.words.resize(start + count * self.stride, 0);
        &mut self.words[start..]
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn get(&self, i: usize) -> SetRef<'_> {
        if self.stride == 0 {
            assert!(i < self.words.len());
            return SetRef::new(0, &[]);
        }
        SetRef::new(self.n, &self.words[i * self.stride..(i + 1) * self.stride])
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = SetRef<'_>> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    pub fn extend_from(&mut self, other: &SetFamily) {
        assert_eq!(other.n, self.n, "universe mismatch");
        self.words.extend_from_slice(&other.words);
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_select_roundtrip() {
        let s = VertexSet::from_members(200, [0, 5, 63, 64, 65, 130, 199]);
        for (i, v) in s.iter().enumerate() {
            assert_eq!(s.rank(v), i);
            assert_eq!(s.select(i), Some(v));
        }
        assert_eq!(s.select(7), None);
        assert_eq!(s.rank(200 - 1), 6);
    }

    #[test]
    fn full_is_trimmed() {
        let s = VertexSet::full(70);
        assert_eq!(s.len(), 70);
        assert_eq!(s.iter().last(), Some(69));
    }

    #[test]
    fn family_roundtrip() {
        let mut f = SetFamily::new(100);
        let a = VertexSet::from_members(100, [1, 99]);
        f.push(a.as_ref());
        f.push_empty()[0] = 0b110;
        assert_eq!(f.len(), 2);
        assert_eq!(f.get(0).iter().collect::<Vec<_>>(), vec![1, 99]);
        assert_eq!(f.get(1).iter().collect::<Vec<_>>(), vec![1, 2]);
    }
}
