//! Windowed integer sets with one bit per window element.
//!
//! An [`IntSet`] never holds a member outside its [`Window`]. Binary
//! operations follow fixed window rules:
//!
//! * `sumset(A, B)` lives on `[A.lo + B.lo, A.hi + B.hi]`,
//! * `difference_set(A, B)` on `[A.lo - B.hi, A.hi - B.lo]`,
//! * `intersect(A, B)` on the overlap of the two windows,
//! * `union(A, B)` on their hull.
//!
//! When a result has no integer room at all (disjoint windows for
//! `intersect`, an empty quotient range) the result is the empty set on a
//! one-point window; see the individual methods.

use crate::error::{Error, Result};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;

const WORD: usize = 64;

/// A closed integer interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct Window {
    lo: i64,
    hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::input(format!("empty window [{lo}, {hi}]")));
        }
        Ok(Window { lo, hi })
    }

    /// `[lo, lo + len - 1]`; `len` must be positive.
    pub fn with_len(lo: i64, len: u64) -> Result<Self> {
        if len == 0 {
            return Err(Error::input("window length must be positive"));
        }
        Window::new(lo, lo + len as i64 - 1)
    }

    pub fn point(x: i64) -> Self {
        Window { lo: x, hi: x }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    /// Number of integers in the window, always at least 1.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> u64 {
        (self.hi - self.lo) as u64 + 1
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_window(&self, other: &Window) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlap(&self, other: &Window) -> Option<Window> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Window { lo, hi })
    }

    pub fn hull(&self, other: &Window) -> Window {
        Window {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn shifted(&self, t: i64) -> Window {
        Window {
            lo: self.lo + t,
            hi: self.hi + t,
        }
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    /// Parses `lo..hi` (inclusive), also accepting `lo,hi`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (a, b) = s
            .split_once("..")
            .or_else(|| s.split_once(','))
            .ok_or_else(|| Error::Parse(format!("expected lo..hi, got {s:?}")))?;
        let b = b.strip_prefix('=').unwrap_or(b);
        let lo = a
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad window bound {a:?}")))?;
        let hi = b
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad window bound {b:?}")))?;
        Window::new(lo, hi)
    }
}

impl TryFrom<(i64, i64)> for Window {
    type Error = Error;

    fn try_from((lo, hi): (i64, i64)) -> Result<Self> {
        Window::new(lo, hi)
    }
}

impl From<Window> for (i64, i64) {
    fn from(w: Window) -> Self {
        (w.lo, w.hi)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A set of integers materialized on a window, one bit per element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntSet {
    window: Window,
    words: Vec<u64>,
    count: usize,
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<i64> = self.iter().take(32).collect();
        write!(f, "IntSet{{window: {}, count: {}, members: {:?}", self.window, self.count, shown)?;
        if self.count > shown.len() {
            write!(f, " ...")?;
        }
        write!(f, "}}")
    }
}

#[derive(Serialize, Deserialize)]
struct IntSetRepr {
    window: Window,
    members: Vec<i64>,
}

impl Serialize for IntSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IntSetRepr {
            window: self.window,
            members: self.to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = IntSetRepr::deserialize(d)?;
        IntSet::from_members(r.members, r.window).map_err(serde::de::Error::custom)
    }
}

fn words_for(len: u64) -> usize {
    (len as usize).div_ceil(WORD)
}

impl IntSet {
    pub fn empty(window: Window) -> Self {
        IntSet {
            window,
            words: vec![0; words_for(window.len())],
            count: 0,
        }
    }

    pub fn full(window: Window) -> Self {
        let mut words = vec![u64::MAX; words_for(window.len())];
        mask_tail(&mut words, window.len());
        IntSet {
            window,
            words,
            count: window.len() as usize,
        }
    }

    /// Builds a set from members, deduplicating; a member outside the window is an error.
    pub fn from_members<I: IntoIterator<Item = i64>>(members: I, window: Window) -> Result<Self> {
        let mut words = vec![0u64; words_for(window.len())];
        for x in members {
            if !window.contains(x) {
                return Err(Error::OutOfWindow {
                    member: x,
                    lo: window.lo,
                    hi: window.hi,
                });
            }
            let i = (x - window.lo) as usize;
            words[i / WORD] |= 1 << (i % WORD);
        }
        Ok(Self::from_words(window, words))
    }

    /// Members given as a sorted-or-not list; window is `[min, max]`.
    pub fn from_members_tight(members: &[i64]) -> Result<Self> {
        let lo = *members
            .iter()
            .min()
            .ok_or_else(|| Error::input("cannot infer a window from an empty member list"))?;
        let hi = *members.iter().max().unwrap();
        Self::from_members(members.iter().copied(), Window::new(lo, hi)?)
    }

    pub fn from_fn(window: Window, mut pred: impl FnMut(i64) -> bool) -> Self {
        let mut words = vec![0u64; words_for(window.len())];
        for (i, x) in window.iter().enumerate() {
            if pred(x) {
                words[i / WORD] |= 1 << (i % WORD);
            }
        }
        Self::from_words(window, words)
    }

    /// Wraps raw words (bit `i` encodes `window.lo + i`), clearing bits past the window.
    pub fn from_words(window: Window, mut words: Vec<u64>) -> Self {
        words.resize(words_for(window.len()), 0);
        mask_tail(&mut words, window.len());
        let count = popcount(&words);
        IntSet {
            window,
            words,
            count,
        }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Cached cardinality.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Cardinality recomputed from storage.
    pub fn recount(&self) -> usize {
        popcount(&self.words)
    }

    /// Membership; positions outside the window are never members.
    pub fn contains(&self, x: i64) -> bool {
        if !self.window.contains(x) {
            return false;
        }
        let i = (x - self.window.lo) as usize;
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn iter(&self) -> Members<'_> {
        Members {
            set: self,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<i64> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<i64> {
        self.iter().next()
    }

    pub fn max(&self) -> Option<i64> {
        for (wi, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                let bit = WORD - 1 - w.leading_zeros() as usize;
                return Some(self.window.lo + (wi * WORD + bit) as i64);
            }
        }
        None
    }

    /// The 64 membership bits for positions `pos, pos + 1, ..., pos + 63`.
    pub fn word_at(&self, pos: i64) -> u64 {
        let len = self.window.len() as i64;
        let r = pos - self.window.lo;
        if r >= len || r <= -(WORD as i64) {
            return 0;
        }
        if r < 0 {
            return self.words[0] << (-r) as u32;
        }
        let r = r as usize;
        let (idx, off) = (r / WORD, r % WORD);
        let lo = self.words[idx] >> off;
        if off == 0 {
            return lo;
        }
        let hi = self.words.get(idx + 1).map_or(0, |w| w << (WORD - off));
        lo | hi
    }

    /// `|self ∩ [a, b]|`, clipped to the window.
    pub fn count_range(&self, a: i64, b: i64) -> usize {
        let a = a.max(self.window.lo);
        let b = b.min(self.window.hi);
        if a > b {
            return 0;
        }
        let i = (a - self.window.lo) as usize;
        let j = (b - self.window.lo) as usize + 1;
        count_bits(&self.words, i, j)
    }

    /// `A + t`, on the shifted window.
    pub fn shift(&self, t: i64) -> IntSet {
        IntSet {
            window: self.window.shifted(t),
            words: self.words.clone(),
            count: self.count,
        }
    }

    /// The same members re-anchored so that the window starts at `lo`.
    pub fn rebase(&self, lo: i64) -> IntSet {
        self.shift(lo - self.window.lo)
    }

    /// `A ∩ W` materialized on `W`. This is the one explicit clipping operation.
    pub fn restrict(&self, w: Window) -> IntSet {
        let mut words = vec![0u64; words_for(w.len())];
        for (k, slot) in words.iter_mut().enumerate() {
            *slot = self.word_at(w.lo + (k * WORD) as i64);
        }
        IntSet::from_words(w, words)
    }

    /// `{-x : x ∈ A}` on `[-hi, -lo]`.
    pub fn reflect(&self) -> IntSet {
        let w = Window {
            lo: -self.window.hi,
            hi: -self.window.lo,
        };
        let len = self.window.len() as usize;
        let mut words = vec![0u64; self.words.len()];
        for x in self.iter() {
            let i = len - 1 - (x - self.window.lo) as usize;
            words[i / WORD] |= 1 << (i % WORD);
        }
        IntSet {
            window: w,
            words,
            count: self.count,
        }
    }

    /// `A + B = {a + b}` on `[A.lo + B.lo, A.hi + B.hi]`, accumulated as
    /// shifted word-parallel ORs of the larger operand.
    pub fn sumset(&self, other: &IntSet) -> IntSet {
        let w = Window {
            lo: self.window.lo + other.window.lo,
            hi: self.window.hi + other.window.hi,
        };
        let (small, large) = if self.count <= other.count {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = vec![0u64; words_for(w.len())];
        let total = w.len() as usize;
        for s in small.iter() {
            or_shifted(&mut words, &large.words, (s - small.window.lo) as usize, total);
        }
        IntSet::from_words(w, words)
    }

    /// `A - B = {a - b}` on `[A.lo - B.hi, A.hi - B.lo]`.
    pub fn difference_set(&self, other: &IntSet) -> IntSet {
        self.sumset(&other.reflect())
    }

    /// `Δ(A) = A - A`.
    pub fn delta_set(&self) -> IntSet {
        self.difference_set(self)
    }

    /// `hB = {h·b}`; `h = 0` is rejected.
    pub fn dilate(&self, h: i64) -> Result<IntSet> {
        if h == 0 {
            return Err(Error::input("dilation factor must be nonzero"));
        }
        let (lo, hi) = if h > 0 {
            (h * self.window.lo, h * self.window.hi)
        } else {
            (h * self.window.hi, h * self.window.lo)
        };
        IntSet::from_members(self.iter().map(|b| h * b), Window { lo, hi })
    }

    /// `B/h = {x : h·x ∈ B}`.
    ///
    /// For `h ≠ 0` the result window is the set of `x` with `h·x` inside
    /// B's window; when no integer qualifies, the result is empty on the
    /// one-point window at the rounded bound. For `h = 0` the result is on
    /// B's window: full when `0 ∈ B`, empty otherwise.
    pub fn quotient(&self, h: i64) -> IntSet {
        if h == 0 {
            return if self.contains(0) {
                IntSet::full(self.window)
            } else {
                IntSet::empty(self.window)
            };
        }
        let (a, b) = if h > 0 {
            (Integer::div_ceil(&self.window.lo, &h), Integer::div_floor(&self.window.hi, &h))
        } else {
            (Integer::div_ceil(&self.window.hi, &h), Integer::div_floor(&self.window.lo, &h))
        };
        if a > b {
            return IntSet::empty(Window::point(a));
        }
        let w = Window { lo: a, hi: b };
        IntSet::from_fn(w, |x| self.contains(h * x))
    }

    /// `A ∩ B` on the overlap of the windows (empty on a one-point window if disjoint).
    pub fn intersect(&self, other: &IntSet) -> IntSet {
        match self.window.overlap(&other.window) {
            Some(w) => {
                let mut words = vec![0u64; words_for(w.len())];
                for (k, slot) in words.iter_mut().enumerate() {
                    let p = w.lo + (k * WORD) as i64;
                    *slot = self.word_at(p) & other.word_at(p);
                }
                IntSet::from_words(w, words)
            }
            None => IntSet::empty(Window::point(self.window.lo.max(other.window.lo))),
        }
    }

    /// `A ∪ B` on the hull of the windows.
    pub fn union(&self, other: &IntSet) -> IntSet {
        let w = self.window.hull(&other.window);
        let mut words = vec![0u64; words_for(w.len())];
        for (k, slot) in words.iter_mut().enumerate() {
            let p = w.lo + (k * WORD) as i64;
            *slot = self.word_at(p) | other.word_at(p);
        }
        IntSet::from_words(w, words)
    }

    /// `W ∖ A` on `W`.
    pub fn complement_in(&self, w: Window) -> IntSet {
        let mut words = vec![0u64; words_for(w.len())];
        for (k, slot) in words.iter_mut().enumerate() {
            *slot = !self.word_at(w.lo + (k * WORD) as i64);
        }
        IntSet::from_words(w, words)
    }

    /// Whether every member of `self` is a member of `other`.
    pub fn is_subset(&self, other: &IntSet) -> bool {
        self.words.iter().enumerate().all(|(k, &w)| {
            w & !other.word_at(self.window.lo + (k * WORD) as i64) == 0
        })
    }

    /// Same members, regardless of windows.
    pub fn same_members(&self, other: &IntSet) -> bool {
        self.count == other.count && self.is_subset(other)
    }

    /// `|{x ∈ self : x + t ∈ other}|`, word-parallel.
    pub fn count_shift_meet(&self, other: &IntSet, t: i64) -> usize {
        self.words
            .iter()
            .enumerate()
            .map(|(k, &w)| {
                if w == 0 {
                    0
                } else {
                    (w & other.word_at(self.window.lo + (k * WORD) as i64 + t)).count_ones() as usize
                }
            })
            .sum()
    }

    /// `{x ∈ W : x ∈ A and x + t ∈ A}` materialized on `W`, i.e. `A ∩ (A - t)` restricted.
    pub fn meet_shift_on(&self, t: i64, w: Window) -> IntSet {
        let mut words = vec![0u64; words_for(w.len())];
        for (k, slot) in words.iter_mut().enumerate() {
            let p = w.lo + (k * WORD) as i64;
            *slot = self.word_at(p) & self.word_at(p + t);
        }
        IntSet::from_words(w, words)
    }
}

pub struct Members<'a> {
    set: &'a IntSet,
    word_idx: usize,
    current: u64,
}

impl Iterator for Members<'_> {
    type Item = i64;

    fn next(&mut self) -> Option<i64> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.set.window.lo + (self.word_idx * WORD + bit) as i64);
            }
            self.word_idx += 1;
            self.current = *self.set.words.get(self.word_idx)?;
        }
    }
}

fn mask_tail(words: &mut [u64], len: u64) {
    let rem = (len as usize) % WORD;
    if rem != 0 {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << rem) - 1;
        }
    }
}

fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// Set bits in bit positions `[i, j)`.
fn count_bits(words: &[u64], i: usize, j: usize) -> usize {
    if i >= j {
        return 0;
    }
    let (wi, wj) = (i / WORD, (j - 1) / WORD);
    let lo_mask = u64::MAX << (i % WORD);
    let hi_mask = u64::MAX >> (WORD - 1 - (j - 1) % WORD);
    if wi == wj {
        return (words[wi] & lo_mask & hi_mask).count_ones() as usize;
    }
    let mut c = (words[wi] & lo_mask).count_ones() as usize;
    c += popcount(&words[wi + 1..wj]);
    c + (words[wj] & hi_mask).count_ones() as usize
}

/// `dst |= src << offset` (in bit positions), with `dst` holding `total` bits.
fn or_shifted(dst: &mut [u64], src: &[u64], offset: usize, total: usize) {
    let (base, sh) = (offset / WORD, offset % WORD);
    let limit = total.div_ceil(WORD);
    for (i, &w) in src.iter().enumerate() {
        if w == 0 {
            continue;
        }
        let k = base + i;
        if k < limit {
            dst[k] |= w << sh;
        }
        if sh != 0 && k + 1 < limit {
            dst[k + 1] |= w >> (WORD - sh);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn w(lo: i64, hi: i64) -> Window {
        Window::new(lo, hi).unwrap()
    }

    fn set(m: &[i64], lo: i64, hi: i64) -> IntSet {
        IntSet::from_members(m.iter().copied(), w(lo, hi)).unwrap()
    }

    #[test]
    fn make_set_dedups_and_checks_window() {
        let a = set(&[1, 2, 2, 3], 0, 10);
        assert_eq!(a.to_vec(), vec![1, 2, 3]);
        assert_eq!(a.len(), 3);
        let e = set(&[], 0, 10);
        assert!(e.is_empty());
        assert!(matches!(
            IntSet::from_members([0, 5], w(0, 4)),
            Err(Error::OutOfWindow { member: 5, .. })
        ));
        assert!(Window::new(3, 2).is_err());
    }

    #[test]
    fn shift_examples() {
        let a = set(&[1, 3], 0, 4).shift(2);
        assert_eq!(a.window(), w(2, 6));
        assert_eq!(a.to_vec(), vec![3, 5]);
        let b = set(&[0], 0, 0).shift(-7);
        assert_eq!(b.window(), w(-7, -7));
        assert_eq!(b.to_vec(), vec![-7]);
        let c = set(&[1, 3], 0, 4);
        assert_eq!(c.shift(0), c);
    }

    #[test]
    fn difference_examples() {
        let a = set(&[0, 3, 6], 0, 6);
        let d = a.difference_set(&a);
        assert_eq!(d.window(), w(-6, 6));
        assert_eq!(d.to_vec(), vec![-6, -3, 0, 3, 6]);
        let five = set(&[5], 0, 9);
        let two = set(&[2], 0, 9);
        assert_eq!(five.difference_set(&two).to_vec(), vec![3]);
        let evens = IntSet::from_fn(w(0, 20), |x| x % 2 == 0);
        let odds = IntSet::from_fn(w(0, 20), |x| x % 2 != 0);
        let d = evens.difference_set(&odds);
        let expect: Vec<i64> = (-20..=20).filter(|x| x % 2 != 0).collect();
        assert_eq!(d.to_vec(), expect);
    }

    #[test]
    fn sumset_examples() {
        assert_eq!(
            set(&[0, 1], 0, 1).sumset(&set(&[0, 10], 0, 10)).to_vec(),
            vec![0, 1, 10, 11]
        );
        let a = set(&[2, 5, 9], 0, 10);
        assert!(a.sumset(&set(&[0], 0, 0)).same_members(&a));
        assert_eq!(set(&[1, 2], 1, 2).sumset(&set(&[1, 2], 1, 2)).to_vec(), vec![2, 3, 4]);
    }

    #[test]
    fn delta_examples() {
        let a = IntSet::from_fn(w(0, 99), |x| x % 3 == 0);
        let expect: Vec<i64> = (-99..=99).filter(|x| x % 3 == 0).collect();
        assert_eq!(a.delta_set().to_vec(), expect);
        assert_eq!(set(&[7], 0, 9).delta_set().to_vec(), vec![0]);
        assert!(set(&[], 0, 9).delta_set().is_empty());
    }

    #[test]
    fn dilate_and_quotient_examples() {
        assert_eq!(set(&[1, 2, 3], 0, 3).dilate(2).unwrap().to_vec(), vec![2, 4, 6]);
        let b = set(&[1, 2, 3], 0, 3);
        assert_eq!(b.dilate(1).unwrap(), b);
        assert_eq!(set(&[-1, 1], -1, 1).dilate(-3).unwrap().to_vec(), vec![-3, 3]);
        assert!(b.dilate(0).is_err());

        let q = set(&[0, 2, 4, 5], 0, 5).quotient(2);
        assert_eq!(q.window(), w(0, 2));
        assert_eq!(q.to_vec(), vec![0, 1, 2]);
        let z = set(&[0, 3], -4, 4).quotient(0);
        assert_eq!(z.len(), 9);
        assert!(set(&[1, 3], 0, 4).quotient(0).is_empty());
        assert!(set(&[1, 3], 0, 4).quotient(2).is_empty());
        let neg = set(&[-4, 2], -4, 4).quotient(-2);
        assert_eq!(neg.to_vec(), vec![-1, 2]);
        let none = set(&[1], 1, 1).quotient(2);
        assert!(none.is_empty());
    }

    #[test]
    fn boolean_ops() {
        let evens = IntSet::from_fn(w(0, 9), |x| x % 2 == 0);
        assert_eq!(evens.complement_in(w(0, 9)).to_vec(), vec![1, 3, 5, 7, 9]);
        assert_eq!(evens.intersect(&evens), evens);
        let e = IntSet::empty(w(-3, 2));
        assert!(e.union(&evens).same_members(&evens));
        assert_eq!(e.union(&evens).window(), w(-3, 9));
        let far = set(&[100], 100, 120);
        let i = evens.intersect(&far);
        assert!(i.is_empty());
        let part = set(&[3, 4, 5, 6], 3, 6).intersect(&evens);
        assert_eq!(part.window(), w(3, 6));
        assert_eq!(part.to_vec(), vec![4, 6]);
    }

    #[test]
    fn word_at_and_counts() {
        let a = IntSet::from_fn(w(-70, 200), |x| x % 5 == 0);
        for p in [-200, -134, -70, -69, -10, 0, 63, 64, 150, 199, 300] {
            let got = a.word_at(p);
            for j in 0..64 {
                assert_eq!(got >> j & 1 == 1, a.contains(p + j), "p={p} j={j}");
            }
        }
        assert_eq!(a.count_range(-70, 200), a.len());
        assert_eq!(a.count_range(0, 9), 2);
        assert_eq!(a.count_range(-1000, -71), 0);
        assert_eq!(a.max(), Some(200));
        assert_eq!(a.min(), Some(-70));
    }

    fn brute_diff(a: &IntSet, b: &IntSet) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for x in a.iter() {
            for y in b.iter() {
                out.insert(x - y);
            }
        }
        out
    }

    fn arb_set() -> impl Strategy<Value = IntSet> {
        (-40i64..40, 1u64..130, any::<u64>(), any::<u64>(), any::<u64>()).prop_map(
            |(lo, len, s1, s2, s3)| {
                let win = Window::with_len(lo, len).unwrap();
                let bits = [s1, s2, s3];
                IntSet::from_fn(win, |x| {
                    let i = (x - lo) as usize % 192;
                    bits[i / 64] >> (i % 64) & 1 == 1
                })
            },
        )
    }

    proptest! {
        #[test]
        fn difference_matches_shift_meet(a in arb_set(), b in arb_set()) {
            let d = a.difference_set(&b);
            prop_assert_eq!(d.window(), Window::new(a.window().lo() - b.window().hi(), a.window().hi() - b.window().lo()).unwrap());
            let brute = brute_diff(&a, &b);
            prop_assert_eq!(d.iter().collect::<BTreeSet<_>>(), brute);
            for x in d.window().iter() {
                let via_shift = !b.shift(x).intersect(&a).is_empty();
                prop_assert_eq!(d.contains(x), via_shift);
            }
            prop_assert_eq!(d.len(), d.recount());
        }

        #[test]
        fn delta_symmetric(a in arb_set()) {
            let d = a.delta_set();
            for x in d.iter() {
                prop_assert!(d.contains(-x));
            }
            prop_assert_eq!(d.contains(0), !a.is_empty());
        }

        #[test]
        fn quotient_inverts_dilate(a in arb_set(), h in -5i64..=5) {
            prop_assume!(h != 0);
            let q = a.dilate(h).unwrap().quotient(h);
            prop_assert_eq!(q.window(), a.window());
            prop_assert_eq!(q, a);
        }

        #[test]
        fn counts_survive_every_op(a in arb_set(), b in arb_set(), t in -50i64..50) {
            for s in [a.shift(t), a.sumset(&b), a.intersect(&b), a.union(&b),
                      a.complement_in(b.window()), a.reflect(), a.restrict(b.window()),
                      a.meet_shift_on(t, b.window())] {
                prop_assert_eq!(s.len(), s.recount());
                for x in s.iter() { prop_assert!(s.window().contains(x)); }
            }
        }
    }
}
