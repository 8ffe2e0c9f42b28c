//! Finite and dense embeddability witnesses.
//!
//! A finite configuration `F` embeds in `Y` when some translate `t + F`
//! lies inside `Y`; it embeds densely when the set of such `t` has positive
//! density. `X` embeds in `Y` when every finite piece of `X` does. On a
//! finite window the pieces are the contiguous traces `X ∩ [a, a + m)`:
//! any finite `F ⊆ X` of span below `m` sits inside one of them, and a
//! subset of an embedded trace embeds with the same shift.

use crate::density::{self, DensityEstimate};
use crate::error::{Error, Result};
use crate::intset::{IntSet, Window};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// A nonempty sorted set of distinct integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Pattern {
    elems: Vec<i64>,
}

impl Pattern {
    pub fn new(mut elems: Vec<i64>) -> Result<Self> {
        if elems.is_empty() {
            return Err(Error::input("pattern must be nonempty"));
        }
        elems.sort_unstable();
        elems.dedup();
        Ok(Pattern { elems })
    }

    /// `{0, d, 2d, ..., (k-1)d}`.
    pub fn progression(d: i64, k: u64) -> Result<Self> {
        if k == 0 || d < 1 {
            return Err(Error::input(format!("progression needs k >= 1 and d >= 1, got k={k}, d={d}")));
        }
        Pattern::new((0..k as i64).map(|i| i * d).collect())
    }

    pub fn elems(&self) -> &[i64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> i64 {
        self.elems[0]
    }

    pub fn max(&self) -> i64 {
        self.elems[self.elems.len() - 1]
    }

    pub fn span(&self) -> u64 {
        (self.max() - self.min()) as u64
    }

    pub fn shifted(&self, t: i64) -> Pattern {
        Pattern {
            elems: self.elems.iter().map(|x| x + t).collect(),
        }
    }

    /// Whether `t + self ⊆ y`.
    pub fn fits(&self, t: i64, y: &IntSet) -> bool {
        self.elems.iter().all(|&x| y.contains(t + x))
    }
}

impl TryFrom<Vec<i64>> for Pattern {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Pattern::new(v)
    }
}

impl From<Pattern> for Vec<i64> {
    fn from(p: Pattern) -> Self {
        p.elems
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedWitness {
    pub t: i64,
    pub pattern: Pattern,
}

impl EmbedWitness {
    pub fn verify(&self, y: &IntSet) -> bool {
        self.pattern.fits(self.t, y)
    }
}

fn check_fits(f: &Pattern, y: &IntSet, srange: Window) -> Result<()> {
    let yw = y.window();
    if srange.lo() + f.min() < yw.lo() || srange.hi() + f.max() > yw.hi() {
        return Err(Error::input(format!(
            "shift range {srange} moves the pattern [{}, {}] outside window {yw}",
            f.min(),
            f.max()
        )));
    }
    Ok(())
}

/// `{t ∈ srange : t + F ⊆ Y}`, computed one word at a time.
pub fn shift_set_of(f: &Pattern, y: &IntSet, srange: Window) -> Result<IntSet> {
    check_fits(f, y, srange)?;
    let nwords = (srange.len() as usize).div_ceil(64);
    let words = (0..nwords)
        .map(|i| {
            let base = srange.lo() + 64 * i as i64;
            f.elems().iter().fold(!0u64, |acc, &x| acc & y.word_at(base + x))
        })
        .collect();
    Ok(IntSet::from_words(srange, words))
}

/// Least `t ∈ srange` with `t + F ⊆ Y`.
pub fn embed_witness(f: &Pattern, y: &IntSet, srange: Window) -> Result<Option<EmbedWitness>> {
    Ok(shift_set_of(f, y, srange)?.min().map(|t| EmbedWitness {
        t,
        pattern: f.clone(),
    }))
}

/// Upper Banach estimate of the shift set of `F` in `Y`.
pub fn dense_embed_est(f: &Pattern, y: &IntSet, srange: Window, n: u64) -> Result<DensityEstimate> {
    density::upper_banach_est(&shift_set_of(f, y, srange)?, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddabilityReport {
    pub ok: bool,
    pub trace_len: u64,
    pub srange: Window,
    pub traces_checked: usize,
    pub failing_config: Option<Pattern>,
}

/// Checks every trace `X ∩ [a, a + m)` starting at a member `a` of X.
///
/// Traces starting off X are subsets of one that starts on X, so they add
/// nothing. For each trace the shift range is narrowed to the `t` keeping
/// `t + F` inside Y's window.
pub fn window_embeddable(x: &IntSet, y: &IntSet, m: u64, srange: Window) -> Result<EmbeddabilityReport> {
    if m == 0 {
        return Err(Error::input("trace length m must be >= 1"));
    }
    let starts = x.to_vec();
    let yw = y.window();
    let fails = |&a: &i64| -> bool {
        let f = trace(x, a, m);
        let lo = srange.lo().max(yw.lo() - f.min());
        let hi = srange.hi().min(yw.hi() - f.max());
        match Window::new(lo, hi) {
            Ok(s) => shift_set_of(&f, y, s).map_or(true, |set| set.is_empty()),
            Err(_) => true,
        }
    };
    let failing = starts.par_iter().find_first(|a| fails(a)).map(|&a| trace(x, a, m));
    Ok(EmbeddabilityReport {
        ok: failing.is_none(),
        trace_len: m,
        srange,
        traces_checked: starts.len(),
        failing_config: failing,
    })
}

/// `X ∩ [a, a + m)` for a member `a`.
fn trace(x: &IntSet, a: i64, m: u64) -> Pattern {
    let hi = a + m as i64 - 1;
    let elems = (a..=hi.min(x.window().hi())).filter(|&v| x.contains(v)).collect();
    Pattern { elems }
}

/// Least `(start, d)` with `start, start + d, ..., start + (k-1)d` all in A.
pub fn find_ap(a: &IntSet, k: u64) -> Result<Option<(i64, i64)>> {
    if k < 2 {
        return Err(Error::input("progression length k must be >= 2"));
    }
    let (Some(lo), Some(hi)) = (a.min(), a.max()) else {
        return Ok(None);
    };
    let dmax = (hi - lo) / (k as i64 - 1);
    let best = (1..=dmax)
        .into_par_iter()
        .filter_map(|d| {
            let f = Pattern::progression(d, k).ok()?;
            let s = Window::new(lo, hi - (k as i64 - 1) * d).ok()?;
            shift_set_of(&f, a, s).ok()?.min().map(|start| (start, d))
        })
        .min();
    Ok(best)
}

/// Upper Banach estimate of `{x : x, x + d, ..., x + (k-1)d ∈ Y}`.
pub fn ap_shift_density(y: &IntSet, d: i64, k: u64, n: u64) -> Result<DensityEstimate> {
    let f = Pattern::progression(d, k)?;
    let yw = y.window();
    let s = Window::new(yw.lo(), yw.hi() - f.span() as i64)
        .map_err(|_| Error::input(format!("progression of span {} does not fit in {yw}", f.span())))?;
    dense_embed_est(&f, y, s, n)
}
