//! Bohr sets with rational frequencies and a search for piecewise-Bohr
//! witnesses inside a given set.
//!
//! A Bohr set is `s + {x : ‖r_j·x‖ < ε for all j}` where `‖z‖` is the
//! distance from `z` to the nearest integer. With `r_j = p/q` the distance
//! is `min(px mod q, q - px mod q)/q`, so membership is an integer test.
//!
//! [`suggest_freqs`] ranks candidate frequencies by the magnitude of the
//! exponential sum over the set. It is a heuristic front end; every witness
//! returned by [`piecewise_bohr_search`] is checked member by member.

use crate::error::{Error, Result};
use crate::intset::{IntSet, Window};
use crate::ratio::{self, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Largest denominator tried by [`suggest_freqs`].
pub const DEFAULT_Q_MAX: i128 = 32;

/// Candidates are kept when their sum reaches this fraction of `|D|`.
pub const SPECTRUM_THRESHOLD: f64 = 0.1;

/// Cap on the number of shifts tried per spec.
pub const MAX_SHIFTS: i64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BohrSpec {
    #[serde(with = "ratio::serde_rat_vec")]
    pub freqs: Vec<Rat>,
    #[serde(with = "ratio::serde_rat")]
    pub eps: Rat,
    #[serde(default)]
    pub shift: i64,
}

impl BohrSpec {
    pub fn new(freqs: Vec<Rat>, eps: Rat, shift: i64) -> Result<Self> {
        let spec = BohrSpec { freqs, eps, shift };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.freqs.is_empty() {
            return Err(Error::input("a Bohr spec needs at least one frequency"));
        }
        if let Some(r) = self.freqs.iter().find(|r| r.is_negative() || **r >= Rat::one()) {
            return Err(Error::input(format!("frequency {} outside [0, 1)", ratio::fmt_rat(r))));
        }
        if !self.eps.is_positive() {
            return Err(Error::input("Bohr radius must be positive"));
        }
        Ok(())
    }

    /// Common period of the frequencies.
    pub fn period(&self) -> i128 {
        self.freqs.iter().fold(1i128, |acc, r| acc.lcm(r.denom()))
    }

    pub fn contains(&self, x: i64) -> bool {
        let y = (x - self.shift) as i128;
        let (en, ed) = (*self.eps.numer(), *self.eps.denom());
        self.freqs.iter().all(|r| {
            let (p, q) = (*r.numer(), *r.denom());
            let m = (p * y).rem_euclid(q);
            let dist = m.min(q - m);
            // dist/q < en/ed
            dist * ed < en * q
        })
    }
}

/// `‖r‖`, the distance from `r` to the nearest integer.
pub fn nearest_int_dist(r: &Rat) -> Rat {
    let f = r - r.floor();
    f.min(Rat::one() - f)
}

pub fn bohr_generate(spec: &BohrSpec, window: Window) -> IntSet {
    IntSet::from_fn(window, |x| spec.contains(x))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Containment {
    pub ok: bool,
    pub checked: u64,
    /// The first (at most 10) members of `S ∩ interval` missing from A.
    pub violations: Vec<i64>,
}

/// Whether `S ∩ interval ⊆ A`.
pub fn bohr_contained(s: &IntSet, a: &IntSet, interval: Window) -> Result<Containment> {
    if !s.window().contains_window(&interval) || !a.window().contains_window(&interval) {
        return Err(Error::input(format!(
            "interval {interval} must lie in both windows {} and {}",
            s.window(),
            a.window()
        )));
    }
    let mut checked = 0u64;
    let mut violations = Vec::new();
    for x in s.restrict(interval).iter() {
        checked += 1;
        if !a.contains(x) {
            violations.push(x);
            if violations.len() == 10 {
                break;
            }
        }
    }
    Ok(Containment {
        ok: violations.is_empty(),
        checked,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreqScore {
    #[serde(with = "ratio::serde_rat")]
    pub freq: Rat,
    /// `|Σ_{x ∈ D} e(p x / q)|`.
    pub magnitude: f64,
}

/// Exponential-sum magnitudes for every reduced `p/q` with `1 ≤ p ≤ q/2`
/// and `q ≤ q_max`, sorted by magnitude (descending) then `(q, p)`.
///
/// Frequencies `r` and `1 - r` give the same magnitude and the same Bohr
/// sets, so only the lower half is listed.
pub fn freq_spectrum(d: &IntSet, q_max: i128) -> Vec<FreqScore> {
    let members = d.to_vec();
    let mut scores: Vec<FreqScore> = (2..=q_max.max(2))
        .into_par_iter()
        .flat_map_iter(|q| {
            let mut classes = vec![0u64; q as usize];
            for &x in &members {
                classes[(x as i128).rem_euclid(q) as usize] += 1;
            }
            (1..=q / 2).filter(move |p| p.gcd(&q) == 1).map(move |p| {
                let (mut re, mut im) = (0f64, 0f64);
                for (r, &c) in classes.iter().enumerate() {
                    let angle = std::f64::consts::TAU * ((p * r as i128) % q) as f64 / q as f64;
                    re += c as f64 * angle.cos();
                    im += c as f64 * angle.sin();
                }
                FreqScore {
                    freq: Rat::new(p, q),
                    magnitude: re.hypot(im),
                }
            })
        })
        .collect();
    let key = |m: f64| (m * 1e6).round() as i64;
    scores.sort_by(|a, b| {
        key(b.magnitude)
            .cmp(&key(a.magnitude))
            .then(a.freq.denom().cmp(b.freq.denom()))
            .then(a.freq.numer().cmp(b.freq.numer()))
    });
    scores
}

/// Up to `k_max` frequencies whose exponential sum over D reaches
/// [`SPECTRUM_THRESHOLD`]`·|D|`, best first.
pub fn suggest_freqs(d: &IntSet, k_max: usize) -> Vec<Rat> {
    let floor = SPECTRUM_THRESHOLD * d.len() as f64;
    freq_spectrum(d, DEFAULT_Q_MAX)
        .into_iter()
        .filter(|s| s.magnitude >= floor && s.magnitude > 0.0)
        .take(k_max)
        .map(|s| s.freq)
        .collect()
}

/// Radii tried by default, largest first.
pub fn default_eps_grid() -> Vec<Rat> {
    [(1, 2), (1, 3), (1, 4), (1, 5), (3, 20), (1, 10), (1, 20)]
        .iter()
        .map(|&(p, q)| ratio::rat(p, q))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BohrWitness {
    pub spec: BohrSpec,
    /// Longest interval on which the Bohr set lies inside D.
    pub interval: Window,
    /// `|S ∩ interval| / |interval|`.
    #[serde(with = "ratio::serde_rat")]
    pub coverage: Rat,
    pub containment: Containment,
}

/// Longest interval of `w` avoiding every member of `bad`.
fn longest_clean(bad: &IntSet, w: Window) -> Window {
    let mut best = (w.lo(), 0i64);
    let mut start = w.lo();
    for x in bad.iter().chain(std::iter::once(w.hi() + 1)) {
        if x - start > best.1 {
            best = (start, x - start);
        }
        start = x + 1;
    }
    Window::with_len(best.0, best.1.max(0) as u64).unwrap_or(Window::point(w.lo()))
}

/// Searches Bohr specs built from subsets (size ≤ `k_max`) of the suggested
/// frequencies, radii from `eps_grid` (tried largest first) and shifts in
/// one period, for the longest interval of length ≥ `l_min` on which the
/// Bohr set lies inside D. Ties keep the first spec in search order.
///
/// When no frequency stands out, the single frequency `0` (the whole line)
/// is tried.
pub fn piecewise_bohr_search(d: &IntSet, k_max: usize, eps_grid: &[Rat], l_min: u64) -> Result<Option<BohrWitness>> {
    if k_max == 0 {
        return Err(Error::input("k_max must be at least 1"));
    }
    let pool = suggest_freqs(d, k_max.max(4));
    let mut subsets: Vec<Vec<Rat>> = Vec::new();
    for size in 1..=k_max.min(pool.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            subsets.push(idx.iter().map(|&i| pool[i]).collect());
            let Some(pos) = (0..size).rev().find(|&i| idx[i] < pool.len() - size + i) else {
                break;
            };
            idx[pos] += 1;
            for j in pos + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    if subsets.is_empty() {
        subsets.push(vec![Rat::zero()]);
    }
    let mut eps_sorted: Vec<Rat> = eps_grid.iter().copied().filter(|e| e.is_positive()).collect();
    eps_sorted.sort_by(|a, b| b.cmp(a));
    let mut candidates = Vec::new();
    for freqs in &subsets {
        for eps in &eps_sorted {
            let base = BohrSpec {
                freqs: freqs.clone(),
                eps: *eps,
                shift: 0,
            };
            let period = base.period().min(MAX_SHIFTS as i128) as i64;
            for shift in 0..period {
                candidates.push(BohrSpec { shift, ..base.clone() });
            }
        }
    }
    let w = d.window();
    let scored: Vec<(Window, IntSet)> = candidates
        .par_iter()
        .map(|spec| {
            let s = bohr_generate(spec, w);
            let bad = s.intersect(&d.complement_in(w));
            (longest_clean(&bad, w), s)
        })
        .collect();
    let mut best: Option<usize> = None;
    for (i, (iv, _)) in scored.iter().enumerate() {
        if iv.len() >= l_min.max(1) && best.is_none_or(|b| iv.len() > scored[b].0.len()) {
            best = Some(i);
        }
    }
    let Some(i) = best else {
        return Ok(None);
    };
    let (interval, s) = &scored[i];
    let containment = bohr_contained(s, d, *interval)?;
    Ok(Some(BohrWitness {
        spec: candidates[i].clone(),
        interval: *interval,
        coverage: ratio::frac(s.count_range(interval.lo(), interval.hi()) as u64, interval.len()),
        containment,
    }))
}
