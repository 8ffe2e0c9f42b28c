//! Witness extraction: dense local patterns and the difference-set pipelines
//! built on them.
//!
//! The core step takes `C ⊆ [1, N]` and a target density `γ`, finds every
//! offset `θ` whose forward prefixes all have density at least `γ`, groups
//! those offsets by the length-`n` trace `(C - θ) ∩ [1, n]`, and keeps one
//! trace `E` together with its class `Θ`. Every member of `Θ` is a shift
//! placing `E` inside `C`, and `E` inherits prefix density `γ`.
//!
//! [`common_pattern`] first aligns a long window of `A` with a short window
//! of `B` by pigeonhole, extracts from their intersection, and certifies
//! that the pattern sits densely in both sets.

use crate::cover::{self, ShiftCoverReport};
use crate::delta;
use crate::density::{self, DensityEstimate};
use crate::embed::Pattern;
use crate::error::{Error, Result};
use crate::intset::{IntSet, Window};
use crate::ratio::{self, Rat};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};

/// Default cap on the trace length for most-frequent extraction.
pub const DEFAULT_N_MAX: u64 = 16;

fn require_anchored(c: &IntSet, what: &str) -> Result<u64> {
    if c.window().lo() != 1 {
        return Err(Error::input(format!("{what} must live on [1, N], got {}", c.window())));
    }
    Ok(c.window().len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PigeonholeWitness {
    pub xbar: i64,
    pub count: u64,
    #[serde(with = "ratio::serde_rat")]
    pub ratio: Rat,
    #[serde(with = "ratio::serde_rat")]
    pub bound: Rat,
    pub holds: bool,
}

/// Least `x̄ ∈ [1, N]` maximizing `|(C - x̄) ∩ D|`, with the averaging bound
/// `|C|/N · |D|/ν - |D|/N`.
pub fn pigeonhole_shift(c: &IntSet, d: &IntSet) -> Result<PigeonholeWitness> {
    let n = require_anchored(c, "C")?;
    let nu = require_anchored(d, "D")?;
    let counts: Vec<u64> = (1..=n as i64)
        .into_par_iter()
        .map(|x| d.count_shift_meet(c, x) as u64)
        .collect();
    let (mut xbar, mut count) = (1i64, 0u64);
    for (i, &v) in counts.iter().enumerate() {
        if v > count {
            (xbar, count) = (i as i64 + 1, v);
        }
    }
    let ratio = ratio::frac(count, nu);
    let bound = ratio::frac(c.len() as u64, n) * ratio::frac(d.len() as u64, nu) - ratio::frac(d.len() as u64, n);
    Ok(PigeonholeWitness {
        xbar,
        count,
        holds: ratio >= bound,
        ratio,
        bound,
    })
}

/// The largest fraction `j/i < γ` with `1 ≤ i ≤ n` and `0 ≤ j ≤ i`.
pub fn gamma_floor(gamma: &Rat, n: u64) -> Result<Rat> {
    if !gamma.is_positive() || *gamma > Rat::one() || n == 0 {
        return Err(Error::input(format!(
            "gamma_floor needs 0 < gamma <= 1 and n >= 1, got gamma={}, n={n}",
            ratio::fmt_rat(gamma)
        )));
    }
    let best = (1..=n as i128)
        .map(|i| {
            let j = ratio::ceil(&(gamma * Rat::from_integer(i))) - 1;
            Rat::new(j.clamp(0, i), i)
        })
        .max()
        .unwrap();
    Ok(best)
}

/// `Γ = {θ ∈ [0, N - n] : |C ∩ [θ+1, θ+i]| ≥ γ·i for every 1 ≤ i ≤ n}`.
///
/// With `Q[j] = |C ∩ [1, j]|·den - num·j` the condition reads
/// `min_{θ < j ≤ θ+n} Q[j] ≥ Q[θ]`, evaluated with a sliding minimum.
pub fn gamma_region(c: &IntSet, n: u64, gamma: &Rat) -> Result<IntSet> {
    let big_n = require_anchored(c, "C")?;
    if n == 0 || n >= big_n {
        return Err(Error::input(format!("trace length n = {n} must satisfy 1 <= n < N = {big_n}")));
    }
    let (num, den) = (*gamma.numer(), *gamma.denom());
    let mut q = Vec::with_capacity(big_n as usize + 1);
    let mut p = 0i128;
    q.push(0i128);
    for j in 1..=big_n as i64 {
        p += c.contains(j) as i128;
        q.push(p * den - num * j as i128);
    }
    let span = big_n - n;
    let n = n as usize;
    let mut keep = vec![false; span as usize + 1];
    let mut dq: VecDeque<usize> = VecDeque::new();
    for j in 1..=n {
        while dq.back().is_some_and(|&b| q[b] >= q[j]) {
            dq.pop_back();
        }
        dq.push_back(j);
    }
    for theta in 0..=span as usize {
        if theta > 0 {
            let j = theta + n;
            while dq.back().is_some_and(|&b| q[b] >= q[j]) {
                dq.pop_back();
            }
            dq.push_back(j);
            while dq.front().is_some_and(|&f| f <= theta) {
                dq.pop_front();
            }
        }
        keep[theta] = q[*dq.front().unwrap()] >= q[theta];
    }
    Ok(IntSet::from_fn(Window::new(0, span as i64)?, |t| keep[t as usize]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockWalk {
    #[serde(with = "ratio::serde_rat")]
    pub gamma_n: Rat,
    /// `(|C|/N - γ_n - n/N) / (1 - γ_n)`.
    #[serde(with = "ratio::serde_rat")]
    pub bound: Rat,
    pub steps: u64,
    /// Walk positions that land in `Γ`.
    pub m_n: u64,
    pub gamma_size: u64,
    pub holds: bool,
}

/// Walks `θ_0 = 0`, `θ_{m+1} = θ_m + step(θ_m)` while `θ_m ≤ N - n`, where the
/// step is 1 on `Γ` and otherwise the least `i` whose prefix density drops
/// to `γ_n`. Checks `M·(1 - γ_n) > |C| - γ_n·N - n` and `|Γ| ≥ M`.
pub fn block_walk_bound(c: &IntSet, n: u64, gamma: &Rat) -> Result<BlockWalk> {
    let region = gamma_region(c, n, gamma)?;
    block_walk_on(c, n, gamma, &region)
}

fn block_walk_on(c: &IntSet, n: u64, gamma: &Rat, region: &IntSet) -> Result<BlockWalk> {
    let big_n = c.window().len();
    let gamma_n = gamma_floor(&(*gamma).min(Rat::one()), n)?;
    let span = (big_n - n) as i64;
    let (mut theta, mut steps, mut m_n) = (0i64, 0u64, 0u64);
    while theta <= span {
        steps += 1;
        if region.contains(theta) {
            m_n += 1;
            theta += 1;
            continue;
        }
        let mut cnt = 0u64;
        let mut step = n as i64;
        for i in 1..=n as i64 {
            cnt += c.contains(theta + i) as u64;
            if !ratio::count_at_least(cnt, gamma, i as u64) {
                step = i;
                break;
            }
        }
        theta += step;
    }
    let nn = Rat::from_integer(big_n as i128);
    let size = Rat::from_integer(c.len() as i128);
    let one_minus = Rat::one() - gamma_n;
    let bound = (size / nn - gamma_n - Rat::new(n as i128, big_n as i128)) / one_minus;
    let lhs = Rat::from_integer(m_n as i128) * one_minus;
    let rhs = size - gamma_n * nn - Rat::from_integer(n as i128);
    let gamma_size = region.len() as u64;
    Ok(BlockWalk {
        holds: lhs > rhs && gamma_size >= m_n,
        gamma_n,
        bound,
        steps,
        m_n,
        gamma_size,
    })
}

/// Which trace class is kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Selection {
    /// The most frequent trace (ties: lexicographically least pattern).
    /// Carries the `|Θ| ≥ |Γ| / 2ⁿ` guarantee.
    MostFrequent,
    /// The trace at the least offset in `Γ`. Suited to long traces, where
    /// classes are mostly singletons.
    LeastOffset,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractOptions {
    pub selection: Selection,
    pub n_max: u64,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            selection: Selection::MostFrequent,
            n_max: DEFAULT_N_MAX,
        }
    }
}

impl ExtractOptions {
    pub fn long() -> Self {
        ExtractOptions {
            selection: Selection::LeastOffset,
            n_max: u64::MAX,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionCertificate {
    pub n: u64,
    pub selection: Selection,
    #[serde(with = "ratio::serde_rat")]
    pub gamma: Rat,
    #[serde(with = "ratio::serde_rat")]
    pub gamma_n: Rat,
    pub e_prefix: Pattern,
    /// Schnirelmann density of `E` read inside `[1, n]`.
    #[serde(with = "ratio::serde_rat")]
    pub prefix_sigma: Rat,
    pub gamma_size: u64,
    /// Offsets `θ ∈ [0, N - n]` with `(C - θ) ∩ [1, n] = E`.
    pub theta: IntSet,
    /// `|Γ| / 2ⁿ` for most-frequent selection when representable.
    #[serde(with = "ratio::serde_rat_opt")]
    pub theta_bound: Option<Rat>,
    pub walk: BlockWalk,
}

impl ExtractionCertificate {
    pub fn theta_count(&self) -> u64 {
        self.theta.len() as u64
    }

    /// `E` as a set on `[1, n]`.
    pub fn e_set(&self) -> IntSet {
        IntSet::from_members(self.e_prefix.elems().iter().copied(), Window::new(1, self.n as i64).unwrap())
            .expect("trace lies in [1, n]")
    }
}

fn trace_key(c: &IntSet, theta: i64, n: u64) -> Vec<u64> {
    let words = (n as usize).div_ceil(64);
    let mut key: Vec<u64> = (0..words).map(|k| c.word_at(theta + 1 + 64 * k as i64)).collect();
    let rem = n % 64;
    if rem != 0 {
        *key.last_mut().unwrap() &= (1u64 << rem) - 1;
    }
    key
}

fn key_pattern(key: &[u64]) -> Vec<i64> {
    let mut out = Vec::new();
    for (k, &w) in key.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            out.push(64 * k as i64 + w.trailing_zeros() as i64 + 1);
            w &= w - 1;
        }
    }
    out
}

/// Most-frequent extraction with the default trace-length cap.
pub fn trace_extract(c: &IntSet, n: u64, gamma: &Rat) -> Result<ExtractionCertificate> {
    trace_extract_with(c, n, gamma, &ExtractOptions::default())
}

pub fn trace_extract_with(c: &IntSet, n: u64, gamma: &Rat, opts: &ExtractOptions) -> Result<ExtractionCertificate> {
    let big_n = require_anchored(c, "C")?;
    if n > opts.n_max || n + 1 > big_n {
        return Err(Error::input(format!(
            "trace length n = {n} must be at most min(N - 1, {}) with N = {big_n}",
            opts.n_max
        )));
    }
    if !gamma.is_positive() {
        return Err(Error::Infeasible(format!("extraction density {} is not positive", ratio::fmt_rat(gamma))));
    }
    let region = gamma_region(c, n, gamma)?;
    if region.is_empty() {
        return Err(Error::NoWitness(format!(
            "no offset has every prefix of density >= {}; lower gamma",
            ratio::fmt_rat(gamma)
        )));
    }
    let offsets = region.to_vec();
    let key = match opts.selection {
        Selection::LeastOffset => trace_key(c, offsets[0], n),
        Selection::MostFrequent => {
            let keys: Vec<Vec<u64>> = offsets.par_iter().map(|&t| trace_key(c, t, n)).collect();
            let mut counts: HashMap<&[u64], u64> = HashMap::new();
            for k in &keys {
                *counts.entry(k.as_slice()).or_default() += 1;
            }
            let top = *counts.values().max().unwrap();
            counts
                .into_iter()
                .filter(|&(_, v)| v == top)
                .map(|(k, _)| (key_pattern(k), k))
                .min()
                .map(|(_, k)| k.to_vec())
                .unwrap()
        }
    };
    let class: Vec<bool> = offsets.par_iter().map(|&t| trace_key(c, t, n) == key).collect();
    let mut idx = 0;
    let theta = IntSet::from_fn(region.window(), |t| {
        if region.contains(t) {
            idx += 1;
            class[idx - 1]
        } else {
            false
        }
    });
    let elems = key_pattern(&key);
    let gamma_size = region.len() as u64;
    let theta_bound = match opts.selection {
        Selection::MostFrequent if n < 120 => Some(Rat::new(gamma_size as i128, 1i128 << n)),
        _ => None,
    };
    Ok(ExtractionCertificate {
        n,
        selection: opts.selection,
        gamma: *gamma,
        gamma_n: gamma_floor(&(*gamma).min(Rat::one()), n)?,
        prefix_sigma: density::prefix_schnirelmann(&elems, n),
        e_prefix: Pattern::new(elems)?,
        gamma_size,
        theta,
        theta_bound,
        walk: block_walk_on(c, n, gamma, &region)?,
    })
}

/// Dense offsets recomputed with block prefix/suffix minima over blocks of
/// length `n`, independently of [`gamma_region`].
fn dense_offsets_by_blocks(c: &IntSet, n: u64, gamma: &Rat) -> Vec<bool> {
    let big_n = c.window().len() as usize;
    let n = n as usize;
    if n == 0 || n >= big_n {
        return Vec::new();
    }
    let (num, den) = (*gamma.numer(), *gamma.denom());
    let mut q = vec![0i128; big_n + 1];
    let mut run = 0i128;
    for (j, slot) in q.iter_mut().enumerate().skip(1) {
        run += c.contains(j as i64) as i128;
        *slot = run * den - num * j as i128;
    }
    let mut pre = q.clone();
    let mut suf = q.clone();
    for j in 1..=big_n {
        if j % n != 0 {
            pre[j] = pre[j].min(pre[j - 1]);
        }
    }
    for j in (0..big_n).rev() {
        if (j + 1) % n != 0 {
            suf[j] = suf[j].min(suf[j + 1]);
        }
    }
    (0..=big_n - n)
        .map(|theta| suf[theta + 1].min(pre[theta + n]) >= q[theta])
        .collect()
}

/// Re-checks an extraction certificate against `C`.
/// Returns the violated properties.
pub fn verify_extraction(c: &IntSet, cert: &ExtractionCertificate) -> Vec<String> {
    let mut out = Vec::new();
    let n = cert.n as i64;
    let e = cert.e_set();
    let mut cnt = 0u64;
    for i in 1..=n {
        cnt += e.contains(i) as u64;
        if !ratio::count_at_least(cnt, &cert.gamma, i as u64) {
            out.push(format!("prefix [1, {i}] of E has density below gamma"));
            break;
        }
    }
    let dense = dense_offsets_by_blocks(c, cert.n, &cert.gamma);
    let gamma_count = dense.iter().filter(|&&d| d).count() as u64;
    let e_words = e.words();
    for theta in cert.theta.iter() {
        if !dense.get(theta as usize).copied().unwrap_or(false) {
            out.push(format!("offset {theta} is not in the dense region"));
        }
        let differs = e_words.iter().enumerate().any(|(k, &wd)| {
            let rem = n - 64 * k as i64;
            let mask = if rem >= 64 { u64::MAX } else { (1u64 << rem) - 1 };
            c.word_at(theta + 1 + 64 * k as i64) & mask != wd
        });
        if differs {
            out.push(format!("trace at offset {theta} differs from E"));
        }
    }
    if gamma_count != cert.gamma_size {
        out.push(format!("dense region has {gamma_count} offsets, certificate says {}", cert.gamma_size));
    }
    if cert.theta.is_empty() {
        out.push("empty trace class".into());
    }
    if cert.selection == Selection::MostFrequent {
        let enough = if cert.n >= 120 {
            !cert.theta.is_empty()
        } else {
            (cert.theta_count() as u128) << cert.n >= cert.gamma_size as u128
        };
        if !enough {
            out.push("trace class below |Γ| / 2^n".into());
        }
    }
    if !cert.walk.holds {
        out.push("block walk inequality fails".into());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixCheck {
    /// Number of leading elements of `E` in the prefix.
    pub k: usize,
    pub shift_count: u64,
    #[serde(with = "ratio::serde_rat")]
    pub density: Rat,
    pub contains_theta: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternReport {
    pub window: DensityEstimate,
    #[serde(with = "ratio::serde_rat")]
    pub slack: Rat,
    pub cert: ExtractionCertificate,
    /// Least shift `s` with `s + E ⊆ A`, taken from the trace class.
    pub shift: i64,
    pub prefix_checks: Vec<PrefixCheck>,
    /// Lower bound `|Θ| / (N - n + 1)` for each prefix's shift-set density.
    #[serde(with = "ratio::serde_rat")]
    pub density_floor: Rat,
    pub violations: Vec<String>,
}

/// Extracts a pattern of length `n` from the densest length-`big_n` window
/// of A at density `α̂ - slack`, and checks that every prefix of it embeds
/// densely into A through the trace class.
pub fn extract_pattern(a: &IntSet, big_n: u64, n: u64, slack: Rat, opts: &ExtractOptions) -> Result<PatternReport> {
    let best = density::upper_banach_est(a, big_n)?;
    if best.value <= slack {
        return Err(Error::Infeasible(format!(
            "density estimate {} does not exceed slack {}",
            ratio::fmt_rat(&best.value),
            ratio::fmt_rat(&slack)
        )));
    }
    let at = best.at;
    let c = a.restrict(Window::with_len(at + 1, big_n)?).rebase(1);
    let cert = trace_extract_with(&c, n, &(best.value - slack), opts)?;
    let mut violations = verify_extraction(&c, &cert);
    let srange = Window::new(at, at + (big_n - n) as i64)?;
    let placed = cert.theta.shift(at);
    let elems = cert.e_prefix.elems();
    let mut shifts = IntSet::full(srange);
    let mut prefix_checks = Vec::with_capacity(elems.len());
    for (i, &e) in elems.iter().enumerate() {
        shifts = shifts.intersect(&a.restrict(srange.shifted(e)).rebase(srange.lo()));
        prefix_checks.push(PrefixCheck {
            k: i + 1,
            shift_count: shifts.len() as u64,
            density: ratio::frac(shifts.len() as u64, srange.len()),
            contains_theta: placed.is_subset(&shifts),
        });
    }
    let density_floor = ratio::frac(cert.theta_count(), srange.len());
    for p in &prefix_checks {
        if !p.contains_theta || p.density < density_floor {
            violations.push(format!("prefix of {} elements is not placed by every trace offset", p.k));
        }
    }
    Ok(PatternReport {
        shift: at + cert.theta.min().unwrap_or(0),
        window: best,
        slack,
        cert,
        prefix_checks,
        density_floor,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineParams {
    /// Length of the window taken from A.
    pub big_n: u64,
    /// Length of the window taken from B.
    pub nu: u64,
    /// Length of the extracted pattern.
    pub n: u64,
    #[serde(with = "ratio::serde_rat")]
    pub slack: Rat,
    /// Largest allowed `ν / N`.
    #[serde(with = "ratio::serde_rat")]
    pub max_nu_ratio: Rat,
    pub extract: ExtractOptions,
}

impl PipelineParams {
    /// `ν = N/100`, slack `1/50`, most-frequent extraction.
    pub fn new(big_n: u64, n: u64) -> Self {
        PipelineParams {
            big_n,
            nu: (big_n / 100).max(1),
            n,
            slack: ratio::rat(1, 50),
            max_nu_ratio: ratio::rat(1, 10),
            extract: ExtractOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommonPatternReport {
    pub params: PipelineParams,
    #[serde(with = "ratio::serde_rat")]
    pub alpha_hat: Rat,
    #[serde(with = "ratio::serde_rat")]
    pub beta_hat: Rat,
    /// A's window is `[omega + 1, omega + N]`.
    pub omega: i64,
    /// B's window is `[xi + 1, xi + ν]`.
    pub xi: i64,
    pub pigeonhole: PigeonholeWitness,
    pub w_count: u64,
    /// `|W|/ν ≥ α̂β̂ - ν/N`.
    pub w_bound_holds: bool,
    #[serde(with = "ratio::serde_rat")]
    pub gamma: Rat,
    pub cert: ExtractionCertificate,
    pub t_j: i64,
    pub j: Window,
    #[serde(with = "ratio::serde_rat")]
    pub eps_achieved: Rat,
    /// `xi + Θ ⊆ ⋂_{e ∈ E} (((A - t_J) ∩ B) - e)`, by direct recount.
    pub containment_holds: bool,
    /// `|⋂_{e ∈ E} (((A - t_J) ∩ B) - e) ∩ (xi + [0, ν - n])|`.
    pub meet_count: u64,
    /// `s_a + E ⊆ A` and `s_b + E ⊆ B` for every trace offset, with the least shifts.
    pub shift_a: i64,
    pub shift_b: i64,
    pub embeds_a: bool,
    pub embeds_b: bool,
    pub violations: Vec<String>,
}

/// Aligns the densest `N`-window of A with the densest `ν`-window of B,
/// intersects them, and extracts a pattern `E` from the intersection.
pub fn common_pattern(a: &IntSet, b: &IntSet, params: &PipelineParams) -> Result<CommonPatternReport> {
    let (big_n, nu, n) = (params.big_n, params.nu, params.n);
    if nu == 0 || Rat::new(nu as i128, big_n.max(1) as i128) > params.max_nu_ratio {
        return Err(Error::input(format!(
            "nu = {nu} must be positive and at most {} of N = {big_n}",
            ratio::fmt_rat(&params.max_nu_ratio)
        )));
    }
    let best_a = density::upper_banach_est(a, big_n)?;
    let best_b = density::upper_banach_est(b, nu)?;
    let (omega, xi) = (best_a.at, best_b.at);
    let c = a.restrict(Window::with_len(omega + 1, big_n)?).rebase(1);
    let d = b.restrict(Window::with_len(xi + 1, nu)?).rebase(1);
    let pig = pigeonhole_shift(&c, &d)?;
    let zeta = pig.xbar;
    let w = c.shift(-zeta).restrict(d.window()).intersect(&d);
    let (alpha_hat, beta_hat) = (best_a.value, best_b.value);
    let nu_over_n = Rat::new(nu as i128, big_n as i128);
    let w_bound_holds = ratio::frac(w.len() as u64, nu) >= alpha_hat * beta_hat - nu_over_n;
    let gamma = alpha_hat * beta_hat - params.slack - nu_over_n;
    if !gamma.is_positive() {
        return Err(Error::Infeasible(format!(
            "extraction density {} after slack and nu/N is not positive",
            ratio::fmt_rat(&gamma)
        )));
    }
    let cert = trace_extract_with(&w, n, &gamma, &params.extract)?;
    let mut violations = verify_extraction(&w, &cert);
    if !pig.holds {
        violations.push("pigeonhole bound fails".into());
    }
    if !w_bound_holds {
        violations.push("intersection density below alpha*beta - nu/N".into());
    }
    let t_j = omega + zeta - xi;
    let e = cert.e_prefix.elems();
    let thetas = cert.theta.to_vec();
    let in_meet = |x: i64| e.iter().all(|&ei| b.contains(x + ei) && a.contains(x + ei + t_j));
    let containment_holds = thetas.par_iter().all(|&th| in_meet(xi + th));
    let meet_count = (xi..=xi + (nu - n) as i64).into_par_iter().filter(|&x| in_meet(x)).count() as u64;
    let (shift_a, shift_b) = (omega + zeta + thetas[0], xi + thetas[0]);
    let embeds_a = thetas.iter().all(|&th| cert.e_prefix.fits(omega + zeta + th, a));
    let embeds_b = thetas.iter().all(|&th| cert.e_prefix.fits(xi + th, b));
    if !containment_holds {
        violations.push("trace offsets are not inside the shifted intersection".into());
    }
    if meet_count < cert.theta_count() {
        violations.push("intersection count below the trace class size".into());
    }
    if !(embeds_a && embeds_b) {
        violations.push("pattern does not embed through every trace offset".into());
    }
    Ok(CommonPatternReport {
        params: params.clone(),
        alpha_hat,
        beta_hat,
        omega,
        xi,
        pigeonhole: pig,
        w_count: w.len() as u64,
        w_bound_holds,
        gamma,
        eps_achieved: ratio::frac(cert.theta_count(), nu),
        cert,
        t_j,
        j: Window::with_len(xi + 1, nu)?,
        containment_holds,
        meet_count,
        shift_a,
        shift_b,
        embeds_a,
        embeds_b,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainParams {
    /// Window length taken from the first set.
    pub big_n: u64,
    /// `N/ν` at every later stage (at least 10).
    pub nu_divisor: u64,
    /// Length of the final pattern.
    pub n: u64,
    #[serde(with = "ratio::serde_rat")]
    pub slack: Rat,
    #[serde(with = "ratio::serde_rat")]
    pub eps: Rat,
    /// Estimator length for the Delta-set spot checks.
    pub delta_n: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStage {
    pub index: usize,
    pub big_n: u64,
    pub nu: Option<u64>,
    pub pattern_len: u64,
    #[serde(with = "ratio::serde_rat")]
    pub set_density: Rat,
    #[serde(with = "ratio::serde_rat")]
    pub gamma: Rat,
    #[serde(with = "ratio::serde_rat")]
    pub prefix_sigma: Rat,
    pub theta_count: u64,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub stages: Vec<ChainStage>,
    pub final_prefix: Pattern,
    #[serde(with = "ratio::serde_rat")]
    pub final_sigma: Rat,
    #[serde(with = "ratio::serde_rat")]
    pub product: Rat,
    /// Product bound after subtracting the per-stage slack and `ν/N` terms.
    #[serde(with = "ratio::serde_rat")]
    pub bound: Rat,
    pub bound_holds: bool,
    /// `shifts[i] + E ⊆ A_i`.
    pub shifts: Vec<i64>,
    pub shifts_verified: bool,
    /// Differences of the final pattern checked against every input set.
    pub checked_t: Vec<i64>,
    /// Pairs `(t, i)` with `t ∉ Δ̂_ε(A_i)`.
    pub delta_misses: Vec<(i64, usize)>,
    pub delta_asserted: bool,
    pub violations: Vec<String>,
}

fn stage_err(i: usize, e: Error) -> Error {
    match e {
        Error::Infeasible(m) => Error::Infeasible(format!("stage {i}: {m}")),
        Error::NoWitness(m) => Error::NoWitness(format!("stage {i}: {m}")),
        Error::Input(m) => Error::Input(format!("stage {i}: {m}")),
        other => other,
    }
}

/// Folds the pipeline over several sets: the pattern from each stage is
/// materialized and used as the long-window set of the next.
///
/// Intermediate patterns have half the short-window length so the next
/// stage has room; the last stage extracts `n` with most-frequent
/// selection.
pub fn chain_pattern(sets: &[IntSet], params: &ChainParams) -> Result<ChainReport> {
    if sets.is_empty() {
        return Err(Error::input("chain needs at least one set"));
    }
    if params.nu_divisor < 10 {
        return Err(Error::input("nu_divisor must be at least 10"));
    }
    let m = sets.len();
    let mut stages = Vec::new();
    let mut violations = Vec::new();
    let first_len = if m == 1 { params.n } else { params.big_n / 2 };
    let first_opts = if m == 1 { ExtractOptions::default() } else { ExtractOptions::long() };
    let r = extract_pattern(&sets[0], params.big_n, first_len, params.slack, &first_opts).map_err(|e| stage_err(0, e))?;
    let mut bound = r.window.value - params.slack;
    let mut product = r.window.value;
    let mut shifts = vec![r.shift];
    stages.push(ChainStage {
        index: 0,
        big_n: params.big_n,
        nu: None,
        pattern_len: first_len,
        set_density: r.window.value,
        gamma: r.cert.gamma,
        prefix_sigma: r.cert.prefix_sigma,
        theta_count: r.cert.theta_count(),
        violations: r.violations.clone(),
    });
    violations.extend(r.violations);
    let mut e = r.cert.e_set();
    let mut e_pattern = r.cert.e_prefix;
    for (i, set) in sets.iter().enumerate().skip(1) {
        let big_n = e.window().len();
        let nu = big_n / params.nu_divisor;
        let last = i + 1 == m;
        let pp = PipelineParams {
            big_n,
            nu,
            n: if last { params.n } else { nu / 2 },
            slack: params.slack,
            max_nu_ratio: ratio::rat(1, 10),
            extract: if last { ExtractOptions::default() } else { ExtractOptions::long() },
        };
        let r = common_pattern(&e, set, &pp).map_err(|err| stage_err(i, err))?;
        // E_new + shift_a ⊆ E_old, and E_old + shifts[j] ⊆ A_j
        for s in shifts.iter_mut() {
            *s += r.shift_a;
        }
        shifts.push(r.shift_b);
        bound = bound * r.beta_hat - params.slack - Rat::new(nu as i128, big_n as i128);
        product *= r.beta_hat;
        stages.push(ChainStage {
            index: i,
            big_n,
            nu: Some(nu),
            pattern_len: pp.n,
            set_density: r.beta_hat,
            gamma: r.gamma,
            prefix_sigma: r.cert.prefix_sigma,
            theta_count: r.cert.theta_count(),
            violations: r.violations.clone(),
        });
        violations.extend(r.violations.iter().map(|v| format!("stage {i}: {v}")));
        e = r.cert.e_set();
        e_pattern = r.cert.e_prefix;
    }
    let n_final = e.window().len();
    let final_sigma = density::prefix_schnirelmann(e_pattern.elems(), n_final);
    let bound_holds = final_sigma >= bound;
    if !bound_holds {
        violations.push("final Schnirelmann density below the accumulated product bound".into());
    }
    let shifts_verified = sets.iter().zip(&shifts).all(|(a, &s)| e_pattern.fits(s, a));
    if !shifts_verified {
        violations.push("tracked shift does not place the final pattern".into());
    }
    let half = (n_final / 2).max(1) as i64;
    let tr = Window::new(-(half - 1).min(n_final as i64 - half), (half - 1).min(n_final as i64 - half))?;
    let de = delta::eps_delta_banach(&e, params.eps, half as u64, tr)?;
    let checked_t = de.members.to_vec();
    let mut delta_misses = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        let est = delta::banach_shift_estimates(a, params.delta_n, &checked_t)?;
        for (t, v) in checked_t.iter().zip(est) {
            if v <= params.eps {
                delta_misses.push((*t, i));
            }
        }
    }
    let delta_asserted = params.eps.is_zero();
    if delta_asserted && !delta_misses.is_empty() {
        violations.push(format!("{} differences of E missing from an input Delta set", delta_misses.len()));
    }
    Ok(ChainReport {
        stages,
        final_prefix: e_pattern,
        final_sigma,
        product,
        bound,
        bound_holds,
        shifts,
        shifts_verified,
        checked_t,
        delta_misses,
        delta_asserted,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceCoverParams {
    pub pipeline: PipelineParams,
    /// Candidate shifts; must contain 0.
    pub x: Window,
    /// Half-width of the shift range tried by the baseline.
    pub baseline_radius: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceCoverReport {
    pub pipeline: CommonPatternReport,
    pub cover: cover::CoverCertificate,
    /// `⌊1/(α̂β̂)⌋`.
    pub k_bound: u64,
    pub within_k_bound: bool,
    /// `X + t_J`, which must lie in `(A - B) + F`.
    pub target: Window,
    pub target_covered: bool,
    /// Longest run of `(A - B) + F` inside the target.
    pub covered_interval: Option<Window>,
    pub covered_len: u64,
    pub baseline_shifts: Vec<i64>,
    pub baseline_covered: bool,
    pub violations: Vec<String>,
}

/// `{y ∈ w : y ∈ A - B}`, one intersection count per `y`, without
/// materializing the full difference set.
pub fn difference_on(a: &IntSet, b: &IntSet, w: Window) -> IntSet {
    let hits: Vec<bool> = w.iter().collect::<Vec<_>>().par_iter().map(|&y| b.count_shift_meet(a, y) > 0).collect();
    IntSet::from_fn(w, |y| hits[(y - w.lo()) as usize])
}

fn longest_run_in(s: &IntSet) -> Option<Window> {
    density::longest_run(s).map(|(start, len)| Window::with_len(start, len).unwrap())
}

/// Covers the candidates by translates of the Delta set of an extracted
/// pattern, then checks the translated candidates against `(A - B) + F`
/// directly on the data.
pub fn difference_cover(a: &IntSet, b: &IntSet, params: &DifferenceCoverParams) -> Result<DifferenceCoverReport> {
    if !params.x.contains(0) {
        return Err(Error::input("candidate range must contain 0"));
    }
    let pipe = common_pattern(a, b, &params.pipeline)?;
    let e = pipe.cert.e_set();
    let xs: Vec<i64> = params.x.iter().collect();
    let cert = cover::greedy_shift_cover(&e, &xs, Rat::zero(), 0)?;
    let mut violations = pipe.violations.clone();
    violations.extend(cover::check_certificate(&e, &xs, &cert));
    let ab = pipe.alpha_hat * pipe.beta_hat;
    let k_bound = if ab.is_positive() { ratio::floor(&ab.recip()) as u64 } else { u64::MAX };
    let target = params.x.shifted(pipe.t_j);
    let fmin = *cert.shifts.iter().min().unwrap();
    let fmax = *cert.shifts.iter().max().unwrap();
    let dw = Window::new(target.lo() - fmax, target.hi() - fmin)?;
    let diff = difference_on(a, b, dw);
    let fset = IntSet::from_members(cert.shifts.iter().copied(), Window::new(fmin, fmax)?)?;
    let covered = diff.sumset(&fset).restrict(target);
    let covered_interval = if cert.covered { longest_run_in(&covered) } else { None };
    let target_covered = covered.len() as u64 == target.len();
    if cert.covered && !target_covered {
        violations.push("translated candidates not inside (A - B) + F".into());
    }
    let (baseline_shifts, baseline_covered) = marginal_baseline(a, b, target, params.baseline_radius);
    Ok(DifferenceCoverReport {
        within_k_bound: cert.shifts.len() as u64 <= k_bound,
        covered_len: covered_interval.map_or(0, |w| w.len()),
        pipeline: pipe,
        cover: cert,
        k_bound,
        target,
        target_covered,
        covered_interval,
        baseline_shifts,
        baseline_covered,
        violations,
    })
}

/// Picks shifts `f ∈ [-r, r]` of `A - B`, each maximizing the newly covered
/// part of `target` (ties: least `|f|`, positive first).
fn marginal_baseline(a: &IntSet, b: &IntSet, target: Window, r: i64) -> (Vec<i64>, bool) {
    let r = r.max(0);
    let diff = difference_on(a, b, Window::new(target.lo() - r, target.hi() + r).unwrap());
    let mut covered = IntSet::empty(target);
    let mut picks = Vec::new();
    let mut order: Vec<i64> = (-r..=r).collect();
    order.sort_by_key(|&f| (f.unsigned_abs(), f < 0));
    while (covered.len() as u64) < target.len() {
        let best = order
            .iter()
            .map(|&f| {
                let add = diff.shift(f).restrict(target);
                (add.len() - add.intersect(&covered).len(), f)
            })
            .fold((0usize, 0i64), |acc, x| if x.0 > acc.0 { x } else { acc });
        if best.0 == 0 {
            break;
        }
        picks.push(best.1);
        covered = covered.union(&diff.shift(best.1).restrict(target)).restrict(target);
    }
    let done = covered.len() as u64 == target.len();
    (picks, done)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectParams {
    pub pipeline: PipelineParams,
    /// Estimator length for the cover on the extracted pattern.
    pub cover_n: u64,
    /// Estimator length for the re-verification on A and B.
    pub delta_n: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectReport {
    pub pipeline: CommonPatternReport,
    pub cover: ShiftCoverReport,
    /// `⌊(α̂β̂ - ε)/((α̂β̂)² - ε)⌋`.
    pub product_bound: Option<u64>,
    pub within_product_bound: bool,
    pub verified_in_a: bool,
    pub verified_in_b: bool,
    /// Whether a failed re-verification counts as a violation (only at ε = 0).
    pub verification_asserted: bool,
    pub violations: Vec<String>,
}

/// Covers `xs` by translates of the ε-Delta set of an extracted pattern and
/// re-verifies every used shift in the ε-Delta sets of both A and B.
pub fn intersect_delta_cover(
    a: &IntSet,
    b: &IntSet,
    eps: Rat,
    xs: &[i64],
    params: &IntersectParams,
) -> Result<IntersectReport> {
    let pipe = common_pattern(a, b, &params.pipeline)?;
    let ab = pipe.alpha_hat * pipe.beta_hat;
    if eps >= ab * ab {
        return Err(Error::BoundUndefined {
            eps: ratio::fmt_rat(&eps),
            gamma_sq: ratio::fmt_rat(&(ab * ab)),
        });
    }
    let e = pipe.cert.e_set();
    let mandated = *xs.iter().min_by_key(|&&x| (x.unsigned_abs(), x < 0)).ok_or_else(|| Error::input("empty X"))?;
    let cov = cover::delta_shift_cover(&e, xs, eps, params.cover_n, mandated)?;
    let ea = delta::banach_shift_estimates(a, params.delta_n, &cov.used_shifts)?;
    let eb = delta::banach_shift_estimates(b, params.delta_n, &cov.used_shifts)?;
    let verified_in_a = ea.iter().all(|v| *v > eps);
    let verified_in_b = eb.iter().all(|v| *v > eps);
    let verification_asserted = eps.is_zero();
    let mut violations = pipe.violations.clone();
    violations.extend(cov.violations.iter().cloned());
    if verification_asserted && !(verified_in_a && verified_in_b) {
        violations.push("used shift missing from the Delta set of A or B".into());
    }
    let product_bound = cover::greedy_bound(&ab, &eps);
    Ok(IntersectReport {
        within_product_bound: product_bound.is_some_and(|k| cov.cover.shifts.len() as u64 <= k),
        pipeline: pipe,
        cover: cov,
        product_bound,
        verified_in_a,
        verified_in_b,
        verification_asserted,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;
    use proptest::prelude::*;

    fn w(lo: i64, hi: i64) -> Window {
        Window::new(lo, hi).unwrap()
    }

    fn residues(win: Window, m: i64, classes: &[i64]) -> IntSet {
        IntSet::from_fn(win, |x| classes.contains(&x.rem_euclid(m)))
    }

    fn on(members: &[i64], n: i64) -> IntSet {
        IntSet::from_members(members.iter().copied(), w(1, n)).unwrap()
    }

    fn noise(win: Window, seed: u64, p_num: u64, p_den: u64) -> IntSet {
        let mut s = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
        IntSet::from_fn(win, |_| {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            s % p_den < p_num
        })
    }

    /// Oracle: the grid maximum by enumerating every fraction.
    fn brute_floor(gamma: Rat, n: i128) -> Rat {
        let mut best = rat(-1, 1);
        for i in 1..=n {
            for j in 0..=i {
                let v = rat(j, i);
                if v < gamma && v > best {
                    best = v;
                }
            }
        }
        best
    }

    /// Oracle: the dense region by direct prefix counts.
    fn brute_region(c: &IntSet, n: i64, gamma: Rat) -> Vec<i64> {
        let big = c.window().len() as i64;
        (0..=big - n)
            .filter(|&t| (1..=n).all(|i| rat(c.count_range(t + 1, t + i) as i128, i as i128) >= gamma))
            .collect()
    }

    #[test]
    fn pigeonhole_examples() {
        let p = pigeonhole_shift(&on(&[1, 2, 3], 4), &on(&[1, 2], 2)).unwrap();
        assert_eq!((p.xbar, p.ratio, p.bound), (1, rat(1, 1), rat(1, 4)));
        let p = pigeonhole_shift(&IntSet::full(w(1, 50)), &IntSet::full(w(1, 7))).unwrap();
        assert_eq!(p.ratio, rat(1, 1));
        assert!(p.holds);
        let p = pigeonhole_shift(&on(&[], 10), &on(&[1], 3)).unwrap();
        assert_eq!(p.ratio, rat(0, 1));
        assert!(p.holds && p.bound <= rat(0, 1));
    }

    #[test]
    fn gamma_floor_examples() {
        assert_eq!(gamma_floor(&rat(1, 2), 4).unwrap(), rat(1, 3));
        assert_eq!(gamma_floor(&rat(1, 1), 3).unwrap(), rat(2, 3));
        assert_eq!(gamma_floor(&rat(1, 1000), 1).unwrap(), rat(0, 1));
        assert!(gamma_floor(&rat(0, 1), 3).is_err());
        for (g, n) in [(rat(9, 20), 12), (rat(2, 7), 9), (rat(1, 1), 5)] {
            assert_eq!(gamma_floor(&g, n as u64).unwrap(), brute_floor(g, n));
        }
    }

    #[test]
    fn region_examples() {
        let full = IntSet::full(w(1, 100));
        assert_eq!(gamma_region(&full, 5, &rat(1, 2)).unwrap().len(), 96);
        let odds = residues(w(1, 200), 2, &[1]);
        let g = gamma_region(&odds, 6, &rat(1, 2)).unwrap();
        assert_eq!(g.to_vec(), (0..=194).filter(|t| t % 2 == 0).collect::<Vec<_>>());
        assert!(gamma_region(&full, 5, &rat(3, 2)).unwrap().is_empty());
        assert!(gamma_region(&full, 100, &rat(1, 2)).is_err());
    }

    #[test]
    fn walk_examples() {
        let full = IntSet::full(w(1, 1000));
        let bw = block_walk_bound(&full, 4, &rat(1, 2)).unwrap();
        assert_eq!(bw.gamma_n, rat(1, 3));
        assert_eq!(bw.bound, (rat(1, 1) - rat(1, 3) - rat(4, 1000)) / rat(2, 3));
        assert!(bw.holds);
        let sparse = residues(w(1, 1000), 10, &[1]);
        let bw = block_walk_bound(&sparse, 4, &rat(1, 2)).unwrap();
        assert!(bw.bound <= rat(0, 1) && bw.holds);
        let odds = residues(w(1, 2000), 2, &[1]);
        let bw = block_walk_bound(&odds, 4, &rat(1, 2)).unwrap();
        assert!(bw.holds);
        assert!(bw.m_n >= 999 && bw.m_n <= bw.gamma_size);
    }

    #[test]
    fn extract_examples() {
        let full = IntSet::full(w(1, 500));
        let cert = trace_extract(&full, 8, &rat(1, 2)).unwrap();
        assert_eq!(cert.e_prefix.elems(), &[1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(cert.theta_count(), cert.gamma_size);
        let odds = residues(w(1, 2000), 2, &[1]);
        let cert = trace_extract(&odds, 6, &rat(1, 2)).unwrap();
        assert_eq!(cert.e_prefix.elems(), &[1, 3, 5]);
        assert_eq!(cert.theta_count(), 998);
        assert!(verify_extraction(&odds, &cert).is_empty());
        let c = noise(w(1, 20_000), 11, 1, 2);
        let cert = trace_extract(&c, 12, &rat(9, 20)).unwrap();
        assert!(verify_extraction(&c, &cert).is_empty());
        assert!(cert.prefix_sigma >= rat(9, 20));
        assert!(matches!(trace_extract(&full, 17, &rat(1, 2)), Err(Error::Input(_))));
        let sparse = residues(w(1, 500), 10, &[5]);
        assert!(matches!(trace_extract(&sparse, 4, &rat(1, 2)), Err(Error::NoWitness(_))));
    }

    #[test]
    fn tie_break_is_lexicographic() {
        // traces {1,2}, {1} and {1,3} each occur once
        let c = on(&[1, 2, 5, 7], 8);
        let g = gamma_region(&c, 3, &rat(1, 3)).unwrap();
        assert_eq!(g.to_vec(), vec![0, 1, 4]);
        let cert = trace_extract(&c, 3, &rat(1, 3)).unwrap();
        assert_eq!(cert.e_prefix.elems(), &[1]);
        assert_eq!(cert.theta.to_vec(), vec![1]);
    }

    #[test]
    fn extract_pattern_examples() {
        let a = residues(w(0, 20_000), 5, &[0, 1]);
        let r = extract_pattern(&a, 10_000, 12, rat(1, 50), &ExtractOptions::default()).unwrap();
        assert_eq!(r.cert.e_prefix.elems(), &[1, 2, 6, 7, 11, 12]);
        assert!(r.violations.is_empty());
        assert!(r.cert.e_prefix.fits(r.shift, &a));
        let full = IntSet::full(w(0, 5000));
        let r = extract_pattern(&full, 1000, 10, rat(1, 50), &ExtractOptions::default()).unwrap();
        assert_eq!(r.cert.e_prefix.elems(), (1..=10).collect::<Vec<_>>().as_slice());
        let b = noise(w(0, 30_000), 2, 3, 5);
        let r = extract_pattern(&b, 20_000, 12, rat(1, 50), &ExtractOptions::default()).unwrap();
        assert!(r.violations.is_empty());
        assert!(extract_pattern(&b, 20_000, 12, rat(1, 1), &ExtractOptions::default()).is_err());
    }

    #[test]
    fn pipeline_examples() {
        let a = residues(w(0, 200_000), 3, &[0]);
        let r = common_pattern(&a, &a, &PipelineParams::new(100_000, 10)).unwrap();
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(r.cert.prefix_sigma >= r.gamma);
        assert_eq!(r.cert.e_prefix.elems(), &[1, 4, 7, 10]);
        let full = IntSet::full(w(0, 50_000));
        let r = common_pattern(&full, &full, &PipelineParams::new(20_000, 10)).unwrap();
        assert_eq!(r.cert.e_prefix.len(), 10);
        assert!(r.eps_achieved > rat(9, 10));
        let a = noise(w(0, 120_000), 4, 1, 2);
        let b = noise(w(0, 120_000), 5, 2, 5);
        let mut p = PipelineParams::new(100_000, 10);
        p.nu = 1000;
        let r = common_pattern(&a, &b, &p).unwrap();
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        p.nu = 20_000;
        assert!(matches!(common_pattern(&a, &b, &p), Err(Error::Input(_))));
    }

    #[test]
    fn chain_examples() {
        let evens = residues(w(0, 100_000), 2, &[0]);
        let params = ChainParams {
            big_n: 60_000,
            nu_divisor: 10,
            n: 10,
            slack: rat(1, 50),
            eps: rat(0, 1),
            delta_n: 1000,
        };
        let r = chain_pattern(&[evens.clone(), evens.clone()], &params).unwrap();
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(r.final_sigma >= rat(1, 4) - rat(1, 10));
        assert_eq!(r.final_prefix.elems(), &[1, 3, 5, 7, 9]);
        let single = chain_pattern(&[evens], &params).unwrap();
        assert_eq!(single.stages.len(), 1);
        assert!(single.violations.is_empty());
    }

    #[test]
    fn difference_cover_examples() {
        let a = residues(w(0, 400_000), 3, &[0]);
        let mut pp = PipelineParams::new(198_000, 2000);
        pp.nu = 3000;
        pp.extract = ExtractOptions::long();
        let params = DifferenceCoverParams {
            pipeline: pp,
            x: w(-1000, 1000),
            baseline_radius: 3,
        };
        let r = difference_cover(&a, &a, &params).unwrap();
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert_eq!(r.cover.shifts, vec![0, 1, -1]);
        assert!(r.cover.shifts.len() as u64 <= r.k_bound && r.k_bound == 9);
        assert!(r.target_covered && r.covered_len == 2001);
        assert!(r.baseline_covered);
    }

    #[test]
    fn intersect_examples() {
        let a = residues(w(0, 400_000), 2, &[0]);
        let b = residues(w(0, 400_000), 3, &[0]);
        let mut pp = PipelineParams::new(100_000, 500);
        pp.nu = 1200;
        pp.extract = ExtractOptions::long();
        let params = IntersectParams {
            pipeline: pp,
            cover_n: 300,
            delta_n: 1000,
        };
        let xs: Vec<i64> = (-100..=100).collect();
        let r = intersect_delta_cover(&a, &b, rat(0, 1), &xs, &params).unwrap();
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert_eq!(r.cover.cover.shifts.len(), 6);
        assert_eq!(r.product_bound, Some(6));
        assert!(r.verified_in_a && r.verified_in_b);
        assert!(matches!(
            intersect_delta_cover(&a, &b, rat(1, 36), &xs, &params),
            Err(Error::BoundUndefined { .. })
        ));
    }

    fn arb_pair() -> impl Strategy<Value = (IntSet, IntSet)> {
        (16u64..400, 1u64..40, any::<u64>(), any::<u64>(), 1u64..5, 1u64..5).prop_map(|(n, nu, s1, s2, p1, p2)| {
            (noise(w(1, n as i64), s1, p1, 5), noise(w(1, nu as i64), s2, p2, 5))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn pigeonhole_bound_holds((c, d) in arb_pair()) {
            let p = pigeonhole_shift(&c, &d).unwrap();
            prop_assert!(p.holds);
            let n = c.window().len() as i64;
            let brute = (1..=n).map(|x| d.iter().filter(|&e| c.contains(e + x)).count() as u64).max().unwrap();
            prop_assert_eq!(p.count, brute);
        }

        #[test]
        fn region_and_floor_match_oracles(seed in any::<u64>(), n in 1i64..10, g in 1i128..20, dens in 1u64..5) {
            let c = noise(w(1, 120), seed, dens, 5);
            let gamma = rat(g, 20);
            prop_assert_eq!(gamma_region(&c, n as u64, &gamma).unwrap().to_vec(), brute_region(&c, n, gamma));
            prop_assert_eq!(gamma_floor(&gamma, n as u64).unwrap(), brute_floor(gamma, n as i128));
        }

        #[test]
        fn certificates_verify(seed in any::<u64>(), n in 1u64..12, g in 1i128..10, dens in 2u64..5) {
            let c = noise(w(1, 3000), seed, dens, 5);
            match trace_extract(&c, n, &rat(g, 10)) {
                Ok(cert) => {
                    prop_assert!(verify_extraction(&c, &cert).is_empty());
                    prop_assert!(cert.walk.holds);
                }
                Err(e) => prop_assert!(matches!(e, Error::NoWitness(_)), "unexpected error"),
            }
        }
    }
}
