//! Shift covers built from self-intersections of a dense set.
//!
//! For `C ⊆ [1, N]` let `D̂_ε(C)` be the shifts `t` with
//! `|C ∩ (C - t) ∩ [1, N]| > ε·N`. The greedy procedure picks shifts
//! `x_1, x_2, ...` from a candidate list until every candidate lies in
//! `D̂_ε(C) + {x_1, x_2, ...}`. Any two picks `x_i, x_j` then have
//! `|(C - x_i) ∩ (C - x_j) ∩ [1, N]| ≤ ε·N`, and the Cauchy–Schwarz count
//!
//! ```text
//! (Σ|C_i|)² ≤ N · (Σ|C_i| + 2 Σ_{i<j} |C_i ∩ C_j|)
//! ```
//!
//! bounds how many picks are possible: with `γ = min |C_i| / N` and
//! `ε < γ²`, at most `⌊(γ - ε)/(γ² - ε)⌋`.

use crate::delta;
use crate::density::{self, DensityEstimate};
use crate::error::{Error, Result};
use crate::intset::{IntSet, Window};
use crate::ratio::{self, Rat};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsReport {
    pub lhs: u128,
    pub rhs: u128,
    pub holds: bool,
}

fn check_family(family: &[IntSet], n: u64) -> Result<()> {
    for (i, c) in family.iter().enumerate() {
        if c.min().is_some_and(|v| v < 1) || c.max().is_some_and(|v| v > n as i64) {
            return Err(Error::input(format!("family member {i} is not inside [1, {n}]")));
        }
    }
    Ok(())
}

fn pair_overlaps(family: &[IntSet]) -> Vec<u64> {
    let k = family.len();
    (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .map(|(i, j)| family[i].count_shift_meet(&family[j], 0) as u64)
        .collect()
}

/// The exact integer form of the Cauchy–Schwarz count for a family in `[1, n]`.
pub fn cs_family_inequality(family: &[IntSet], n: u64) -> Result<CsReport> {
    check_family(family, n)?;
    let total: u128 = family.iter().map(|c| c.len() as u128).sum();
    let pairs: u128 = pair_overlaps(family).iter().map(|&v| v as u128).sum();
    let lhs = total * total;
    let rhs = n as u128 * (total + 2 * pairs);
    Ok(CsReport {
        lhs,
        rhs,
        holds: lhs <= rhs,
    })
}

/// A lower bound for the largest pairwise overlap `|C_i ∩ C_j| / n`:
/// `(k²·γ² - Σ c_i) / (k(k-1))` with `c_i = |C_i|/n` and `γ = min c_i`.
pub fn guaranteed_overlap(family: &[IntSet], n: u64) -> Result<Rat> {
    check_family(family, n)?;
    let k = family.len() as i128;
    if k < 2 {
        return Err(Error::input("guaranteed overlap needs at least two sets"));
    }
    let n = n as i128;
    let counts: Vec<i128> = family.iter().map(|c| c.len() as i128).collect();
    let gamma = Rat::new(*counts.iter().min().unwrap(), n);
    let sum = Rat::new(counts.iter().sum(), n);
    Ok((Rat::from_integer(k * k) * gamma * gamma - sum) / Rat::from_integer(k * (k - 1)))
}

/// Largest pairwise overlap `|C_i ∩ C_j| / n`.
pub fn max_pair_overlap(family: &[IntSet], n: u64) -> Rat {
    let m = pair_overlaps(family).into_iter().max().unwrap_or(0);
    ratio::frac(m, n)
}

/// `⌊(γ - ε)/(γ² - ε)⌋`, defined for `ε < γ²`.
pub fn greedy_bound(gamma: &Rat, eps: &Rat) -> Option<u64> {
    let denom = gamma * gamma - eps;
    if !denom.is_positive() {
        return None;
    }
    Some(ratio::floor(&((gamma - eps) / denom)) as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    /// Shifts in pick order; the first is the mandated one.
    pub shifts: Vec<i64>,
    #[serde(with = "ratio::serde_rat")]
    pub eps: Rat,
    pub n: u64,
    #[serde(with = "ratio::serde_rat")]
    pub gamma_hat: Rat,
    pub k_bound: u64,
    #[serde(with = "ratio::serde_rat")]
    pub margin: Rat,
    /// `min_i |(C - x_i) ∩ [1, N]| / N` over the picked shifts.
    #[serde(with = "ratio::serde_rat")]
    pub edge_gamma: Rat,
    pub edge_bound: Option<u64>,
    pub within_k_bound: bool,
    pub covered: bool,
    pub uncovered: Vec<i64>,
}

/// `D̂_ε(C)` over `[-span, span]`, where `C` lives on `[1, n]`.
fn self_meet_set(c: &IntSet, eps: &Rat, span: i64) -> IntSet {
    let n = c.window().len();
    let w = Window::new(-span, span).expect("span >= 0");
    let member: Vec<bool> = w
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&t| ratio::count_exceeds(c.count_shift_meet(c, t) as u64, eps, n))
        .collect();
    IntSet::from_fn(w, |t| member[(t + span) as usize])
}

/// Candidates by increasing `|x|`, positive before negative.
fn candidate_order(xs: &[i64]) -> Vec<i64> {
    let mut v = xs.to_vec();
    v.sort_unstable_by_key(|&x| (x.unsigned_abs(), x < 0));
    v.dedup();
    v
}

fn check_cover_input(c: &IntSet, eps: &Rat, xs: &[i64], mandated: i64) -> Result<()> {
    if c.window().lo() != 1 {
        return Err(Error::input(format!("cover set must live on [1, N], got {}", c.window())));
    }
    if eps.is_negative() {
        return Err(Error::input("eps must be >= 0"));
    }
    if !xs.contains(&mandated) {
        return Err(Error::input(format!("mandated shift {mandated} is not a candidate")));
    }
    Ok(())
}

/// Greedy cover of the candidates `xs` by translates of `D̂_ε(C)`, starting at `mandated`.
pub fn greedy_shift_cover(c: &IntSet, xs: &[i64], eps: Rat, mandated: i64) -> Result<CoverCertificate> {
    check_cover_input(c, &eps, xs, mandated)?;
    let n = c.window().len();
    let gamma_hat = ratio::frac(c.len() as u64, n);
    let k_bound = greedy_bound(&gamma_hat, &eps).ok_or_else(|| Error::BoundUndefined {
        eps: ratio::fmt_rat(&eps),
        gamma_sq: ratio::fmt_rat(&(gamma_hat * gamma_hat)),
    })?;
    let order = candidate_order(xs);
    let (lo, hi) = (order.iter().min().copied().unwrap(), order.iter().max().copied().unwrap());
    let dhat = self_meet_set(c, &eps, hi - lo);

    let mut covered = vec![false; order.len()];
    let mut shifts = Vec::new();
    let mut next = order.iter().position(|&x| x == mandated);
    while let Some(i) = next {
        let xi = order[i];
        shifts.push(xi);
        for (j, &x) in order.iter().enumerate() {
            covered[j] |= dhat.contains(x - xi);
        }
        next = covered.iter().position(|&b| !b);
    }
    let uncovered: Vec<i64> = order.iter().zip(&covered).filter(|(_, &b)| !b).map(|(&x, _)| x).collect();

    let max_abs = order.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
    let edge_gamma = shifts
        .iter()
        .map(|&x| ratio::frac(c.count_range(1 + x, n as i64 + x) as u64, n))
        .min()
        .unwrap_or_else(Rat::zero);
    Ok(CoverCertificate {
        within_k_bound: shifts.len() as u64 <= k_bound,
        edge_bound: greedy_bound(&edge_gamma, &eps),
        shifts,
        eps,
        n,
        gamma_hat,
        k_bound,
        margin: ratio::frac(max_abs, n),
        edge_gamma,
        covered: uncovered.is_empty(),
        uncovered,
    })
}

/// Independent re-check of a certificate against `C` and the candidates,
/// recounting every self-intersection member by member. Returns the
/// violated properties.
pub fn check_certificate(c: &IntSet, xs: &[i64], cert: &CoverCertificate) -> Vec<String> {
    let n = c.window().len() as i64;
    let members = c.to_vec();
    let in_dhat = |t: i64| -> bool {
        let count = members.iter().filter(|&&v| v + t >= 1 && v + t <= n && c.contains(v + t)).count();
        ratio::count_exceeds(count as u64, &cert.eps, n as u64)
    };
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    if !cert.shifts.iter().all(|s| seen.insert(*s)) {
        out.push("duplicate shift".to_string());
    }
    if cert.shifts.iter().any(|s| !xs.contains(s)) {
        out.push("shift outside the candidates".to_string());
    }
    for (j, &xj) in cert.shifts.iter().enumerate() {
        if let Some(&xi) = cert.shifts[..j].iter().find(|&&xi| in_dhat(xj - xi)) {
            out.push(format!("pick {xj} was already covered by {xi}"));
        }
    }
    let mut uncovered: Vec<i64> = candidate_order(xs)
        .into_iter()
        .filter(|&x| !cert.shifts.iter().any(|&xi| in_dhat(x - xi)))
        .collect();
    uncovered.sort_unstable_by_key(|&x| (x.unsigned_abs(), x < 0));
    if uncovered != cert.uncovered || cert.covered != uncovered.is_empty() {
        out.push(format!("coverage mismatch: {} uncovered on recount", uncovered.len()));
    }
    if let Some(b) = cert.edge_bound {
        if cert.shifts.len() as u64 > b {
            out.push(format!("{} picks exceed the edge-corrected bound {b}", cert.shifts.len()));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftCoverReport {
    /// The densest length-n window `[at + 1, at + n]` of A, used as `C`.
    pub window: DensityEstimate,
    pub cover: CoverCertificate,
    /// The differences `x - x_i` through which each candidate is covered.
    pub used_shifts: Vec<i64>,
    /// Whether every used shift was recounted in the ε-Delta set of A.
    pub delta_verified: bool,
    /// Whether `delta_verified` is a guaranteed property of this variant.
    pub verification_asserted: bool,
    pub violations: Vec<String>,
}

fn used_shifts(c: &IntSet, xs: &[i64], cert: &CoverCertificate) -> Vec<i64> {
    let n = c.window().len();
    let mut used: Vec<i64> = candidate_order(xs)
        .into_iter()
        .filter_map(|x| {
            cert.shifts
                .iter()
                .map(|&xi| x - xi)
                .find(|&t| ratio::count_exceeds(c.count_shift_meet(c, t) as u64, &cert.eps, n))
        })
        .collect();
    used.sort_unstable();
    used.dedup();
    used
}

/// Covers the candidates by translates of `Δ̂_ε(A)`.
///
/// `C` is the densest length-`n` window of A rebased to `[1, n]`. Every
/// shift in `D̂_ε(C)` then lies in `Δ̂_ε(A)` as long as `n` plus the
/// candidate span fits in A's window, and each used shift is recounted.
pub fn delta_shift_cover(a: &IntSet, xs: &[i64], eps: Rat, n: u64, mandated: i64) -> Result<ShiftCoverReport> {
    let span = span_of(xs)?;
    delta::check_shift_safe([span], n, a.window().len())?;
    let best = density::upper_banach_est(a, n)?;
    let c = a.restrict(Window::with_len(best.at + 1, n)?).rebase(1);
    let cover = greedy_shift_cover(&c, xs, eps, mandated)?;
    let used = used_shifts(&c, xs, &cover);
    let est = delta::banach_shift_estimates(a, n, &used)?;
    let mut violations = check_certificate(&c, xs, &cover);
    let mut delta_verified = true;
    for (t, e) in used.iter().zip(&est) {
        if *e <= eps {
            delta_verified = false;
            violations.push(format!("used shift {t} has estimate {} not above eps", ratio::fmt_rat(e)));
        }
    }
    Ok(ShiftCoverReport {
        window: best,
        cover,
        used_shifts: used,
        delta_verified,
        verification_asserted: true,
        violations,
    })
}

/// The upper-asymptotic variant: `C = A ∩ [1, n]` for A anchored at 1, and
/// used shifts are checked against the asymptotic ε-Delta estimate. The
/// two estimators disagree off periodic data, so a failed check is
/// reported without counting as a violation.
pub fn delta_shift_cover_upper(a: &IntSet, xs: &[i64], eps: Rat, n: u64, mandated: i64) -> Result<ShiftCoverReport> {
    if a.window().lo() != 1 {
        return Err(Error::input(format!("window {} must start at 1", a.window())));
    }
    let span = span_of(xs)?;
    delta::check_shift_safe([span], n, a.window().len())?;
    let c = a.restrict(Window::with_len(1, n)?);
    let cover = greedy_shift_cover(&c, xs, eps, mandated)?;
    let used = used_shifts(&c, xs, &cover);
    let tr = Window::new(-span, span)?;
    let d = delta::eps_delta_upper(a, eps, n, tr, density::AsymptoticProxy::default())?;
    let violations = check_certificate(&c, xs, &cover);
    Ok(ShiftCoverReport {
        window: density::upper_asymptotic_est(a, n, density::AsymptoticProxy::default())?,
        delta_verified: used.iter().all(|&t| d.contains(t)),
        cover,
        used_shifts: used,
        verification_asserted: false,
        violations,
    })
}

fn span_of(xs: &[i64]) -> Result<i64> {
    match (xs.iter().min(), xs.iter().max()) {
        (Some(lo), Some(hi)) => Ok(hi - lo),
        _ => Err(Error::input("candidate list is empty")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverMode {
    FullCover,
    ThickCover,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslateCoverReport {
    pub mode: CoverMode,
    pub k: usize,
    pub premise_holds: bool,
    /// Window length used for the density estimate.
    pub n: u64,
    #[serde(with = "ratio::serde_rat_opt")]
    pub estimate: Option<Rat>,
    #[serde(with = "ratio::serde_rat")]
    pub slack: Rat,
    #[serde(with = "ratio::serde_rat")]
    pub bound: Rat,
    pub holds: bool,
}

/// Density consequences of `A + F` covering a range.
///
/// `FullCover`: if `A + F ⊇ range` then every length-`n` window `J` with
/// `J + min F ⊆ range` has `|A ∩ J| ≥ n/k - span(F)`, so the lower Banach
/// estimate over those windows is at least `1/k - span(F)/n`. A must be
/// materialized on `[range.lo - max F, range.hi - min F]`.
///
/// `ThickCover`: if `A + F` contains an interval of length `n`, one of the
/// `k` translates meets it in at least `n/k` points, so the upper Banach
/// estimate at length `n` is at least `1/k`.
pub fn verify_translate_cover(a: &IntSet, f: &[i64], mode: CoverMode, n: u64, range: Window) -> Result<TranslateCoverReport> {
    let mut f = f.to_vec();
    f.sort_unstable();
    f.dedup();
    let (Some(&fmin), Some(&fmax)) = (f.first(), f.last()) else {
        return Err(Error::input("cover shift list is empty"));
    };
    let k = f.len();
    let inv_k = Rat::new(1, k as i128);
    let fset = IntSet::from_members(f.iter().copied(), Window::new(fmin, fmax)?)?;
    let sum = a.sumset(&fset);
    let report = |premise_holds, estimate: Option<Rat>, slack: Rat| {
        let bound = inv_k - slack;
        TranslateCoverReport {
            mode,
            k,
            premise_holds,
            n,
            holds: estimate.as_ref().is_none_or(|e| *e >= bound),
            estimate,
            slack,
            bound,
        }
    };
    match mode {
        CoverMode::FullCover => {
            let need = Window::new(range.lo() - fmax, range.hi() - fmin)?;
            if !a.window().contains_window(&need) {
                return Err(Error::input(format!("set window {} must contain {need}", a.window())));
            }
            if n > range.len() {
                return Err(Error::input(format!("n = {n} exceeds the covered range length {}", range.len())));
            }
            let premise = sum.count_range(range.lo(), range.hi()) as u64 == range.len();
            let slack = Rat::new((fmax - fmin) as i128, n as i128);
            if !premise {
                return Ok(report(false, None, slack));
            }
            let scan = a.restrict(range.shifted(-fmin));
            let est = density::lower_banach_est(&scan, n)?;
            Ok(report(true, Some(est.value), slack))
        }
        CoverMode::ThickCover => {
            if n > a.window().len() {
                return Err(Error::input(format!("n = {n} exceeds the set window length")));
            }
            let premise = density::thick_witness(&sum.restrict(range), n).is_some();
            if !premise {
                return Ok(report(false, None, Rat::zero()));
            }
            let est = density::upper_banach_est(a, n)?;
            Ok(report(true, Some(est.value), Rat::zero()))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientCoverReport {
    pub h: i64,
    pub range: Window,
    /// `true` when `h = 0` and the quotient is the whole range.
    pub trivial: bool,
    /// Cover shifts divided by `h`.
    pub shifts: Vec<i64>,
    pub cover: Option<ShiftCoverReport>,
    /// `Δ̂_ε(A)/h` materialized on `[range.lo - max F, range.hi - min F]`.
    pub quotient_members: usize,
    pub covered: bool,
    pub density: Option<TranslateCoverReport>,
    pub violations: Vec<String>,
}

/// Covers `range` by translates of `Δ̂_ε(A)/h`, via the shift cover of the
/// multiples `h·range`.
pub fn quotient_cover(a: &IntSet, h: i64, eps: Rat, n: u64, range: Window) -> Result<QuotientCoverReport> {
    if h == 0 {
        return Ok(QuotientCoverReport {
            h,
            range,
            trivial: true,
            shifts: vec![0],
            cover: None,
            quotient_members: range.len() as usize,
            covered: true,
            density: None,
            violations: Vec::new(),
        });
    }
    let xs: Vec<i64> = range.iter().map(|y| h * y).collect();
    let mandated = candidate_order(&xs)[0];
    let cover = delta_shift_cover(a, &xs, eps, n, mandated)?;
    let shifts: Vec<i64> = cover.cover.shifts.iter().map(|x| x / h).collect();
    let (fmin, fmax) = (*shifts.iter().min().unwrap(), *shifts.iter().max().unwrap());
    let qw = Window::new(range.lo() - fmax, range.hi() - fmin)?;
    let ts: Vec<i64> = qw.iter().map(|y| h * y).collect();
    let est = delta::banach_shift_estimates(a, n, &ts)?;
    let q = IntSet::from_fn(qw, |y| est[(y - qw.lo()) as usize] > eps);
    let fset = IntSet::from_members(shifts.iter().copied(), Window::new(fmin, fmax)?)?;
    let covered = q.sumset(&fset).count_range(range.lo(), range.hi()) as u64 == range.len();
    let mut violations = cover.violations.clone();
    if cover.cover.covered && !covered {
        violations.push("multiples covered but the quotient cover is incomplete".into());
    }
    let density = if covered {
        let r = verify_translate_cover(&q, &shifts, CoverMode::FullCover, range.len().div_ceil(2), range)?;
        if !r.holds {
            violations.push("quotient lower density below 1/|F| - slack".into());
        }
        Some(r)
    } else {
        None
    };
    Ok(QuotientCoverReport {
        h,
        range,
        trivial: false,
        shifts,
        cover: Some(cover),
        quotient_members: q.len(),
        covered,
        density,
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

    fn set(members: &[i64], n: i64) -> IntSet {
        IntSet::from_members(members.iter().copied(), w(1, n)).unwrap()
    }

    #[test]
    fn cs_examples() {
        let r = cs_family_inequality(&[set(&[1, 2], 3), set(&[2, 3], 3)], 3).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (16, 18, true));
        let r = cs_family_inequality(&[set(&[1, 2], 2), set(&[1, 2], 2)], 2).unwrap();
        assert_eq!((r.lhs, r.rhs), (16, 16));
        let r = cs_family_inequality(&[set(&[], 4)], 4).unwrap();
        assert_eq!((r.lhs, r.rhs), (0, 0));
        assert!(cs_family_inequality(&[set(&[1, 5], 5)], 4).is_err());
    }

    #[test]
    fn overlap_examples() {
        let full = IntSet::full(w(1, 8));
        assert_eq!(guaranteed_overlap(&[full.clone(), full], 8).unwrap(), rat(1, 1));
        let fam = [set(&[1, 2], 4), set(&[3, 4], 4)];
        assert_eq!(guaranteed_overlap(&fam, 4).unwrap(), rat(0, 1));
        assert_eq!(max_pair_overlap(&fam, 4), rat(0, 1));
        assert!(guaranteed_overlap(&fam[..1], 4).is_err());
    }

    #[test]
    fn greedy_examples() {
        let c = residues(w(1, 100_000), 5, &[0, 1]);
        let xs: Vec<i64> = (-500..=500).collect();
        let cert = greedy_shift_cover(&c, &xs, rat(0, 1), 0).unwrap();
        assert_eq!(cert.shifts, vec![0, 2]);
        assert_eq!(cert.k_bound, 2);
        assert!(cert.covered && cert.within_k_bound);
        assert_eq!(cert.gamma_hat, rat(2, 5));
        assert_eq!(cert.margin, rat(500, 100_000));

        let full = IntSet::full(w(1, 1000));
        let cert = greedy_shift_cover(&full, &xs, rat(1, 4), 7).unwrap();
        assert_eq!(cert.shifts, vec![7]);
        let cert = greedy_shift_cover(&c, &[3], rat(0, 1), 3).unwrap();
        assert_eq!(cert.shifts, vec![3]);
        assert!(cert.covered);

        match greedy_shift_cover(&c, &xs, rat(4, 25), 0) {
            Err(Error::BoundUndefined { .. }) => {}
            other => panic!("expected bound error, got {other:?}"),
        }
        assert!(greedy_shift_cover(&c, &xs, rat(0, 1), 10_000).is_err());
    }

    #[test]
    fn certificate_checker_catches_tampering() {
        let c = residues(w(1, 2000), 4, &[0]);
        let xs: Vec<i64> = (-40..=40).collect();
        let cert = greedy_shift_cover(&c, &xs, rat(0, 1), 0).unwrap();
        assert!(check_certificate(&c, &xs, &cert).is_empty());
        let mut bad = cert.clone();
        bad.shifts.pop();
        assert!(!check_certificate(&c, &xs, &bad).is_empty());
        let mut bad = cert;
        bad.shifts.push(4);
        assert!(!check_certificate(&c, &xs, &bad).is_empty());
    }

    #[test]
    fn delta_shift_cover_examples() {
        let a = residues(w(0, 100_000), 5, &[0, 1]);
        let xs: Vec<i64> = (-500..=500).collect();
        let r = delta_shift_cover(&a, &xs, rat(0, 1), 99_000, 0).unwrap();
        assert!(r.cover.shifts.len() <= 2 && r.cover.covered);
        assert!(r.delta_verified && r.violations.is_empty());

        let a4 = residues(w(0, 100_000), 4, &[0]);
        let r = delta_shift_cover(&a4, &xs, rat(0, 1), 99_000, 0).unwrap();
        assert_eq!(r.cover.shifts, vec![0, 1, -1, 2]);
        assert!(r.cover.covered && r.violations.is_empty());

        let a6 = residues(w(0, 99_999), 5, &[0, 1, 2]);
        let r = delta_shift_cover(&a6, &xs, rat(9, 25), 99_000, 0);
        assert!(matches!(r, Err(Error::BoundUndefined { .. })));
        let r = delta_shift_cover(&a6, &xs, rat(11, 100), 99_000, 0).unwrap();
        assert_eq!(r.cover.k_bound, 1);
        assert_eq!(r.cover.shifts, vec![0]);
        assert!(matches!(delta_shift_cover(&a6, &xs, rat(0, 1), 99_500, 0), Err(Error::ShiftUnsafe { .. })));
    }

    #[test]
    fn upper_variant() {
        let a = residues(w(1, 50_000), 5, &[0, 1]);
        let xs: Vec<i64> = (-100..=100).collect();
        let r = delta_shift_cover_upper(&a, &xs, rat(0, 1), 40_000, 0).unwrap();
        assert!(r.cover.covered && r.delta_verified);
        assert!(!r.verification_asserted);
    }

    #[test]
    fn verify_translate_cover_examples() {
        let a = residues(w(-100, 1100), 3, &[0]);
        let r = verify_translate_cover(&a, &[0, 1, 2], CoverMode::FullCover, 300, w(0, 999)).unwrap();
        assert!(r.premise_holds && r.holds);
        assert_eq!(r.estimate, Some(rat(1, 3)));
        let full = IntSet::full(w(0, 100));
        let r = verify_translate_cover(&full, &[0], CoverMode::FullCover, 50, w(0, 100)).unwrap();
        assert_eq!((r.estimate, r.bound), (Some(rat(1, 1)), rat(1, 1)));

        // Δ̂₀ of residues {0,1} mod 5 is {0, ±1 mod 5}; with F = {0, 2} it covers
        let d = residues(w(-600, 600), 5, &[0, 1, 4]);
        let r = verify_translate_cover(&d, &[0, 2], CoverMode::FullCover, 500, w(-500, 500)).unwrap();
        assert!(r.premise_holds && r.holds);
        assert_eq!(r.estimate, Some(rat(3, 5)));

        let thin = residues(w(0, 999), 7, &[0]);
        let r = verify_translate_cover(&thin, &[0, 1], CoverMode::FullCover, 100, w(100, 800)).unwrap();
        assert!(!r.premise_holds && r.holds);
        let r = verify_translate_cover(&a, &[0, 1, 2], CoverMode::ThickCover, 200, w(0, 999)).unwrap();
        assert!(r.premise_holds && r.holds);
    }

    #[test]
    fn quotient_examples() {
        let a = residues(w(0, 20_000), 4, &[0]);
        let r = quotient_cover(&a, 2, rat(0, 1), 19_000, w(-100, 100)).unwrap();
        assert!(r.covered && r.violations.is_empty());
        assert!(r.shifts.len() <= 4);
        assert_eq!(r.shifts, vec![0, 1]);
        let r0 = quotient_cover(&a, 0, rat(0, 1), 100, w(-100, 100)).unwrap();
        assert!(r0.trivial && r0.covered);
        let a5 = residues(w(0, 20_000), 5, &[0, 1]);
        let r1 = quotient_cover(&a5, 1, rat(0, 1), 19_000, w(-200, 200)).unwrap();
        let direct = delta_shift_cover(&a5, &(-200..=200).collect::<Vec<_>>(), rat(0, 1), 19_000, 0).unwrap();
        assert_eq!(r1.shifts, direct.cover.shifts);
        assert!(r1.density.unwrap().holds);
    }

    fn arb_family() -> impl Strategy<Value = (u64, Vec<IntSet>)> {
        (8u64..200).prop_flat_map(|n| {
            let set = (0.0f64..1.0, any::<u64>()).prop_map(move |(p, seed)| {
                let mut s = seed | 1;
                IntSet::from_fn(Window::new(1, n as i64).unwrap(), |_| {
                    s ^= s << 13;
                    s ^= s >> 7;
                    s ^= s << 17;
                    ((s >> 11) as f64) < p * (1u64 << 53) as f64
                })
            });
            (Just(n), proptest::collection::vec(set, 2..8))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn cs_and_overlap_hold((n, fam) in arb_family()) {
            prop_assert!(cs_family_inequality(&fam, n).unwrap().holds);
            prop_assert!(guaranteed_overlap(&fam, n).unwrap() <= max_pair_overlap(&fam, n));
        }

        #[test]
        fn greedy_obeys_edge_bound(m in 2i64..9, mask in 1u32..256, e in 0i128..20, span in 1i64..60) {
            let classes: Vec<i64> = (0..m).filter(|r| mask >> r & 1 == 1).collect();
            prop_assume!(!classes.is_empty());
            let n = 600i64;
            let c = residues(w(1, n), m, &classes);
            let eps = rat(e, 100);
            let xs: Vec<i64> = (-span..=span).collect();
            match greedy_shift_cover(&c, &xs, eps, 0) {
                Ok(cert) => {
                    prop_assert!(cert.shifts.len() <= xs.len());
                    prop_assert!(check_certificate(&c, &xs, &cert).is_empty());
                    let gm = cert.gamma_hat - cert.margin;
                    if let Some(b) = greedy_bound(&gm, &eps) {
                        if gm.is_positive() {
                            prop_assert!(cert.shifts.len() as u64 <= b);
                        }
                    }
                }
                Err(err) => prop_assert!(matches!(err, Error::BoundUndefined { .. }), "unexpected error"),
            }
        }
    }
}
