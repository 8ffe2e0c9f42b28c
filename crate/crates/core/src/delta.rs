//! ε-Delta sets: the shifts `t` for which `A ∩ (A - t)` keeps density above ε.
//!
//! Each `t` must be *shift-safe*: `n + |t|` may not exceed the window
//! length, so that `A ∩ (A - t)` still has a full length-`n` sub-window.
//! Unsafe shifts are rejected rather than clipped.

use crate::density::{self, AsymptoticProxy, DensityKind};
use crate::error::{Error, Result};
use crate::intset::{IntSet, Window};
use crate::ratio::{self, Rat};
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// `Δ̂_ε(A)` or `Δ̄̂_ε(A)` restricted to `trange`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsDeltaResult {
    pub kind: DensityKind,
    #[serde(with = "ratio::serde_rat")]
    pub eps: Rat,
    pub n: u64,
    pub trange: Window,
    pub members: IntSet,
    /// Estimate for `t = trange.lo + i` at index `i`.
    #[serde(with = "ratio::serde_rat_vec")]
    pub per_t: Vec<Rat>,
}

impl EpsDeltaResult {
    pub fn estimate(&self, t: i64) -> Option<&Rat> {
        if !self.trange.contains(t) {
            return None;
        }
        self.per_t.get((t - self.trange.lo()) as usize)
    }

    pub fn contains(&self, t: i64) -> bool {
        self.members.contains(t)
    }
}

/// Rejects the least `t` in `ts` with `n + |t| > len`.
pub fn check_shift_safe(ts: impl IntoIterator<Item = i64>, n: u64, len: u64) -> Result<()> {
    for t in ts {
        let need = n + t.unsigned_abs();
        if need > len {
            return Err(Error::ShiftUnsafe { t, need, len });
        }
    }
    Ok(())
}

fn check_eps(eps: &Rat) -> Result<()> {
    if eps.is_negative() {
        return Err(Error::input(format!("eps must be >= 0, got {}", ratio::fmt_rat(eps))));
    }
    Ok(())
}

/// `A ∩ (A - t)` on the full overlap of A's window with its shift.
pub fn shift_meet(a: &IntSet, t: i64) -> IntSet {
    let w = a.window();
    let lo = w.lo() + (-t).max(0);
    let hi = w.hi() - t.max(0);
    match Window::new(lo, hi) {
        Ok(ov) => a.meet_shift_on(t, ov),
        Err(_) => IntSet::empty(Window::point(w.lo())),
    }
}

/// Upper Banach estimate of `A ∩ (A - t)` at length `n`, for each `t` in order.
pub fn banach_shift_estimates(a: &IntSet, n: u64, ts: &[i64]) -> Result<Vec<Rat>> {
    check_shift_safe(ts.iter().copied(), n, a.window().len())?;
    ts.par_iter()
        .map(|&t| density::upper_banach_est(&shift_meet(a, t), n).map(|e| e.value))
        .collect()
}

/// `Δ̂_ε(A) = {t ∈ trange : BD̂_n(A ∩ (A - t)) > ε}` with strict inequality.
pub fn eps_delta_banach(a: &IntSet, eps: Rat, n: u64, trange: Window) -> Result<EpsDeltaResult> {
    check_eps(&eps)?;
    let ts: Vec<i64> = trange.iter().collect();
    let per_t = banach_shift_estimates(a, n, &ts)?;
    Ok(assemble(DensityKind::UpperBanach, eps, n, trange, per_t))
}

/// The upper-asymptotic variant on a set anchored at 1, horizon `m`.
///
/// `A ∩ (A + |t|)` is a translate of `A ∩ (A - |t|)`, so both signs are
/// estimated from the latter materialized on `[1, len - |t|]`.
pub fn eps_delta_upper(
    a: &IntSet,
    eps: Rat,
    m: u64,
    trange: Window,
    proxy: AsymptoticProxy,
) -> Result<EpsDeltaResult> {
    check_eps(&eps)?;
    if a.window().lo() != 1 {
        return Err(Error::input(format!(
            "window {} must start at 1 for the asymptotic variant",
            a.window()
        )));
    }
    let len = a.window().len();
    check_shift_safe(trange.iter(), m, len)?;
    let ts: Vec<i64> = trange.iter().collect();
    let per_t = ts
        .par_iter()
        .map(|&t| {
            let w = Window::with_len(1, len - t.unsigned_abs())?;
            density::upper_asymptotic_est(&a.meet_shift_on(t.abs(), w), m, proxy).map(|e| e.value)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(DensityKind::UpperAsymptotic, eps, m, trange, per_t))
}

fn assemble(kind: DensityKind, eps: Rat, n: u64, trange: Window, per_t: Vec<Rat>) -> EpsDeltaResult {
    let members = IntSet::from_fn(trange, |t| per_t[(t - trange.lo()) as usize] > eps);
    EpsDeltaResult {
        kind,
        eps,
        n,
        trange,
        members,
        per_t,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaSyndeticReport {
    #[serde(with = "ratio::serde_rat")]
    pub upper_est: Rat,
    pub trange: Window,
    pub members: usize,
    pub gap: Option<u64>,
    pub gap_bound: u64,
    pub violation: bool,
}

/// Computes `Δ̂_0(A)` over `trange` and checks its interior gaps against `gap_bound`.
pub fn delta_syndetic_check(a: &IntSet, n: u64, gap_bound: u64, trange: Window) -> Result<DeltaSyndeticReport> {
    let est = density::upper_banach_est(a, n)?;
    if est.value <= ratio::zero() {
        return Err(Error::input("Delta syndeticity needs a positive density estimate"));
    }
    let d = eps_delta_banach(a, ratio::zero(), n, trange)?;
    let gap = density::syndetic_gap(&d.members).ok();
    Ok(DeltaSyndeticReport {
        upper_est: est.value,
        trange,
        members: d.members.len(),
        gap,
        gap_bound,
        violation: gap.is_none_or(|g| g > gap_bound),
    })
}

/// A common element `d = b_j - b_i = a_i - a_j` of `Δ(A)` and `Δ(B)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaMeet {
    pub d: i64,
    pub b_i: i64,
    pub b_j: i64,
    pub a_i: i64,
    pub a_j: i64,
}

/// First pair `b_i < b_j` (lexicographic) of B whose difference lies in `Δ(A)`.
pub fn delta_meet(a: &IntSet, b: &[i64]) -> Option<DeltaMeet> {
    let mut b = b.to_vec();
    b.sort_unstable();
    b.dedup();
    for (i, &bi) in b.iter().enumerate() {
        for &bj in &b[i + 1..] {
            let d = bj - bi;
            if let Some(aj) = shift_meet(a, d).min() {
                return Some(DeltaMeet {
                    d,
                    b_i: bi,
                    b_j: bj,
                    a_i: aj + d,
                    a_j: aj,
                });
            }
        }
    }
    None
}

/// Whether pigeonhole alone forces `Δ(A) ∩ Δ(B) ≠ ∅`: the `k = |B|` shifts of
/// A's densest length-`n` window, each holding `c` points, cannot be disjoint
/// inside an interval of length `n + span(B)` once `k·c > n + span(B)`.
pub fn pigeonhole_forces_meet(a: &IntSet, n: u64, b: &[i64]) -> Result<bool> {
    let est = density::upper_banach_est(a, n)?;
    let c = (est.value * Rat::from_integer(n as i128)).to_integer() as u64;
    let (Some(lo), Some(hi)) = (b.iter().min(), b.iter().max()) else {
        return Ok(false);
    };
    let mut k = b.to_vec();
    k.sort_unstable();
    k.dedup();
    Ok(k.len() as u64 * c > n + (hi - lo) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;
    use proptest::prelude::*;

    fn residues(win: Window, m: i64, classes: &[i64]) -> IntSet {
        IntSet::from_fn(win, |x| classes.contains(&x.rem_euclid(m)))
    }

    fn w(lo: i64, hi: i64) -> Window {
        Window::new(lo, hi).unwrap()
    }

    /// Oracle: count pairs directly in every length-n window of the overlap.
    fn brute_per_t(a: &IntSet, t: i64, n: u64) -> Rat {
        let win = a.window();
        let lo = win.lo() + (-t).max(0);
        let hi = win.hi() - t.max(0);
        let mut best = 0usize;
        for x in (lo - 1)..=(hi - n as i64) {
            let c = ((x + 1)..=(x + n as i64))
                .filter(|&y| a.contains(y) && a.contains(y + t))
                .count();
            best = best.max(c);
        }
        rat(best as i128, n as i128)
    }

    #[test]
    fn banach_examples() {
        let a = residues(w(0, 4999), 5, &[0, 1]);
        let d = eps_delta_banach(&a, rat(1, 4), 500, w(-100, 100)).unwrap();
        let expect: Vec<i64> = (-100..=100).filter(|t| t % 5 == 0).collect();
        assert_eq!(d.members.to_vec(), expect);
        for t in [-7, -5, -1, 0, 1, 3, 99] {
            assert_eq!(*d.estimate(t).unwrap(), brute_per_t(&a, t, 500));
        }
        let d = eps_delta_banach(&a, rat(1, 10), 500, w(-100, 100)).unwrap();
        let expect: Vec<i64> = (-100i64..=100)
            .filter(|t| matches!(t.rem_euclid(5), 0 | 1 | 4))
            .collect();
        assert_eq!(d.members.to_vec(), expect);
        assert!(d.contains(0));
    }

    #[test]
    fn rejects_unsafe_shift() {
        let a = residues(w(0, 99), 5, &[0]);
        match eps_delta_banach(&a, rat(0, 1), 90, w(-20, 20)) {
            Err(Error::ShiftUnsafe { t, .. }) => assert_eq!(t, -20),
            other => panic!("expected shift error, got {other:?}"),
        }
        assert!(eps_delta_banach(&a, rat(-1, 2), 10, w(0, 0)).is_err());
    }

    #[test]
    fn upper_examples() {
        let p = AsymptoticProxy::default();
        let evens = residues(w(1, 10_000), 2, &[0]);
        let d = eps_delta_upper(&evens, rat(1, 4), 5000, w(-50, 50), p).unwrap();
        let expect: Vec<i64> = (-50..=50).filter(|t| t % 2 == 0).collect();
        assert_eq!(d.members.to_vec(), expect);
        let d = eps_delta_upper(&evens, rat(1, 1), 5000, w(-50, 50), p).unwrap();
        assert!(d.members.is_empty());
        let full = IntSet::full(w(1, 300));
        let d = eps_delta_upper(&full, rat(0, 1), 100, w(-200, 200), p).unwrap();
        assert_eq!(d.members.len(), 401);
        assert!(eps_delta_upper(&evens.shift(1), rat(0, 1), 10, w(0, 1), p).is_err());
    }

    #[test]
    fn syndetic_check_examples() {
        let a = residues(w(0, 999), 4, &[0]);
        let r = delta_syndetic_check(&a, 100, 4, w(-200, 200)).unwrap();
        assert_eq!(r.gap, Some(4));
        assert!(!r.violation);
        let full = IntSet::full(w(0, 499));
        assert_eq!(delta_syndetic_check(&full, 50, 1, w(-30, 30)).unwrap().gap, Some(1));
        assert!(delta_syndetic_check(&IntSet::empty(w(0, 99)), 10, 1, w(0, 3)).is_err());
    }

    #[test]
    fn meet_examples() {
        let a = residues(w(0, 200), 3, &[0]);
        let m = delta_meet(&a, &[0, 1, 2, 3]).unwrap();
        assert_eq!((m.d, m.b_i, m.b_j), (3, 0, 3));
        assert!(a.contains(m.a_i) && a.contains(m.a_j));
        assert!(delta_meet(&a, &[0, 1, 2]).is_none());
        assert!(pigeonhole_forces_meet(&a, 30, &[0, 1, 2, 4, 5]).unwrap());
    }

    fn arb_set() -> impl Strategy<Value = IntSet> {
        (30u64..120, proptest::collection::vec(any::<bool>(), 120)).prop_map(|(len, bits)| {
            IntSet::from_fn(Window::with_len(0, len).unwrap(), |x| bits[x as usize])
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn containment_symmetry_and_oracle(a in arb_set(), e1 in 0i128..10, e2 in 0i128..10) {
            let n = 10u64;
            let tmax = (a.window().len() - n) as i64;
            let tr = Window::new(-tmax.min(12), tmax.min(12)).unwrap();
            let (lo, hi) = (rat(e1.min(e2), 10), rat(e1.max(e2), 10));
            let small = eps_delta_banach(&a, lo, n, tr).unwrap();
            let big = eps_delta_banach(&a, hi, n, tr).unwrap();
            prop_assert!(big.members.is_subset(&small.members));
            let delta = a.delta_set();
            prop_assert!(small.members.is_subset(&delta));
            for t in tr.iter() {
                prop_assert_eq!(small.estimate(t), small.estimate(-t));
                prop_assert_eq!(small.contains(t), small.contains(-t));
                prop_assert_eq!(*small.estimate(t).unwrap(), brute_per_t(&a, t, n));
            }
        }

        #[test]
        fn pigeonhole_meets(a in arb_set(), b in proptest::collection::btree_set(0i64..40, 2..12)) {
            let b: Vec<i64> = b.into_iter().collect();
            if pigeonhole_forces_meet(&a, 20, &b).unwrap() {
                let m = delta_meet(&a, &b).expect("pigeonhole guarantees a common difference");
                prop_assert!(a.delta_set().contains(m.d));
                prop_assert_eq!(m.a_i - m.a_j, m.b_j - m.b_i);
            }
        }
    }
}
