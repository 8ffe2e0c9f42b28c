//! Exact finite-window density estimators and structural classifiers.
//!
//! All values are exact rationals. Extremal offsets are always the least
//! one attaining the extremum, so results never depend on scan order.

use crate::error::{Error, Result};
use crate::intset::{IntSet, Window};
use crate::ratio::{self, Rat};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityKind {
    UpperBanach,
    LowerBanach,
    UpperAsymptotic,
    LowerAsymptotic,
    Schnirelmann,
}

/// An exact density value together with the parameters that produced it.
///
/// For the Banach kinds, `n` is the sub-window length and the extremal
/// sub-window is `[at + 1, at + n]`. For the asymptotic kinds, `n` is the
/// horizon `m` and `at` is the attaining prefix length. For Schnirelmann,
/// `n` is the horizon and `at` the least minimizing prefix length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityEstimate {
    #[serde(with = "ratio::serde_rat")]
    pub value: Rat,
    pub n: u64,
    pub at: i64,
    pub kind: DensityKind,
}

/// Range of prefix lengths scanned by the asymptotic proxies: `[⌈m·start⌉, m]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AsymptoticProxy {
    pub start: Rat,
}

impl Default for AsymptoticProxy {
    fn default() -> Self {
        AsymptoticProxy {
            start: ratio::rat(1, 2),
        }
    }
}

impl AsymptoticProxy {
    pub fn range(&self, m: u64) -> (u64, u64) {
        let a = ratio::ceil(&(self.start * Rat::from_integer(m as i128))).max(1) as u64;
        (a.min(m), m)
    }
}

/// Counts `|A ∩ [x + 1, x + n]|` for every `x` with the sub-window inside
/// A's window, in increasing `x`.
pub fn window_counts(a: &IntSet, n: u64) -> Result<Vec<u32>> {
    let w = a.window();
    if n == 0 || n > w.len() {
        return Err(Error::input(format!(
            "sub-window length n = {n} must lie in [1, {}]",
            w.len()
        )));
    }
    let steps = (w.len() - n + 1) as usize;
    let mut out = Vec::with_capacity(steps);
    let mut c = a.count_range(w.lo(), w.lo() + n as i64 - 1) as u32;
    out.push(c);
    for s in 1..steps {
        let leaving = w.lo() + s as i64 - 1;
        let entering = leaving + n as i64;
        c = c + a.contains(entering) as u32 - a.contains(leaving) as u32;
        out.push(c);
    }
    Ok(out)
}

fn extremal(a: &IntSet, n: u64, kind: DensityKind) -> Result<DensityEstimate> {
    let counts = window_counts(a, n)?;
    let pick_max = kind == DensityKind::UpperBanach;
    let mut best = 0usize;
    for (i, &c) in counts.iter().enumerate() {
        let better = if pick_max { c > counts[best] } else { c < counts[best] };
        if better {
            best = i;
        }
    }
    Ok(DensityEstimate {
        value: ratio::frac(counts[best] as u64, n),
        n,
        at: a.window().lo() - 1 + best as i64,
        kind,
    })
}

/// Maximum of `|A ∩ [x+1, x+n]| / n` over sub-windows inside A's window.
pub fn upper_banach_est(a: &IntSet, n: u64) -> Result<DensityEstimate> {
    extremal(a, n, DensityKind::UpperBanach)
}

/// Minimum of `|A ∩ [x+1, x+n]| / n` over sub-windows inside A's window.
pub fn lower_banach_est(a: &IntSet, n: u64) -> Result<DensityEstimate> {
    extremal(a, n, DensityKind::LowerBanach)
}

fn anchored(a: &IntSet, m: u64) -> Result<()> {
    if a.window().lo() != 1 {
        return Err(Error::input(format!(
            "window {} must start at 1 (rebase the set first)",
            a.window()
        )));
    }
    if m == 0 || m > a.window().len() {
        return Err(Error::input(format!(
            "horizon {m} must lie in [1, {}]",
            a.window().len()
        )));
    }
    Ok(())
}

fn asymptotic(a: &IntSet, m: u64, proxy: AsymptoticProxy, upper: bool) -> Result<DensityEstimate> {
    anchored(a, m)?;
    let (from, to) = proxy.range(m);
    let mut c = a.count_range(1, from as i64 - 1) as u64;
    let mut best: Option<(Rat, u64)> = None;
    for len in from..=to {
        c += a.contains(len as i64) as u64;
        let v = ratio::frac(c, len);
        let better = match &best {
            None => true,
            Some((b, _)) => {
                if upper {
                    v > *b
                } else {
                    v < *b
                }
            }
        };
        if better {
            best = Some((v, len));
        }
    }
    let (value, at) = best.expect("nonempty proxy range");
    Ok(DensityEstimate {
        value,
        n: m,
        at: at as i64,
        kind: if upper {
            DensityKind::UpperAsymptotic
        } else {
            DensityKind::LowerAsymptotic
        },
    })
}

/// Finite limsup proxy: max of `|A ∩ [1, len]| / len` over the proxy range.
pub fn upper_asymptotic_est(a: &IntSet, m: u64, proxy: AsymptoticProxy) -> Result<DensityEstimate> {
    asymptotic(a, m, proxy, true)
}

pub fn lower_asymptotic_est(a: &IntSet, m: u64, proxy: AsymptoticProxy) -> Result<DensityEstimate> {
    asymptotic(a, m, proxy, false)
}

/// `min_{1 ≤ i ≤ n} |A ∩ [1, i]| / i` on a set anchored at 1.
pub fn schnirelmann_est(a: &IntSet, n: u64) -> Result<DensityEstimate> {
    anchored(a, n)?;
    let mut c = 0u64;
    let mut best = (ratio::int(2), 0u64);
    for i in 1..=n {
        c += a.contains(i as i64) as u64;
        let v = ratio::frac(c, i);
        if v < best.0 {
            best = (v, i);
        }
    }
    Ok(DensityEstimate {
        value: best.0,
        n,
        at: best.1 as i64,
        kind: DensityKind::Schnirelmann,
    })
}

/// Schnirelmann density of a finite pattern read as a subset of `[1, n]`.
pub fn prefix_schnirelmann(elems: &[i64], n: u64) -> Rat {
    let mut c = 0u64;
    let mut j = 0usize;
    let mut best = ratio::int(1);
    for i in 1..=n as i64 {
        while j < elems.len() && elems[j] <= i {
            if elems[j] >= 1 {
                c += 1;
            }
            j += 1;
        }
        let v = ratio::frac(c, i as u64);
        if v < best {
            best = v;
        }
    }
    best
}

/// Least `x` with `[x, x + len - 1] ⊆ A`.
pub fn thick_witness(a: &IntSet, len: u64) -> Option<i64> {
    if len == 0 {
        return Some(a.window().lo());
    }
    let mut run = 0u64;
    for x in a.iter() {
        // runs are tracked through consecutive members only
        run = if run > 0 && a.contains(x - 1) { run + 1 } else { 1 };
        if run >= len {
            return Some(x - len as i64 + 1);
        }
    }
    None
}

/// Longest interval contained in A, as `(start, length)`; least start on ties.
pub fn longest_run(a: &IntSet) -> Option<(i64, u64)> {
    let mut best: Option<(i64, u64)> = None;
    let mut start = 0i64;
    let mut run = 0u64;
    for x in a.iter() {
        if run > 0 && a.contains(x - 1) {
            run += 1;
        } else {
            start = x;
            run = 1;
        }
        if best.is_none_or(|(_, l)| run > l) {
            best = Some((start, run));
        }
    }
    best
}

/// Largest gap between consecutive members. The artificial gaps between the
/// window edges and the first/last member are not counted.
pub fn syndetic_gap(a: &IntSet) -> Result<u64> {
    if a.len() < 2 {
        return Err(Error::input("syndetic gap needs at least two members"));
    }
    let mut it = a.iter();
    let mut prev = it.next().unwrap();
    let mut gap = 0u64;
    for x in it {
        gap = gap.max((x - prev) as u64);
        prev = x;
    }
    Ok(gap)
}

/// Least length-`len` interval of A's window on which `A + [0, g-1]` is full,
/// i.e. every point has a member at most `g - 1` below it.
pub fn piecewise_syndetic_witness(a: &IntSet, g: u64, len: u64) -> Option<Window> {
    if g == 0 || len == 0 || len > a.window().len() {
        return None;
    }
    let pad = IntSet::full(Window::with_len(0, g).ok()?);
    let cover = a.sumset(&pad).restrict(a.window());
    thick_witness(&cover, len).map(|x| Window::with_len(x, len).expect("positive length"))
}

/// The thick / syndetic / piecewise-syndetic picture of a set at a given scale.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Structure {
    pub longest_run: Option<(i64, u64)>,
    pub complement_longest_run: Option<(i64, u64)>,
    pub syndetic_gap: Option<u64>,
    pub thick_at: Option<i64>,
    pub complement_thick_at: Option<i64>,
    pub piecewise_syndetic: Option<Window>,
    pub scale: u64,
    pub gap_bound: u64,
}

/// Structural report: thick and complement-thick witnesses at length
/// `scale`, the interior gap, and a piecewise-syndetic interval of length
/// `scale` with gaps at most `gap_bound`.
pub fn classify(a: &IntSet, scale: u64, gap_bound: u64) -> Structure {
    let comp = a.complement_in(a.window());
    Structure {
        longest_run: longest_run(a),
        complement_longest_run: longest_run(&comp),
        syndetic_gap: syndetic_gap(a).ok(),
        thick_at: thick_witness(a, scale),
        complement_thick_at: thick_witness(&comp, scale),
        piecewise_syndetic: piecewise_syndetic_witness(a, gap_bound, scale),
        scale,
        gap_bound,
    }
}
