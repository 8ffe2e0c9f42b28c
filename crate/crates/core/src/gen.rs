//! Deterministic set generators.
//!
//! A [`GenSpec`] is a small JSON document:
//!
//! ```json
//! {"kind": "bernoulli", "window": [0, 99999], "seed": 7, "p": "3/10"}
//! ```
//!
//! Random kinds draw from SplitMix64 in counter mode: the value for the
//! element at offset `i` from the window start is
//! `mix(seed + (i + 1)·0x9E3779B97F4A7C15)`, so every element can be
//! generated independently and chunked parallel generation gives the same
//! bits as a sequential pass. An element is kept when the top 53 bits `u`
//! satisfy `u·den < num·2⁵³` for inclusion probability `num/den`.

use crate::density;
use crate::error::{Error, Result};
use crate::intset::{IntSet, Window};
use crate::ratio::{self, Rat};
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// The SplitMix64 finalizer.
pub fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The `i`-th output (0-based) of SplitMix64 seeded with `seed`.
pub fn splitmix_at(seed: u64, i: u64) -> u64 {
    mix(seed.wrapping_add(i.wrapping_add(1).wrapping_mul(GOLDEN)))
}

/// Sequential SplitMix64, identical to [`splitmix_at`] read in order.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix(self.state)
    }

    /// Uniform in `[0, bound)` by rejection.
    pub fn below(&mut self, bound: u64) -> u64 {
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }
}

/// Bernoulli trial with probability `p ∈ [0, 1]` from one 64-bit draw.
pub fn bernoulli_draw(u: u64, p: &Rat) -> bool {
    let top = (u >> 11) as i128;
    top * p.denom() < p.numer() * (1i128 << 53)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Progression {
    pub start: i64,
    pub step: i64,
    /// Number of terms; unbounded to the right when absent.
    #[serde(default)]
    pub len: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenKind {
    Bernoulli {
        #[serde(with = "ratio::serde_rat")]
        p: Rat,
    },
    Residues {
        modulus: i64,
        classes: Vec<i64>,
    },
    ApUnion {
        progressions: Vec<Progression>,
    },
    /// Intervals `[coef·k^power + offset, coef·k^power + offset + len_coef·k]`, `k ≥ 1`.
    Blocks {
        #[serde(default = "default_power")]
        power: u32,
        #[serde(default = "one_i64")]
        coef: i64,
        #[serde(default = "one_i64")]
        len_coef: i64,
        #[serde(default)]
        offset: i64,
    },
    /// Thick sets A, B, C with thick complements and `A - B ⊆ C`.
    ThickTriple { scale: u64 },
    /// `b_1 < b_2 < …` with every `b_j - b_i` in T. T defaults to the
    /// default blocks on the same window.
    ChainInThick {
        count: u64,
        #[serde(default)]
        thick: Option<Box<GenSpec>>,
    },
}

fn default_power() -> u32 {
    3
}

fn one_i64() -> i64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub window: Window,
    #[serde(default)]
    pub seed: u64,
    #[serde(flatten)]
    pub kind: GenKind,
}

impl GenSpec {
    pub fn new(kind: GenKind, window: Window, seed: u64) -> Self {
        GenSpec { window, seed, kind }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn bernoulli(p: Rat, window: Window, seed: u64) -> Self {
        GenSpec::new(GenKind::Bernoulli { p }, window, seed)
    }

    pub fn residues(modulus: i64, classes: &[i64], window: Window) -> Self {
        GenSpec::new(
            GenKind::Residues {
                modulus,
                classes: classes.to_vec(),
            },
            window,
            0,
        )
    }

    pub fn blocks(window: Window) -> Self {
        GenSpec::new(
            GenKind::Blocks {
                power: 3,
                coef: 1,
                len_coef: 1,
                offset: 0,
            },
            window,
            0,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Generated {
    Single(IntSet),
    Triple { a: IntSet, b: IntSet, c: IntSet },
}

impl Generated {
    /// Every generated set with a short label.
    pub fn sets(&self) -> Vec<(&'static str, &IntSet)> {
        match self {
            Generated::Single(s) => vec![("set", s)],
            Generated::Triple { a, b, c } => vec![("a", a), ("b", b), ("c", c)],
        }
    }

    pub fn into_single(self) -> Result<IntSet> {
        match self {
            Generated::Single(s) => Ok(s),
            Generated::Triple { .. } => Err(Error::input("this generator yields three sets")),
        }
    }
}

pub fn generate(spec: &GenSpec) -> Result<Generated> {
    let w = spec.window;
    match &spec.kind {
        GenKind::Bernoulli { p } => {
            if p.is_negative() || *p > Rat::one() {
                return Err(Error::input(format!("probability {} outside [0, 1]", ratio::fmt_rat(p))));
            }
            Ok(Generated::Single(bernoulli(p, w, spec.seed)))
        }
        GenKind::Residues { modulus, classes } => {
            if *modulus < 1 {
                return Err(Error::input("modulus must be positive"));
            }
            let mut keep = vec![false; *modulus as usize];
            for c in classes {
                keep[c.rem_euclid(*modulus) as usize] = true;
            }
            Ok(Generated::Single(IntSet::from_fn(w, |x| keep[x.rem_euclid(*modulus) as usize])))
        }
        GenKind::ApUnion { progressions } => {
            let mut members = Vec::new();
            for ap in progressions {
                if ap.step < 1 {
                    return Err(Error::input("progression step must be positive"));
                }
                let first = if ap.start >= w.lo() {
                    0
                } else {
                    (w.lo() - ap.start + ap.step - 1) / ap.step
                };
                let last = (w.hi() - ap.start).div_euclid(ap.step);
                let last = ap.len.map_or(last, |l| last.min(l as i64 - 1));
                members.extend((first..=last).map(|k| ap.start + k * ap.step));
            }
            Ok(Generated::Single(IntSet::from_members(members, w)?))
        }
        GenKind::Blocks {
            power,
            coef,
            len_coef,
            offset,
        } => Ok(Generated::Single(blocks(w, *power, *coef, *len_coef, *offset)?)),
        GenKind::ThickTriple { scale } => thick_triple(w, *scale),
        GenKind::ChainInThick { count, thick } => {
            let t = match thick {
                Some(t) => generate(t)?.into_single()?,
                None => generate(&GenSpec::blocks(w))?.into_single()?,
            };
            Ok(Generated::Single(chain_in_thick(&t, *count, w)?))
        }
    }
}

fn bernoulli(p: &Rat, w: Window, seed: u64) -> IntSet {
    use rayon::prelude::*;
    let len = w.len();
    let words: Vec<u64> = (0..len.div_ceil(64))
        .into_par_iter()
        .map(|k| {
            let mut word = 0u64;
            for b in 0..64u64.min(len - 64 * k) {
                if bernoulli_draw(splitmix_at(seed, 64 * k + b), p) {
                    word |= 1 << b;
                }
            }
            word
        })
        .collect();
    IntSet::from_words(w, words)
}

fn blocks(w: Window, power: u32, coef: i64, len_coef: i64, offset: i64) -> Result<IntSet> {
    if power < 1 || coef < 1 || len_coef < 0 {
        return Err(Error::input("blocks need power >= 1, coef >= 1, len_coef >= 0"));
    }
    let mut s = IntSet::empty(w);
    let mut members = Vec::new();
    for k in 1i64.. {
        let Some(start) = k.checked_pow(power).and_then(|v| v.checked_mul(coef)).and_then(|v| v.checked_add(offset)) else {
            break;
        };
        if start > w.hi() {
            break;
        }
        let end = (start + len_coef * k).min(w.hi());
        members.extend(start.max(w.lo())..=end);
    }
    if !members.is_empty() {
        s = IntSet::from_members(members, w)?;
    }
    Ok(s)
}

/// Blocks of length `scale` at `lo + 2·scale·(k³ - 1)`, B offset by
/// `scale/2`, and C the union of the difference bands. The three
/// advertised properties are re-checked before returning.
fn thick_triple(w: Window, scale: u64) -> Result<Generated> {
    let s = scale as i64;
    if s < 1 {
        return Err(Error::input("scale must be positive"));
    }
    if (w.len() as i64) < 16 * s {
        return Err(Error::Generation(format!("window {w} too short for two blocks of scale {scale}")));
    }
    let starts = |off: i64| -> Vec<i64> {
        (1i64..)
            .map(|k| w.lo() + off + 2 * s * (k * k * k - 1))
            .take_while(|&x| x + s - 1 <= w.hi())
            .collect()
    };
    let (sa, sb) = (starts(0), starts(s / 2));
    let fill = |st: &[i64]| IntSet::from_members(st.iter().flat_map(|&x| x..x + s), w);
    let (a, b) = (fill(&sa)?, fill(&sb)?);
    let dw = Window::new(w.lo() - w.hi(), w.hi() - w.lo())?;
    let mut bands = Vec::new();
    for &x in &sa {
        for &y in &sb {
            bands.extend(x - y - (s - 1)..=x - y + (s - 1));
        }
    }
    let c = IntSet::from_members(bands, dw)?;
    let thick = |set: &IntSet| density::thick_witness(set, scale).is_some();
    let checks = [
        thick(&a),
        thick(&a.complement_in(w)),
        thick(&b),
        thick(&b.complement_in(w)),
        thick(&c),
        thick(&c.complement_in(dw)),
        a.difference_set(&b).is_subset(&c),
    ];
    if checks.iter().any(|ok| !ok) {
        return Err(Error::Generation(format!("thick triple at scale {scale} failed its own checks: {checks:?}")));
    }
    Ok(Generated::Triple { a, b, c })
}

/// Greedy chain `b_1 = lo < b_2 < …` in `w` with `b_j - b_i ∈ T` for all
/// `i < j`: each new element is the least `x` in `⋂_i (T + b_i)` beyond the
/// previous one.
pub fn chain_in_thick(t: &IntSet, count: u64, w: Window) -> Result<IntSet> {
    let mut chain = vec![w.lo()];
    let mut allowed = t.shift(w.lo()).restrict(w);
    while (chain.len() as u64) < count {
        let last = *chain.last().unwrap();
        let next = allowed.iter().find(|&x| x > last).ok_or_else(|| {
            Error::Generation(format!(
                "no chain element beyond {last} after {} picks; T is not thick enough in {w}",
                chain.len()
            ))
        })?;
        chain.push(next);
        allowed = allowed.intersect(&t.shift(next).restrict(w));
    }
    let b = IntSet::from_members(chain.iter().copied(), w)?;
    for (i, &x) in chain.iter().enumerate() {
        for &y in &chain[..i] {
            if !t.contains(x - y) {
                return Err(Error::Generation(format!("chain difference {} is not in T", x - y)));
            }
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    fn w(lo: i64, hi: i64) -> Window {
        Window::new(lo, hi).unwrap()
    }

    #[test]
    fn splitmix_reference_vector() {
        let expected = [
            6457827717110365317u64,
            3203168211198807973,
            9817491932198370423,
            4593380528125082431,
            16408922859458223821,
        ];
        let mut rng = SplitMix64::new(1234567);
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(rng.next_u64(), e);
            assert_eq!(splitmix_at(1234567, i as u64), e);
        }
    }

    #[test]
    fn spec_round_trip() {
        let text = r#"{"kind": "bernoulli", "window": [0, 999], "seed": 7, "p": "3/10"}"#;
        let spec = GenSpec::from_json(text).unwrap();
        assert_eq!(spec, GenSpec::bernoulli(rat(3, 10), w(0, 999), 7));
        let back = GenSpec::from_json(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
        let chain = r#"{"kind": "chain_in_thick", "window": [0, 5000], "count": 4,
            "thick": {"kind": "blocks", "window": [0, 5000], "power": 2, "coef": 10}}"#;
        assert!(matches!(GenSpec::from_json(chain).unwrap().kind, GenKind::ChainInThick { count: 4, .. }));
        assert!(GenSpec::from_json(r#"{"kind": "nope", "window": [0, 1]}"#).is_err());
    }

    #[test]
    fn bernoulli_is_reproducible() {
        let spec = GenSpec::bernoulli(rat(3, 10), w(-500, 99_999), 42);
        let a = generate(&spec).unwrap().into_single().unwrap();
        let b = generate(&spec).unwrap().into_single().unwrap();
        assert_eq!(a, b);
        let frac = a.len() as f64 / a.window().len() as f64;
        assert!((frac - 0.3).abs() < 0.01);
        let seq: Vec<i64> = {
            let mut rng = SplitMix64::new(42);
            w(-500, 99_999).iter().filter(|_| bernoulli_draw(rng.next_u64(), &rat(3, 10))).collect()
        };
        assert_eq!(a.to_vec(), seq);
        assert!(generate(&GenSpec::bernoulli(rat(0, 1), w(0, 99), 1)).unwrap().into_single().unwrap().is_empty());
        assert_eq!(generate(&GenSpec::bernoulli(rat(1, 1), w(0, 99), 1)).unwrap().into_single().unwrap().len(), 100);
    }

    #[test]
    fn deterministic_kinds() {
        let r = generate(&GenSpec::residues(2, &[0], w(0, 9))).unwrap().into_single().unwrap();
        assert_eq!(r.to_vec(), vec![0, 2, 4, 6, 8]);
        let ap = GenSpec::new(
            GenKind::ApUnion {
                progressions: vec![
                    Progression { start: 3, step: 5, len: Some(3) },
                    Progression { start: -20, step: 7, len: None },
                ],
            },
            w(0, 30),
            0,
        );
        assert_eq!(generate(&ap).unwrap().into_single().unwrap().to_vec(), vec![1, 3, 8, 13, 15, 22, 29]);
        let blocks = GenSpec::new(
            GenKind::Blocks {
                power: 2,
                coef: 10,
                len_coef: 1,
                offset: 0,
            },
            w(0, 10_000),
            0,
        );
        let b = generate(&blocks).unwrap().into_single().unwrap();
        // [10k², 10k² + k] holds k + 1 points, so the k = 4 block is the first of length 5
        assert_eq!(density::thick_witness(&b, 5), Some(160));
        assert_eq!(density::thick_witness(&b, 6), Some(250));
        let d = generate(&GenSpec::blocks(w(0, 100))).unwrap().into_single().unwrap();
        assert_eq!(d.to_vec(), vec![1, 2, 8, 9, 10, 27, 28, 29, 30, 64, 65, 66, 67, 68]);
    }

    #[test]
    fn chain_examples() {
        let spec = GenSpec::new(GenKind::ChainInThick { count: 5, thick: None }, w(0, 100_000), 0);
        let b = generate(&spec).unwrap().into_single().unwrap();
        assert_eq!(b.to_vec(), vec![0, 1, 2, 10, 1010]);
        let t = generate(&GenSpec::blocks(w(0, 100_000))).unwrap().into_single().unwrap();
        let delta = b.delta_set();
        assert!(delta.iter().all(|d| d == 0 || t.contains(d.abs())));
        let tight = GenSpec::new(GenKind::ChainInThick { count: 5, thick: None }, w(0, 500), 0);
        assert!(matches!(generate(&tight), Err(Error::Generation(_))));
    }

    #[test]
    fn thick_triple_examples() {
        let Generated::Triple { a, b, c } = generate(&GenSpec::new(GenKind::ThickTriple { scale: 50 }, w(0, 200_000), 0)).unwrap() else {
            panic!("expected three sets");
        };
        for l in [1, 10, 50] {
            assert!(density::thick_witness(&a, l).is_some());
            assert!(density::thick_witness(&a.complement_in(a.window()), l).is_some());
            assert!(density::thick_witness(&c.complement_in(c.window()), l).is_some());
        }
        assert!(a.difference_set(&b).is_subset(&c));
        assert!(matches!(
            generate(&GenSpec::new(GenKind::ThickTriple { scale: 50 }, w(0, 500), 0)),
            Err(Error::Generation(_))
        ));
    }
}
