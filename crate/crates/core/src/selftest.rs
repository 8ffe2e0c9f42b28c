//! The invariant suite behind `diffembed selftest` and the acceptance
//! tests. Each check runs one bound at a fixed scale in exact arithmetic
//! and reports what it saw; a check passes when it records no violation.

use crate::bohr;
use crate::cover::{self, CoverMode};
use crate::delta;
use crate::embed::{self, Pattern};
use crate::error::Result;
use crate::extract::{self, ExtractOptions, IntersectParams, DifferenceCoverParams, PipelineParams};
use crate::gen::{self, GenSpec, SplitMix64};
use crate::intset::{IntSet, Window};
use crate::ratio::{self, fmt_rat, rat, Rat};
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::time::Instant;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestConfig {
    /// Random instances for the pigeonhole and overlap checks.
    pub trials: u64,
    /// Random instances per embeddability property.
    pub embed_trials: u64,
    pub seed: u64,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            trials: 10_000,
            embed_trials: 200,
            seed: 1,
        }
    }
}

impl SelftestConfig {
    pub fn with_trials(trials: u64, seed: u64) -> Self {
        SelftestConfig {
            trials,
            embed_trials: trials.min(200),
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub summary: String,
    pub details: Value,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimedOutcome {
    pub outcome: CheckOutcome,
    pub elapsed_ms: u64,
}

pub const CHECK_NAMES: [&str; 12] = [
    "pigeonhole shift bound",
    "pairwise overlap bound",
    "shift cover size on periodic sets",
    "shift-meet density on residues {0,1,2} mod 5",
    "extraction certificate on Bernoulli(1/2)",
    "pipeline prefix density and containment",
    "difference-set cover",
    "intersected Delta-set cover",
    "covering sets are dense",
    "embeddability properties",
    "Bohr witness in A - B",
    "thread-count determinism",
];

fn outcome(id: u32, summary: String, details: Value, violations: Vec<String>) -> CheckOutcome {
    CheckOutcome {
        id,
        name: CHECK_NAMES.get(id.wrapping_sub(1) as usize).unwrap_or(&"unknown check").to_string(),
        passed: violations.is_empty(),
        summary,
        details,
        violations,
    }
}

fn failed(id: u32, err: crate::Error) -> CheckOutcome {
    outcome(id, format!("error: {err}"), Value::Null, vec![err.to_string()])
}

fn w(lo: i64, hi: i64) -> Window {
    Window::new(lo, hi).expect("valid window")
}

fn residues(win: Window, m: i64, classes: &[i64]) -> IntSet {
    gen::generate(&GenSpec::residues(m, classes, win))
        .and_then(|g| g.into_single())
        .expect("residue generator")
}

fn random_set(rng: &mut SplitMix64, win: Window, num: u64, den: u64) -> IntSet {
    IntSet::from_fn(win, |_| rng.below(den) < num)
}

/// Runs check `id` (1 to 12).
pub fn run_check(id: u32, cfg: &SelftestConfig) -> CheckOutcome {
    let r = match id {
        1 => pigeonhole_check(cfg),
        2 => overlap_check(cfg),
        3 => cover_size_check(),
        4 => shift_meet_check(),
        5 => extraction_check(),
        6 => pipeline_check(),
        7 => difference_cover_check(),
        8 => intersect_check(),
        9 => covering_density_check(),
        10 => embeddability_check(cfg),
        11 => bohr_check(),
        12 => Ok(determinism_check(cfg, &(1..=11).collect::<Vec<_>>())),
        _ => Err(crate::Error::input(format!("no check numbered {id}"))),
    };
    r.unwrap_or_else(|e| failed(id, e))
}

pub fn run_timed(id: u32, cfg: &SelftestConfig) -> TimedOutcome {
    let start = Instant::now();
    let outcome = run_check(id, cfg);
    TimedOutcome {
        outcome,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

pub fn run_all(cfg: &SelftestConfig) -> Vec<TimedOutcome> {
    (1..=12).map(|id| run_timed(id, cfg)).collect()
}

fn pigeonhole_check(cfg: &SelftestConfig) -> Result<CheckOutcome> {
    let mut rng = SplitMix64::new(cfg.seed);
    let mut violations = Vec::new();
    let mut min_margin: Option<Rat> = None;
    let mut oracle_checks = 0u64;
    for trial in 0..cfg.trials {
        let big_n = 1 + rng.below(4096) as i64;
        let nu = 1 + rng.below(256.min(big_n as u64)) as i64;
        let (pc, pd) = (rng.below(17), rng.below(17));
        let c = random_set(&mut rng, w(1, big_n), pc, 16);
        let d = random_set(&mut rng, w(1, nu), pd, 16);
        let p = extract::pigeonhole_shift(&c, &d)?;
        let margin = p.ratio - p.bound;
        if min_margin.is_none_or(|m| margin < m) {
            min_margin = Some(margin);
        }
        if !p.holds {
            violations.push(format!("trial {trial}: ratio {} below bound {}", fmt_rat(&p.ratio), fmt_rat(&p.bound)));
        }
        if trial % 100 == 0 {
            oracle_checks += 1;
            let members = d.to_vec();
            let best = (1..=big_n)
                .map(|x| members.iter().filter(|&&e| c.contains(e + x)).count() as u64)
                .max()
                .unwrap();
            if best != p.count {
                violations.push(format!("trial {trial}: count {} but direct recount {best}", p.count));
            }
        }
    }
    let details = json!({
        "trials": cfg.trials,
        "min_margin": min_margin.map(|m| fmt_rat(&m)),
        "oracle_checks": oracle_checks,
    });
    Ok(outcome(
        1,
        format!("{} trials, least ratio - bound = {}", cfg.trials, min_margin.map_or("-".into(), |m| fmt_rat(&m))),
        details,
        violations,
    ))
}

fn overlap_check(cfg: &SelftestConfig) -> Result<CheckOutcome> {
    let mut rng = SplitMix64::new(cfg.seed ^ 0x5EED);
    let mut violations = Vec::new();
    let mut min_gap: Option<Rat> = None;
    for trial in 0..cfg.trials {
        let k = 2 + rng.below(11) as usize;
        let n = 1 + rng.below(4096);
        let family: Vec<IntSet> = (0..k)
            .map(|_| {
                let p = rng.below(17);
                random_set(&mut rng, w(1, n as i64), p, 16)
            })
            .collect();
        let cs = cover::cs_family_inequality(&family, n)?;
        if !cs.holds {
            violations.push(format!("trial {trial}: {} > {}", cs.lhs, cs.rhs));
        }
        let g = cover::guaranteed_overlap(&family, n)?;
        let m = cover::max_pair_overlap(&family, n);
        if g > m {
            violations.push(format!("trial {trial}: guaranteed {} above actual {}", fmt_rat(&g), fmt_rat(&m)));
        }
        let gap = m - g;
        if min_gap.is_none_or(|v| gap < v) {
            min_gap = Some(gap);
        }
        if trial % 100 == 0 {
            let direct = (0..k)
                .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                .map(|(i, j)| family[i].iter().filter(|&x| family[j].contains(x)).count() as u64)
                .max()
                .unwrap();
            if ratio::frac(direct, n) != m {
                violations.push(format!("trial {trial}: overlap recount {direct} disagrees"));
            }
        }
    }
    Ok(outcome(
        2,
        format!("{} families, least slack {}", cfg.trials, min_gap.map_or("-".into(), |m| fmt_rat(&m))),
        json!({"trials": cfg.trials, "min_slack": min_gap.map(|m| fmt_rat(&m))}),
        violations,
    ))
}

/// Cover of `[-500, 500]` by translates of `Δ̂_0(A)`, for the two periodic
/// sets on `[0, 10⁵]`, with window length 99000.
pub fn periodic_covers() -> Result<Vec<(IntSet, cover::ShiftCoverReport, u64)>> {
    let xs: Vec<i64> = (-500..=500).collect();
    [(5, vec![0, 1], 2u64), (4, vec![0], 4)]
        .into_iter()
        .map(|(m, classes, limit)| {
            let a = residues(w(0, 100_000), m, &classes);
            let r = cover::delta_shift_cover(&a, &xs, Rat::from_integer(0), 99_000, 0)?;
            Ok((a, r, limit))
        })
        .collect()
}

fn cover_size_check() -> Result<CheckOutcome> {
    let mut violations = Vec::new();
    let mut rows = Vec::new();
    for (i, (_, r, limit)) in periodic_covers()?.into_iter().enumerate() {
        let c = &r.cover;
        if c.shifts.len() as u64 > limit || c.shifts.len() as u64 > c.k_bound || !c.covered {
            violations.push(format!("case {i}: {} shifts, bound {}, covered {}", c.shifts.len(), c.k_bound, c.covered));
        }
        violations.extend(r.violations.iter().map(|v| format!("case {i}: {v}")));
        rows.push(json!({"shifts": c.shifts, "k_bound": c.k_bound, "covered": c.covered, "used_shifts": r.used_shifts}));
    }
    Ok(outcome(
        3,
        format!("cover sizes {:?}", rows.iter().map(|r| r["shifts"].as_array().unwrap().len()).collect::<Vec<_>>()),
        json!(rows),
        violations,
    ))
}

fn shift_meet_check() -> Result<CheckOutcome> {
    let a = residues(w(0, 100_000), 5, &[0, 1, 2]);
    let r = delta::eps_delta_banach(&a, Rat::from_integer(0), 1000, w(-1000, 1000))?;
    let floor = rat(12, 100);
    let mut violations = Vec::new();
    for (i, v) in r.per_t.iter().enumerate() {
        let t = r.trange.lo() + i as i64;
        // the residue count of A ∩ (A - t) in one period
        let period = (0..5).filter(|x| [0, 1, 2].contains(x) && [0, 1, 2].contains(&(x + t).rem_euclid(5))).count();
        if *v < floor {
            violations.push(format!("t = {t}: {} below 12/100", fmt_rat(v)));
        }
        if *v != ratio::frac(period as u64, 5) {
            violations.push(format!("t = {t}: {} differs from the periodic count {period}/5", fmt_rat(v)));
        }
    }
    let min = r.per_t.iter().min().copied().unwrap();
    Ok(outcome(4, format!("least estimate {}", fmt_rat(&min)), json!({"min": fmt_rat(&min)}), violations))
}

fn extraction_check() -> Result<CheckOutcome> {
    let c = gen::generate(&GenSpec::bernoulli(rat(1, 2), w(1, 100_000), 20_240_601))?.into_single()?;
    let gamma = rat(9, 20);
    let cert = extract::trace_extract(&c, 12, &gamma)?;
    let mut violations = extract::verify_extraction(&c, &cert);
    let big_n = c.window().len();
    let region = ratio::frac(cert.gamma_size, big_n);
    if region <= cert.walk.bound {
        violations.push(format!("|Γ|/N = {} not above {}", fmt_rat(&region), fmt_rat(&cert.walk.bound)));
    }
    if (cert.theta_count() as u128) << 12 < cert.gamma_size as u128 {
        violations.push("trace class below |Γ|/2^12".into());
    }
    Ok(outcome(
        5,
        format!(
            "|Γ| = {}, |Θ| = {}, E = {:?}",
            cert.gamma_size,
            cert.theta_count(),
            cert.e_prefix.elems()
        ),
        json!({
            "gamma_size": cert.gamma_size,
            "theta": cert.theta_count(),
            "e": cert.e_prefix,
            "walk_bound": fmt_rat(&cert.walk.bound),
            "m_n": cert.walk.m_n,
        }),
        violations,
    ))
}

fn pipeline_check() -> Result<CheckOutcome> {
    let a = residues(w(0, 200_000), 2, &[0]);
    let b = residues(w(0, 200_000), 3, &[0]);
    let mut p = PipelineParams::new(100_000, 12);
    p.nu = 1000;
    let r = extract::common_pattern(&a, &b, &p)?;
    let mut violations = r.violations.clone();
    let floor = rat(1, 6) - p.slack - Rat::new(p.nu as i128, p.big_n as i128);
    if r.cert.prefix_sigma < floor {
        violations.push(format!("prefix density {} below {}", fmt_rat(&r.cert.prefix_sigma), fmt_rat(&floor)));
    }
    // recount: every θ places E inside B at ξ + θ and inside A at ξ + θ + t_J
    for th in r.cert.theta.iter() {
        for &e in r.cert.e_prefix.elems() {
            let y = r.xi + th + e;
            if !(b.contains(y) && a.contains(y + r.t_j)) {
                violations.push(format!("offset {th}, element {e}: not in the shifted intersection"));
            }
        }
    }
    Ok(outcome(
        6,
        format!("E = {:?}, σ = {}, |Θ| = {}", r.cert.e_prefix.elems(), fmt_rat(&r.cert.prefix_sigma), r.cert.theta_count()),
        json!({
            "e": r.cert.e_prefix,
            "sigma": fmt_rat(&r.cert.prefix_sigma),
            "floor": fmt_rat(&floor),
            "t_j": r.t_j,
            "theta": r.cert.theta_count(),
            "meet_count": r.meet_count,
        }),
        violations,
    ))
}

/// The difference-set cover runs: residues `{0} mod 3` twice, then
/// Bernoulli(3/10) pairs for five seeds. Returns `(A, B, report, |F| limit)`.
pub fn difference_cover_runs() -> Result<Vec<(IntSet, IntSet, extract::DifferenceCoverReport, u64)>> {
    let mut out = Vec::new();
    let a = residues(w(0, 400_000), 3, &[0]);
    let mut pp = PipelineParams::new(198_000, 2000);
    pp.nu = 3000;
    pp.extract = ExtractOptions::long();
    let params = DifferenceCoverParams {
        pipeline: pp,
        x: w(-1000, 1000),
        baseline_radius: 3,
    };
    let r = extract::difference_cover(&a, &a, &params)?;
    out.push((a.clone(), a, r, 9));
    for seed in [11u64, 22, 33, 44, 55] {
        let a = gen::generate(&GenSpec::bernoulli(rat(3, 10), w(0, 1_000_000), seed))?.into_single()?;
        let b = gen::generate(&GenSpec::bernoulli(rat(3, 10), w(0, 1_000_000), seed + 1000))?.into_single()?;
        let mut pp = PipelineParams::new(1_000_000, 5000);
        pp.nu = 10_000;
        pp.extract = ExtractOptions::long();
        let params = DifferenceCoverParams {
            pipeline: pp,
            x: w(-1000, 1000),
            baseline_radius: 3,
        };
        let r = extract::difference_cover(&a, &b, &params)?;
        out.push((a, b, r, 11));
    }
    Ok(out)
}

fn difference_cover_check() -> Result<CheckOutcome> {
    let mut violations = Vec::new();
    let mut rows = Vec::new();
    for (i, (_, _, r, limit)) in difference_cover_runs()?.iter().enumerate() {
        let f = r.cover.shifts.len() as u64;
        if f > *limit {
            violations.push(format!("run {i}: {f} shifts above {limit}"));
        }
        if i == 0 && !r.target_covered {
            violations.push("run 0: safe range not fully covered".into());
        }
        if r.covered_len < 1000 {
            violations.push(format!("run {i}: covered interval length {}", r.covered_len));
        }
        violations.extend(r.violations.iter().map(|v| format!("run {i}: {v}")));
        rows.push(json!({"shifts": r.cover.shifts, "k_bound": r.k_bound, "covered_len": r.covered_len, "t_j": r.pipeline.t_j}));
    }
    Ok(outcome(
        7,
        format!(
            "|F| per run {:?}, covered lengths {:?}",
            rows.iter().map(|r| r["shifts"].as_array().unwrap().len()).collect::<Vec<_>>(),
            rows.iter().map(|r| r["covered_len"].as_u64().unwrap()).collect::<Vec<_>>()
        ),
        json!(rows),
        violations,
    ))
}

/// Residues `{0} mod 2` and `{0} mod 3`, ε = 0, candidates `[-100, 100]`.
pub fn intersect_run() -> Result<(IntSet, IntSet, extract::IntersectReport)> {
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
    let r = extract::intersect_delta_cover(&a, &b, Rat::from_integer(0), &xs, &params)?;
    Ok((a, b, r))
}

fn intersect_check() -> Result<CheckOutcome> {
    let (a, b, r) = intersect_run()?;
    let mut violations = r.violations.clone();
    let f = &r.cover.cover.shifts;
    if f.len() > 6 || !r.cover.cover.covered {
        violations.push(format!("{} shifts, covered {}", f.len(), r.cover.cover.covered));
    }
    let ea = delta::banach_shift_estimates(&a, 1000, &r.cover.used_shifts)?;
    let eb = delta::banach_shift_estimates(&b, 1000, &r.cover.used_shifts)?;
    for ((t, x), y) in r.cover.used_shifts.iter().zip(&ea).zip(&eb) {
        if !(x.is_positive() && y.is_positive()) {
            violations.push(format!("used shift {t} missing from a Delta set"));
        }
    }
    Ok(outcome(
        8,
        format!("F = {:?}, {} used shifts re-verified", f, r.cover.used_shifts.len()),
        json!({"shifts": f, "used_shifts": r.cover.used_shifts, "product_bound": r.product_bound}),
        violations,
    ))
}

fn need_window(range: Window, f: &[i64]) -> Window {
    let (lo, hi) = (f.iter().min().unwrap(), f.iter().max().unwrap());
    w(range.lo() - hi, range.hi() - lo)
}

fn covering_density_check() -> Result<CheckOutcome> {
    let mut violations = Vec::new();
    let mut rows = Vec::new();
    let mut record = |label: String, r: cover::TranslateCoverReport| {
        if !r.premise_holds || !r.holds {
            violations.push(format!("{label}: premise {} holds {}", r.premise_holds, r.holds));
        }
        rows.push(json!({
            "case": label,
            "k": r.k,
            "estimate": r.estimate.map(|e| fmt_rat(&e)),
            "bound": fmt_rat(&r.bound),
        }));
    };
    let x = w(-500, 500);
    for (i, (a, r, _)) in periodic_covers()?.into_iter().enumerate() {
        let f = &r.cover.shifts;
        let d = delta::eps_delta_banach(&a, Rat::from_integer(0), 99_000, need_window(x, f))?.members;
        record(format!("shift cover {i}"), cover::verify_translate_cover(&d, f, CoverMode::FullCover, 500, x)?);
    }
    for (i, (a, b, r, _)) in difference_cover_runs()?.iter().enumerate() {
        let f = &r.cover.shifts;
        let diff = extract::difference_on(a, b, need_window(r.target, f));
        record(format!("difference cover {i}"), cover::verify_translate_cover(&diff, f, CoverMode::FullCover, 1000, r.target)?);
    }
    let (a, b, r) = intersect_run()?;
    let f = &r.cover.cover.shifts;
    let x = w(-100, 100);
    let need = need_window(x, f);
    let da = delta::eps_delta_banach(&a, Rat::from_integer(0), 1000, need)?.members;
    let db = delta::eps_delta_banach(&b, Rat::from_integer(0), 1000, need)?.members;
    record("intersected cover".into(), cover::verify_translate_cover(&da.intersect(&db), f, CoverMode::FullCover, 100, x)?);
    let n = rows.len();
    Ok(outcome(9, format!("{n} covers checked"), json!(rows), violations))
}

fn max_count(y: &IntSet, m: i64) -> usize {
    let yw = y.window();
    ((yw.lo() - m + 1)..=yw.hi()).map(|x| y.count_range(x, x + m - 1)).max().unwrap_or(0)
}

fn embeddability_check(cfg: &SelftestConfig) -> Result<CheckOutcome> {
    let mut rng = SplitMix64::new(cfg.seed ^ 0xE3BE);
    let mut violations = Vec::new();
    let mut counts = [0u64; 6];
    let wide = |x: &IntSet, y: &IntSet| w(y.window().lo() - x.window().hi(), y.window().hi() - x.window().lo());
    for trial in 0..cfg.embed_trials {
        // AP preservation and window counts: Y holds a copy of X
        let x = random_set(&mut rng, w(0, 39), 3, 5);
        let s = rng.below(81) as i64;
        let noise = random_set(&mut rng, w(0, 159), 3, 10);
        let y = x.shift(s).union(&noise).restrict(w(0, 159));
        let r = embed::window_embeddable(&x, &y, 40, wide(&x, &y))?;
        if !r.ok {
            violations.push(format!("trial {trial}: copy of X not found in Y"));
        }
        for k in 2..=4u64 {
            if let Some((_, d)) = embed::find_ap(&x, k)? {
                counts[0] += 1;
                match embed::find_ap(&y, k)? {
                    Some((st, dd)) if (0..k as i64).all(|i| y.contains(st + i * dd)) => {}
                    _ => violations.push(format!("trial {trial}: progression of length {k} (step {d}) lost")),
                }
            }
        }
        for m in [5i64, 10, 20] {
            counts[1] += 1;
            if max_count(&y, m) < max_count(&x, m) {
                violations.push(format!("trial {trial}: window count at length {m} dropped"));
            }
        }

        // transitivity
        let x = random_set(&mut rng, w(0, 29), 3, 5);
        let noise = random_set(&mut rng, w(0, 159), 3, 10);
        let (s1, s2) = (rng.below(20) as i64, rng.below(20) as i64);
        let y = x.shift(40 + s1).union(&noise.restrict(w(0, 119))).restrict(w(0, 119));
        let z = y.shift(10 + s2).union(&noise).restrict(w(0, 159));
        let m = 1 + rng.below(8);
        let xy = embed::window_embeddable(&x, &y, m, wide(&x, &y))?;
        let yz = embed::window_embeddable(&y, &z, m, wide(&y, &z))?;
        counts[2] += 1;
        if xy.ok && yz.ok && !embed::window_embeddable(&x, &z, m, wide(&x, &z))?.ok {
            violations.push(format!("trial {trial}: transitivity fails"));
        }

        // Delta monotonicity with whole-window traces
        let dx = x.delta_set();
        let dy = y.delta_set();
        counts[3] += 1;
        if embed::window_embeddable(&x, &y, 30, wide(&x, &y))?.ok && !dx.iter().all(|d| dy.contains(d)) {
            violations.push(format!("trial {trial}: Delta(X) not inside Delta(Y)"));
        }

        // difference compatibility
        let x1 = random_set(&mut rng, w(0, 19), 1, 2);
        let x2 = random_set(&mut rng, w(0, 19), 1, 2);
        let n1 = random_set(&mut rng, w(0, 79), 1, 5);
        let n2 = random_set(&mut rng, w(0, 79), 1, 5);
        let (t1, t2) = (rng.below(60) as i64, rng.below(60) as i64);
        let y1 = x1.shift(t1).union(&n1).restrict(w(0, 79));
        let y2 = x2.shift(t2).union(&n2).restrict(w(0, 79));
        if !x1.is_empty() && !x2.is_empty() {
            counts[4] += 1;
            let dx = x1.difference_set(&x2);
            let dy = y1.difference_set(&y2);
            if !embed::window_embeddable(&dx, &dy, dx.window().len(), wide(&dx, &dy))?.ok {
                violations.push(format!("trial {trial}: X - X' does not embed into Y - Y'"));
            }
        }

        // intersections of translates
        let x = random_set(&mut rng, w(0, 39), 3, 5);
        let noise = random_set(&mut rng, w(0, 119), 3, 10);
        let t0 = rng.below(80) as i64;
        let y = x.shift(t0).union(&noise).restrict(w(0, 119));
        let g: Vec<i64> = (0..1 + rng.below(3)).map(|_| rng.below(6) as i64).collect();
        let g = Pattern::new(g)?;
        let meet = |s: &IntSet| g.elems().iter().fold(s.clone(), |acc, &gi| acc.intersect(&s.shift(-gi)));
        let (mx, my) = (meet(&x), meet(&y));
        counts[5] += 1;
        if !embed::window_embeddable(&mx, &my, mx.window().len(), wide(&mx, &my))?.ok {
            violations.push(format!("trial {trial}: intersection of translates does not embed"));
        }
    }
    Ok(outcome(
        10,
        format!("{} instances per property, checks {:?}", cfg.embed_trials, counts),
        json!({"instances": cfg.embed_trials, "checks": counts}),
        violations,
    ))
}

fn bohr_check() -> Result<CheckOutcome> {
    let a0 = residues(w(0, 10_000), 7, &[0, 1]);
    let d = a0.difference_set(&a0);
    let mut violations = Vec::new();
    let Some(wit) = bohr::piecewise_bohr_search(&d, 2, &bohr::default_eps_grid(), 1000)? else {
        return Ok(outcome(11, "no witness".into(), Value::Null, vec!["no Bohr witness found".into()]));
    };
    if wit.spec.freqs != vec![rat(1, 7)] {
        violations.push(format!("frequencies {:?}", wit.spec.freqs.iter().map(fmt_rat).collect::<Vec<_>>()));
    }
    let s = bohr::bohr_generate(&wit.spec, d.window());
    if !s.same_members(&residues(d.window(), 7, &[0, 1, 6])) {
        violations.push("generated set is not {0, 1, 6} mod 7".into());
    }
    if wit.interval != d.window() {
        violations.push(format!("witness interval {} is not the full range", wit.interval));
    }
    let again = bohr::bohr_contained(&s, &d, d.window())?;
    if !again.ok || !wit.containment.ok {
        violations.push(format!("containment fails at {:?}", again.violations));
    }
    Ok(outcome(
        11,
        format!(
            "freqs {:?}, eps {}, interval {}",
            wit.spec.freqs.iter().map(fmt_rat).collect::<Vec<_>>(),
            fmt_rat(&wit.spec.eps),
            wit.interval
        ),
        serde_json::to_value(&wit)?,
        violations,
    ))
}

/// Reruns the given checks in a one-thread pool and in a pool with every
/// available thread, and compares the outcomes.
pub fn determinism_check(cfg: &SelftestConfig, ids: &[u32]) -> CheckOutcome {
    let max = std::thread::available_parallelism().map_or(1, |n| n.get()).max(2);
    let run_in = |threads: usize| -> std::result::Result<Vec<CheckOutcome>, String> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| e.to_string())?;
        Ok(pool.install(|| ids.iter().map(|&id| run_check(id, cfg)).collect()))
    };
    let (one, many) = match (run_in(1), run_in(max)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return outcome(12, "thread pool failed".into(), Value::Null, vec![e]),
    };
    let mut violations = Vec::new();
    for (a, b) in one.iter().zip(&many) {
        if a != b {
            violations.push(format!("check {} differs between 1 and {max} threads", a.id));
        }
    }
    outcome(
        12,
        format!("{} checks identical under 1 and {max} threads", ids.len() - violations.len()),
        json!({"threads": [1, max], "checks": ids}),
        violations,
    )
}
