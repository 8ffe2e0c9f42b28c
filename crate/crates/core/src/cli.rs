//! The `diffembed` command line.
//!
//! Every subcommand writes a JSON [`Report`] to stdout, or to `--out`.
//! With `--csv`, flat tables go to stdout instead and the report is only
//! written when `--out` is given.
//!
//! Exit codes: 0 success, 2 invalid input, 3 a certificate violation,
//! 4 infeasible parameters. The worker-thread count comes from the
//! `DIFFEMBED_THREADS` environment variable.

use crate::bohr::{self, BohrSpec};
use crate::cover::{self, ShiftCoverReport};
use crate::delta;
use crate::density::{self, AsymptoticProxy};
use crate::embed::{self, Pattern};
use crate::error::{Error, Result};
use crate::extract::{self, ChainParams, ExtractOptions, IntersectParams, DifferenceCoverParams, PipelineParams};
use crate::gen::{self, GenSpec, Generated};
use crate::intset::{IntSet, Window};
use crate::ratio::{self, fmt_rat, Rat};
use crate::report::{self, Report, Table};
use crate::selftest::{self, SelftestConfig};
use crate::setfile::{self, Format};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const THREADS_ENV: &str = "DIFFEMBED_THREADS";

#[derive(Debug, Parser)]
#[command(name = "diffembed", version, about = "Exact finite-window difference-set workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print per-shift / per-offset tables as CSV on stdout.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct SetArg {
    /// Set file (list or bits format).
    #[arg(long)]
    pub set: PathBuf,
    /// Window override for list files, as `lo..hi`.
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SelectionArg {
    MostFrequent,
    LeastOffset,
}

impl SelectionArg {
    fn options(self) -> ExtractOptions {
        match self {
            SelectionArg::MostFrequent => ExtractOptions::default(),
            SelectionArg::LeastOffset => ExtractOptions::long(),
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    List,
    Bits,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a set file from a generator spec.
    Gen {
        /// Spec file, or the JSON text itself.
        #[arg(long)]
        spec: String,
        /// Output set file. Three-set generators write `<stem>-a`, `-b`, `-c`.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "list")]
        format: FormatArg,
    },
    /// Density estimates and structure of one set.
    Analyze {
        #[command(flatten)]
        input: SetArg,
        /// Sub-window lengths for the Banach estimates (repeatable).
        #[arg(long = "n")]
        ns: Vec<u64>,
        /// Gap bound for the piecewise-syndetic search.
        #[arg(long, default_value_t = 10)]
        gap_bound: u64,
        #[command(flatten)]
        output: Output,
    },
    /// ε-Delta set of one set.
    Delta {
        #[command(flatten)]
        input: SetArg,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        n: u64,
        /// Shift range `lo..hi`.
        #[arg(long, allow_hyphen_values = true)]
        trange: String,
        /// Use the upper asymptotic estimator (set must start at 1).
        #[arg(long)]
        upper: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Finite (and dense) embeddability of X into Y.
    Embed {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        /// Trace length.
        #[arg(long)]
        m: u64,
        /// Shift range `lo..hi`; defaults to every shift meeting Y's window.
        #[arg(long, allow_hyphen_values = true)]
        srange: Option<String>,
        /// Also estimate the density of shifts placing all of X inside Y.
        #[arg(long)]
        dense: bool,
        #[arg(long)]
        n: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Cover candidate shifts by translates of an ε-Delta set.
    Cover {
        #[command(flatten)]
        input: SetArg,
        #[arg(long)]
        eps: String,
        /// Candidates: `lo..hi` or a comma list.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        n: u64,
        /// Cover the quotient by `h` instead.
        #[arg(long, allow_hyphen_values = true)]
        h: Option<i64>,
        /// First shift of the cover; defaults to the candidate of least |x|.
        #[arg(long, allow_hyphen_values = true)]
        mandated: Option<i64>,
        /// Use the prefix `[1, n]` and the upper asymptotic estimator.
        #[arg(long)]
        upper: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Extract a dense pattern from the densest window of a set.
    Extract {
        #[command(flatten)]
        input: SetArg,
        /// Pattern length.
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "1/50")]
        slack: String,
        /// Window length; defaults to the whole window.
        #[arg(long = "N")]
        big_n: Option<u64>,
        #[arg(long, value_enum, default_value = "most-frequent")]
        selection: SelectionArg,
        #[command(flatten)]
        output: Output,
    },
    /// Align two sets and extract a pattern dense in both.
    Pipeline {
        #[arg(long)]
        a: Option<PathBuf>,
        #[arg(long)]
        b: Option<PathBuf>,
        /// Window length taken from A.
        #[arg(long = "N")]
        big_n: u64,
        /// Window length taken from B; defaults to N/100.
        #[arg(long)]
        nu: Option<u64>,
        /// Pattern length.
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "1/50")]
        slack: String,
        #[arg(long, value_enum)]
        selection: Option<SelectionArg>,
        /// Fold over several sets instead of A and B.
        #[arg(long, num_args = 1..)]
        chain: Vec<PathBuf>,
        /// N/ν at each later chain stage.
        #[arg(long, default_value_t = 10)]
        nu_divisor: u64,
        /// Cover candidates by translates of A - B.
        #[arg(long)]
        jin: bool,
        /// Cover candidates by translates of the intersected ε-Delta sets.
        #[arg(long)]
        intersect: bool,
        #[arg(long, default_value = "0")]
        eps: String,
        /// Candidates for the covers, `lo..hi`.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Estimator length for the cover on the pattern.
        #[arg(long)]
        cover_n: Option<u64>,
        /// Estimator length for Delta-set re-verification.
        #[arg(long, default_value_t = 1000)]
        delta_n: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Bohr sets inside a set D.
    Bohr {
        #[arg(long)]
        d: PathBuf,
        /// Comma list of frequencies `p/q`.
        #[arg(long)]
        freqs: Option<String>,
        #[arg(long, default_value = "3/20")]
        eps: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
        /// Search for the longest piecewise-Bohr witness.
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = 2)]
        kmax: usize,
        #[arg(long = "Lmin", default_value_t = 100)]
        l_min: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Run the invariant suite.
    Selftest {
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Run only these checks (1 to 12).
        #[arg(long, num_args = 1..)]
        checks: Vec<u32>,
        #[command(flatten)]
        output: Output,
    },
}

/// Sizes the global thread pool from `DIFFEMBED_THREADS` when set.
pub fn init_threads_from_env() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::input(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::input(e.to_string()))?;
    }
    Ok(())
}

/// Exit code for an error: 4 for infeasible parameters, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_infeasible() {
        4
    } else {
        2
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Err(e) = init_threads_from_env() {
        eprintln!("error: {e}");
        return 2;
    }
    let (report, tables, output) = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    match emit(&report, &tables, output) {
        Ok(()) => report.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn emit(report: &Report, tables: &[Table], output: Option<&Output>) -> Result<()> {
    let (out, csv) = output.map_or((None, false), |o| (o.out.as_deref(), o.csv));
    if csv {
        report::write_csv(tables, std::io::stdout().lock())?;
        if let Some(p) = out {
            std::fs::write(p, report.to_json())?;
        }
        return Ok(());
    }
    match out {
        Some(p) => std::fs::write(p, report.to_json())?,
        None => std::io::stdout().lock().write_all(report.to_json().as_bytes())?,
    }
    Ok(())
}

fn read_set(path: &Path, window: Option<&str>) -> Result<IntSet> {
    let w = window.map(Window::parse).transpose()?;
    setfile::read(path, w)
}

fn parse_candidates(s: &str) -> Result<Vec<i64>> {
    if s.contains("..") {
        return Ok(Window::parse(s)?.iter().collect());
    }
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad candidate {t:?}"))))
        .collect()
}

fn set_summary(path: &Path, s: &IntSet) -> serde_json::Value {
    json!({"path": path.display().to_string(), "window": s.window(), "size": s.len()})
}

type Executed<'a> = (Report, Vec<Table>, Option<&'a Output>);

/// Runs one command and returns its report, CSV tables and output options.
pub fn execute(cmd: &Command) -> Result<Executed<'_>> {
    let start = Instant::now();
    let (mut report, tables, output) = match cmd {
        Command::Gen { spec, out, format } => (cmd_gen(spec, out, *format)?, Vec::new(), None),
        Command::Analyze {
            input,
            ns,
            gap_bound,
            output,
        } => {
            let (r, t) = cmd_analyze(input, ns, *gap_bound)?;
            (r, t, Some(output))
        }
        Command::Delta {
            input,
            eps,
            n,
            trange,
            upper,
            output,
        } => {
            let (r, t) = cmd_delta(input, eps, *n, trange, *upper)?;
            (r, t, Some(output))
        }
        Command::Embed {
            x,
            y,
            m,
            srange,
            dense,
            n,
            output,
        } => (cmd_embed(x, y, *m, srange.as_deref(), *dense, *n)?, Vec::new(), Some(output)),
        Command::Cover {
            input,
            eps,
            x,
            n,
            h,
            mandated,
            upper,
            output,
        } => {
            let (r, t) = cmd_cover(input, eps, x, *n, *h, *mandated, *upper)?;
            (r, t, Some(output))
        }
        Command::Extract {
            input,
            n,
            slack,
            big_n,
            selection,
            output,
        } => {
            let (r, t) = cmd_extract(input, *n, slack, *big_n, *selection)?;
            (r, t, Some(output))
        }
        Command::Pipeline { output, .. } => {
            let (r, t) = cmd_pipeline(cmd)?;
            (r, t, Some(output))
        }
        Command::Bohr {
            d,
            freqs,
            eps,
            shift,
            search,
            kmax,
            l_min,
            output,
        } => (
            cmd_bohr(d, freqs.as_deref(), eps, *shift, *search, *kmax, *l_min)?,
            Vec::new(),
            Some(output),
        ),
        Command::Selftest {
            trials,
            seed,
            checks,
            output,
        } => {
            let (r, t) = cmd_selftest(*trials, *seed, checks)?;
            (r, t, Some(output))
        }
    };
    report.timing_ms = start.elapsed().as_millis() as u64;
    Ok((report, tables, output))
}

fn with_suffix(path: &Path, label: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}-{label}.{}", ext.to_string_lossy()),
        None => format!("{stem}-{label}"),
    };
    path.with_file_name(name)
}

fn cmd_gen(spec: &str, out: &Path, format: FormatArg) -> Result<Report> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        std::fs::read_to_string(spec)?
    };
    let spec = GenSpec::from_json(&text)?;
    let generated = gen::generate(&spec)?;
    let format = match format {
        FormatArg::List => Format::List,
        FormatArg::Bits => Format::Bits,
    };
    let mut written = Vec::new();
    for (label, set) in generated.sets() {
        let path = match generated {
            Generated::Single(_) => out.to_path_buf(),
            Generated::Triple { .. } => with_suffix(out, label),
        };
        std::fs::write(&path, setfile::render(set, format))?;
        written.push(json!({"label": label, "path": path.display().to_string(), "window": set.window(), "size": set.len()}));
    }
    let mut r = Report::new("gen");
    r.seed = Some(spec.seed);
    r.input("spec", &spec).result("sets", &written);
    Ok(r)
}

fn cmd_analyze(input: &SetArg, ns: &[u64], gap_bound: u64) -> Result<(Report, Vec<Table>)> {
    let a = read_set(&input.set, input.window.as_deref())?;
    let len = a.window().len();
    let ns: Vec<u64> = if ns.is_empty() { vec![(len / 10).max(1)] } else { ns.to_vec() };
    let mut r = Report::new("analyze");
    r.input("set", &set_summary(&input.set, &a)).param("n", &ns).param("gap_bound", &gap_bound);
    let mut table = Table::new("banach", &["n", "upper", "upper_at", "lower", "lower_at"]);
    let mut per_n = Vec::new();
    for &n in &ns {
        let up = density::upper_banach_est(&a, n)?;
        let lo = density::lower_banach_est(&a, n)?;
        table.push([n.to_string(), fmt_rat(&up.value), up.at.to_string(), fmt_rat(&lo.value), lo.at.to_string()]);
        per_n.push(json!({"n": n, "upper_banach": up, "lower_banach": lo}));
    }
    r.result("banach", &per_n);
    if a.window().lo() == 1 {
        let proxy = AsymptoticProxy::default();
        r.result("upper_asymptotic", &density::upper_asymptotic_est(&a, len, proxy)?)
            .result("lower_asymptotic", &density::lower_asymptotic_est(&a, len, proxy)?)
            .result("schnirelmann", &density::schnirelmann_est(&a, len)?);
    }
    let scale = *ns.iter().max().unwrap();
    r.result("structure", &density::classify(&a, scale, gap_bound));
    Ok((r, vec![table]))
}

fn cmd_delta(input: &SetArg, eps: &str, n: u64, trange: &str, upper: bool) -> Result<(Report, Vec<Table>)> {
    let a = read_set(&input.set, input.window.as_deref())?;
    let eps = ratio::parse_rat(eps)?;
    let tr = Window::parse(trange)?;
    let res = if upper {
        delta::eps_delta_upper(&a, eps, n, tr, AsymptoticProxy::default())?
    } else {
        delta::eps_delta_banach(&a, eps, n, tr)?
    };
    let mut table = Table::new("per_t", &["t", "estimate", "member"]);
    for (i, v) in res.per_t.iter().enumerate() {
        let t = tr.lo() + i as i64;
        table.push([t.to_string(), fmt_rat(v), res.members.contains(t).to_string()]);
    }
    let mut r = Report::new("delta");
    r.input("set", &set_summary(&input.set, &a))
        .param("eps", &fmt_rat(&eps))
        .param("n", &n)
        .param("trange", &tr)
        .param("estimator", &res.kind)
        .result("members", &res.members.to_vec())
        .result("count", &res.members.len())
        .result("per_t", &res.per_t.iter().map(fmt_rat).collect::<Vec<_>>());
    Ok((r, vec![table]))
}

fn cmd_embed(x: &Path, y: &Path, m: u64, srange: Option<&str>, dense: bool, n: Option<u64>) -> Result<Report> {
    let xs = setfile::read(x, None)?;
    let ys = setfile::read(y, None)?;
    let (xw, yw) = (xs.window(), ys.window());
    let sr = match srange {
        Some(s) => Window::parse(s)?,
        None => Window::new(yw.lo() - xw.hi(), yw.hi() - xw.lo())?,
    };
    let rep = embed::window_embeddable(&xs, &ys, m, sr)?;
    let mut r = Report::new("embed");
    r.input("x", &set_summary(x, &xs))
        .input("y", &set_summary(y, &ys))
        .param("m", &m)
        .param("srange", &sr)
        .result("embeddable", &rep);
    if dense {
        let f = Pattern::new(xs.to_vec())?;
        let fit = Window::new(yw.lo() - f.min(), yw.hi() - f.max())
            .map_err(|_| Error::input("X does not fit inside Y's window"))?;
        let n = n.unwrap_or((fit.len() / 2).max(1));
        r.param("n", &n).result("dense", &embed::dense_embed_est(&f, &ys, fit, n)?);
    }
    Ok(r)
}

fn cover_table(shifts: &[i64]) -> Table {
    let mut t = Table::new("cover", &["pick", "shift"]);
    for (i, s) in shifts.iter().enumerate() {
        t.push([i.to_string(), s.to_string()]);
    }
    t
}

fn shift_cover_report(r: &mut Report, cov: &ShiftCoverReport) {
    r.result("shifts", &cov.cover.shifts)
        .result("k_bound", &cov.cover.k_bound)
        .result("covered", &cov.cover.covered)
        .certificate("used_shifts", &cov.used_shifts)
        .result("delta_verified", &cov.delta_verified)
        .certificate("cover", &cov.cover)
        .certificate("window", &cov.window)
        .violations(cov.violations.iter().cloned());
}

fn least_abs(xs: &[i64]) -> Result<i64> {
    xs.iter()
        .copied()
        .min_by_key(|&x| (x.unsigned_abs(), x < 0))
        .ok_or_else(|| Error::input("empty candidate list"))
}

fn cmd_cover(
    input: &SetArg,
    eps: &str,
    x: &str,
    n: u64,
    h: Option<i64>,
    mandated: Option<i64>,
    upper: bool,
) -> Result<(Report, Vec<Table>)> {
    let a = read_set(&input.set, input.window.as_deref())?;
    let eps = ratio::parse_rat(eps)?;
    let xs = parse_candidates(x)?;
    let mut r = Report::new("cover");
    r.input("set", &set_summary(&input.set, &a)).param("eps", &fmt_rat(&eps)).param("n", &n);
    if let Some(h) = h {
        let range = Window::parse(x)?;
        let q = cover::quotient_cover(&a, h, eps, n, range)?;
        r.param("h", &h)
            .param("range", &range)
            .result("shifts", &q.shifts)
            .result("covered", &q.covered)
            .result("trivial", &q.trivial)
            .certificate("quotient", &q)
            .violations(q.violations.iter().cloned());
        return Ok((r, vec![cover_table(&q.shifts)]));
    }
    let mandated = match mandated {
        Some(m) => m,
        None => least_abs(&xs)?,
    };
    r.param("x", &x).param("mandated", &mandated).param("upper", &upper);
    let cov = if upper {
        cover::delta_shift_cover_upper(&a, &xs, eps, n, mandated)?
    } else {
        cover::delta_shift_cover(&a, &xs, eps, n, mandated)?
    };
    shift_cover_report(&mut r, &cov);
    Ok((r, vec![cover_table(&cov.cover.shifts)]))
}

fn theta_table(theta: &IntSet) -> Table {
    let mut t = Table::new("theta", &["offset"]);
    for th in theta.iter() {
        t.push([th.to_string()]);
    }
    t
}

fn cmd_extract(input: &SetArg, n: u64, slack: &str, big_n: Option<u64>, sel: SelectionArg) -> Result<(Report, Vec<Table>)> {
    let a = read_set(&input.set, input.window.as_deref())?;
    let slack = ratio::parse_rat(slack)?;
    let big_n = big_n.unwrap_or(a.window().len());
    let rep = extract::extract_pattern(&a, big_n, n, slack, &sel.options())?;
    let mut r = Report::new("extract");
    r.input("set", &set_summary(&input.set, &a))
        .param("N", &big_n)
        .param("n", &n)
        .param("slack", &fmt_rat(&slack))
        .param("selection", &rep.cert.selection)
        .result("pattern", &rep.cert.e_prefix)
        .result("prefix_sigma", &fmt_rat(&rep.cert.prefix_sigma))
        .result("shift", &rep.shift)
        .result("theta_count", &rep.cert.theta_count())
        .result("gamma_size", &rep.cert.gamma_size)
        .result("density_floor", &fmt_rat(&rep.density_floor))
        .certificate("extraction", &rep.cert)
        .certificate("window", &rep.window)
        .violations(rep.violations.iter().cloned());
    Ok((r, vec![theta_table(&rep.cert.theta)]))
}

fn cmd_pipeline(cmd: &Command) -> Result<(Report, Vec<Table>)> {
    let Command::Pipeline {
        a,
        b,
        big_n,
        nu,
        n,
        slack,
        selection,
        chain,
        nu_divisor,
        jin,
        intersect,
        eps,
        x,
        cover_n,
        delta_n,
        ..
    } = cmd
    else {
        unreachable!("called with the pipeline command")
    };
    let slack = ratio::parse_rat(slack)?;
    let eps = ratio::parse_rat(eps)?;
    let mut r = Report::new("pipeline");
    r.param("N", big_n).param("n", n).param("slack", &fmt_rat(&slack));
    if !chain.is_empty() {
        let sets = chain.iter().map(|p| setfile::read(p, None)).collect::<Result<Vec<_>>>()?;
        let summaries: Vec<_> = chain.iter().zip(&sets).map(|(p, s)| set_summary(p, s)).collect();
        let params = ChainParams {
            big_n: *big_n,
            nu_divisor: *nu_divisor,
            n: *n,
            slack,
            eps,
            delta_n: *delta_n,
        };
        let rep = extract::chain_pattern(&sets, &params)?;
        r.input("chain", &summaries)
            .param("mode", &"chain")
            .param("chain", &params)
            .result("pattern", &rep.final_prefix)
            .result("sigma", &fmt_rat(&rep.final_sigma))
            .result("product", &fmt_rat(&rep.product))
            .result("bound", &fmt_rat(&rep.bound))
            .result("shifts", &rep.shifts)
            .certificate("chain", &rep)
            .violations(rep.violations.iter().cloned());
        return Ok((r, Vec::new()));
    }
    let (Some(ap), Some(bp)) = (a, b) else {
        return Err(Error::input("pipeline needs --a and --b, or --chain"));
    };
    let (sa, sb) = (setfile::read(ap, None)?, setfile::read(bp, None)?);
    r.input("a", &set_summary(ap, &sa)).input("b", &set_summary(bp, &sb));
    let long = *jin || *intersect;
    let mut pp = PipelineParams::new(*big_n, *n);
    if let Some(nu) = nu {
        pp.nu = *nu;
    }
    pp.slack = slack;
    pp.extract = selection.map_or(
        if long { ExtractOptions::long() } else { ExtractOptions::default() },
        |s| s.options(),
    );
    r.param("nu", &pp.nu).param("selection", &pp.extract.selection);
    if *jin {
        let xw = Window::parse(x.as_deref().unwrap_or("-1000..1000"))?;
        let params = DifferenceCoverParams {
            pipeline: pp,
            x: xw,
            baseline_radius: 3,
        };
        let rep = extract::difference_cover(&sa, &sb, &params)?;
        r.param("mode", &"difference_cover")
            .param("x", &xw)
            .result("shifts", &rep.cover.shifts)
            .result("k_bound", &rep.k_bound)
            .result("target", &rep.target)
            .result("target_covered", &rep.target_covered)
            .result("covered_interval", &rep.covered_interval)
            .result("baseline_shifts", &rep.baseline_shifts)
            .certificate("pipeline", &rep.pipeline)
            .certificate("cover", &rep.cover)
            .violations(rep.violations.iter().cloned());
        return Ok((r, vec![cover_table(&rep.cover.shifts)]));
    }
    if *intersect {
        let xs = parse_candidates(x.as_deref().unwrap_or("-100..100"))?;
        let span = xs.iter().max().unwrap_or(&0) - xs.iter().min().unwrap_or(&0);
        let cover_n = cover_n.unwrap_or((*n).saturating_sub(span as u64).max(1));
        let params = IntersectParams {
            pipeline: pp,
            cover_n,
            delta_n: *delta_n,
        };
        let rep = extract::intersect_delta_cover(&sa, &sb, eps, &xs, &params)?;
        r.param("mode", &"intersect")
            .param("eps", &fmt_rat(&eps))
            .param("cover_n", &cover_n)
            .param("delta_n", delta_n)
            .result("product_bound", &rep.product_bound)
            .result("verified_in_a", &rep.verified_in_a)
            .result("verified_in_b", &rep.verified_in_b)
            .certificate("pipeline", &rep.pipeline);
        shift_cover_report(&mut r, &rep.cover);
        r.violations.clear();
        r.violations(rep.violations.iter().cloned());
        return Ok((r, vec![cover_table(&rep.cover.cover.shifts)]));
    }
    let rep = extract::common_pattern(&sa, &sb, &pp)?;
    r.param("mode", &"pair")
        .result("pattern", &rep.cert.e_prefix)
        .result("prefix_sigma", &fmt_rat(&rep.cert.prefix_sigma))
        .result("gamma", &fmt_rat(&rep.gamma))
        .result("t_j", &rep.t_j)
        .result("j", &rep.j)
        .result("eps_achieved", &fmt_rat(&rep.eps_achieved))
        .result("containment_holds", &rep.containment_holds)
        .certificate("pipeline", &rep)
        .violations(rep.violations.iter().cloned());
    Ok((r, vec![theta_table(&rep.cert.theta)]))
}

fn cmd_bohr(
    d: &Path,
    freqs: Option<&str>,
    eps: &str,
    shift: i64,
    search: bool,
    kmax: usize,
    l_min: u64,
) -> Result<Report> {
    let ds = setfile::read(d, None)?;
    let mut r = Report::new("bohr");
    r.input("d", &set_summary(d, &ds));
    if freqs.is_none() && !search {
        return Err(Error::input("bohr needs --freqs or --search"));
    }
    if let Some(f) = freqs {
        let freqs = f.split(',').map(ratio::parse_rat).collect::<Result<Vec<Rat>>>()?;
        let spec = BohrSpec::new(freqs, ratio::parse_rat(eps)?, shift)?;
        let s = bohr::bohr_generate(&spec, ds.window());
        let c = bohr::bohr_contained(&s, &ds, ds.window())?;
        r.param("spec", &spec)
            .result("generated_size", &s.len())
            .result("contained", &c);
    }
    if search {
        let grid = bohr::default_eps_grid();
        let spectrum: Vec<_> = bohr::freq_spectrum(&ds, bohr::DEFAULT_Q_MAX).into_iter().take(10).collect();
        let wit = bohr::piecewise_bohr_search(&ds, kmax, &grid, l_min)?;
        r.param("kmax", &kmax)
            .param("Lmin", &l_min)
            .param("eps_grid", &grid.iter().map(fmt_rat).collect::<Vec<_>>())
            .result("spectrum", &spectrum)
            .result("witness", &wit);
        if let Some(w) = &wit {
            if !w.containment.ok {
                r.violations(["witness fails its containment recount".to_string()]);
            }
        }
    }
    Ok(r)
}

fn cmd_selftest(trials: u64, seed: u64, checks: &[u32]) -> Result<(Report, Vec<Table>)> {
    let cfg = SelftestConfig::with_trials(trials, seed);
    let ids: Vec<u32> = if checks.is_empty() { (1..=12).collect() } else { checks.to_vec() };
    let mut r = Report::new("selftest");
    r.seed = Some(seed);
    r.param("trials", &trials).param("embed_trials", &cfg.embed_trials).param("checks", &ids);
    let mut table = Table::new("checks", &["id", "name", "passed", "summary"]);
    let mut outcomes = Vec::new();
    for id in ids {
        let o = selftest::run_check(id, &cfg);
        table.push([o.id.to_string(), o.name.clone(), o.passed.to_string(), o.summary.clone()]);
        r.violations(o.violations.iter().map(|v| format!("check {id}: {v}")));
        outcomes.push(o);
    }
    r.result("checks", &outcomes);
    Ok((r, vec![table]))
}
