//! The `orbitdist` command line.
//!
//! Exit codes: 0 success, 1 failed check or example mismatch, 2 bad input
//! (flags, subspace text), 3 orbit larger than the budget, 4 the field could
//! not be constructed.

/// `println!` that ignores write errors, so a closed pipe (`| head`) ends
/// output quietly instead of panicking.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

mod reproduce;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::Error;
use crate::gf::{split_prime_power, ConwayTable, FieldTower};
use crate::orbit::{
    count_subfield_line_shifts, distance_distribution, intersection_distribution_with, pair_counts,
    SubfieldShifts, SweepOptions, DEFAULT_BUDGET,
};
use crate::subspace::{caret_message, parse_subspace};
use crate::verify::{self, CheckConfig, CheckReport};

pub use reproduce::{golden_examples, GoldenExample};

pub const VERSION: &str = concat!("orbitdist ", env!("CARGO_PKG_VERSION"));

#[derive(Parser, Debug)]
#[command(name = "orbitdist", version, about = "Intersection distributions of cyclic orbit codes in F_{q^n}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intersection, distance and pair-count distributions of Orb(U).
    Dist(DistArgs),
    /// Run the named property checks on seeded random subspaces.
    Verify(VerifyArgs),
    /// Recompute the five published worked examples and compare.
    Reproduce(ReproduceArgs),
    /// Defining polynomial, subfields and q-binomial row of a field.
    FieldInfo(FieldInfoArgs),
}

#[derive(Args, Debug, Clone, Default)]
struct FieldArgs {
    /// Scalar field size (a prime power).
    #[arg(long)]
    q: Option<u32>,
    /// Characteristic; use with --e instead of --q.
    #[arg(long, conflicts_with = "q", requires = "e")]
    p: Option<u32>,
    /// Degree of F_q over F_p; use with --p.
    #[arg(long, requires = "p")]
    e: Option<usize>,
    /// Extension degree over F_q.
    #[arg(long)]
    n: Option<usize>,
    /// Defining polynomial over F_p, ascending coefficients `c0,c1,...`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    modulus: Option<Vec<u32>>,
    /// Conway table to use instead of the bundled one.
    #[arg(long)]
    conway: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Worker threads for the orbit sweep (default: available parallelism).
    #[arg(long)]
    threads: Option<usize>,
    /// Largest orbit the sweep will enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args, Debug)]
struct DistArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Subspace description, e.g. "span(z^13, z^17)" or "z^11*F(2,2) + z^13*F(2,2)".
    #[arg(long)]
    subspace: String,
    #[command(flatten)]
    sweep: SweepArgs,
    /// Recorded in the report; the computation itself is deterministic.
    #[arg(long)]
    seed: Option<u64>,
    /// Print the JSON report instead of a table.
    #[arg(long)]
    json: bool,
    /// Also write `i,lambda_i,distance,delta,pair_count` rows to this file.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Check to run (see --list).
    #[arg(long, conflicts_with = "all", required_unless_present_any = ["all", "list"])]
    check: Option<String>,
    /// Run every check.
    #[arg(long)]
    all: bool,
    /// Print the check names and exit.
    #[arg(long)]
    list: bool,
    #[command(flatten)]
    field: FieldArgs,
    /// Dimension k of the sampled subspaces.
    #[arg(long)]
    dim: Option<usize>,
    /// Stabilizer exponent of the sampled subspaces (1 = full-length).
    #[arg(long, default_value_t = 1)]
    t: usize,
    /// Random subspaces per configuration.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Seed for the sampler (ChaCha8).
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// One JSON object per report instead of a summary line.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ReproduceArgs {
    /// Leave out the 21.5-million-member q=3, n=16 orbit.
    #[arg(long)]
    skip_large: bool,
    /// Only the examples in this field; with --modulus, use that polynomial for them.
    #[command(flatten)]
    field: FieldArgs,
    #[command(flatten)]
    sweep: SweepArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct FieldInfoArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Highlight this entry of the q-binomial row.
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    json: bool,
}

/// A failure with its exit code and the text for standard error.
#[derive(Debug)]
struct Exit {
    code: i32,
    msg: String,
}

impl Exit {
    fn usage(msg: impl Into<String>) -> Exit {
        Exit { code: 2, msg: msg.into() }
    }
}

impl From<Error> for Exit {
    fn from(e: Error) -> Exit {
        let code = match e {
            Error::BudgetExceeded { .. } => 3,
            Error::DegreeMismatch { .. }
            | Error::NotMonic
            | Error::NotIrreducible { .. }
            | Error::NotPrimitive { .. }
            | Error::NotPrime(_)
            | Error::NotPrimePower(_)
            | Error::FieldTooLarge(_)
            | Error::NoConway { .. }
            | Error::ConwayTable { .. } => 4,
            _ => 2,
        };
        Exit { code, msg: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, Exit>;

/// Parses `args` (program name first), runs the command, and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match cli.command {
        Command::Dist(a) => cmd_dist(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Reproduce(a) => reproduce::cmd_reproduce(&a),
        Command::FieldInfo(a) => cmd_field_info(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.msg);
            e.code
        }
    }
}

impl FieldArgs {
    /// `(p, e)` from `--q` or `--p/--e`.
    fn prime_power(&self) -> CliResult<Option<(u32, usize)>> {
        match (self.q, self.p, self.e) {
            (Some(q), _, _) => Ok(Some(split_prime_power(q).map_err(|e| Exit { code: 4, msg: e.to_string() })?)),
            (None, Some(p), Some(e)) => Ok(Some((p, e))),
            _ => Ok(None),
        }
    }

    fn q(&self) -> CliResult<Option<u32>> {
        Ok(self.prime_power()?.map(|(p, e)| p.saturating_pow(e as u32)))
    }

    fn table(&self) -> CliResult<ConwayTable> {
        match &self.conway {
            Some(path) => Ok(ConwayTable::load(path)?),
            None => Ok(ConwayTable::bundled()),
        }
    }

    fn tower(&self) -> CliResult<Arc<FieldTower>> {
        let (p, e) = self.prime_power()?.ok_or_else(|| Exit::usage("give the field with --q or --p/--e"))?;
        let n = self.n.ok_or_else(|| Exit::usage("--n is required"))?;
        self.tower_for(p, e, n)
    }

    fn tower_for(&self, p: u32, e: usize, n: usize) -> CliResult<Arc<FieldTower>> {
        match &self.modulus {
            Some(m) => Ok(FieldTower::build(p, e, n, m)?),
            None => Ok(FieldTower::conway(p.saturating_pow(e as u32), n, &self.table()?)?),
        }
    }
}

impl SweepArgs {
    fn options<'a>(&self, progress: Option<&'a (dyn Fn(u64, u64) + Sync)>) -> SweepOptions<'a> {
        let mut opts = SweepOptions { budget: self.budget, progress, ..SweepOptions::default() };
        if let Some(t) = self.threads {
            opts.threads = t.max(1);
        }
        opts
    }
}

/// Percent-of-orbit progress on standard error, printed once per percent.
struct Progress {
    label: String,
    last: AtomicU64,
}

impl Progress {
    fn new(label: impl Into<String>) -> Self {
        Self { label: label.into(), last: AtomicU64::new(0) }
    }

    fn report(&self, done: u64, total: u64) {
        let pct = done * 100 / total.max(1);
        if pct > self.last.fetch_max(pct, Ordering::Relaxed) {
            eprint!("\r{}: {pct:3}% of {total} shifts", self.label);
            if pct == 100 {
                eprintln!();
            }
        }
    }
}

/// Orbits at least this large report progress.
const PROGRESS_THRESHOLD: u64 = 1 << 22;

/// Everything `dist --json` prints.
#[derive(Serialize, Debug)]
pub struct RunReport {
    pub q: u32,
    pub p: u32,
    pub e: usize,
    pub n: usize,
    pub modulus: Vec<u8>,
    pub subspace: String,
    pub k: usize,
    pub t: usize,
    pub orbit_size: u64,
    pub lambda: Vec<u64>,
    pub delta: BTreeMap<usize, u64>,
    pub min_distance: Option<usize>,
    pub pair_counts: BTreeMap<usize, u128>,
    /// Shifts of `F_{q^{2t}}` inside `U`, when `2t` divides `n`.
    pub shifts: Option<SubfieldShifts>,
    pub seed: Option<u64>,
    pub version: String,
    pub wall_time_ms: u128,
}

fn cmd_dist(a: &DistArgs) -> CliResult<i32> {
    let tower = a.field.tower()?;
    let start = Instant::now();
    let u = parse_subspace(&a.subspace, &tower).map_err(|e| match e {
        Error::Syntax { pos, msg } => Exit::usage(format!("invalid --subspace\n{}", caret_message(&a.subspace, pos, &msg))),
        other => other.into(),
    })?;
    let st = u.stabilizer()?;
    let progress = Progress::new("dist");
    let report_fn = |d: u64, t: u64| progress.report(d, t);
    let show = st.orbit_size >= PROGRESS_THRESHOLD;
    let opts = a.sweep.options(if show { Some(&report_fn) } else { None });
    let d = intersection_distribution_with(&u, &opts)?;
    let shifts =
        if tower.n() % (2 * d.t) == 0 { Some(count_subfield_line_shifts(&u, d.t)?) } else { None };
    let dd = distance_distribution(&d);
    let report = RunReport {
        q: tower.q(),
        p: tower.p(),
        e: tower.e(),
        n: tower.n(),
        modulus: tower.modulus().to_vec(),
        subspace: a.subspace.clone(),
        k: d.k,
        t: d.t,
        orbit_size: d.orbit_size,
        lambda: d.lambda.clone(),
        delta: dd.delta.clone(),
        min_distance: dd.min_distance,
        pair_counts: pair_counts(&d),
        shifts,
        seed: a.seed,
        version: VERSION.to_string(),
        wall_time_ms: start.elapsed().as_millis(),
    };
    if let Some(path) = &a.csv {
        std::fs::write(path, csv_rows(&report))
            .map_err(|e| Exit::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if a.json {
        out!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        out!("{}", dist_table(&report).trim_end_matches('\n'));
    }
    Ok(0)
}

fn csv_rows(r: &RunReport) -> String {
    let mut out = String::from("i,lambda_i,distance,delta,pair_count\n");
    for (i, &l) in r.lambda.iter().enumerate() {
        let dist = 2 * r.k - 2 * i;
        let pairs = r.pair_counts.get(&dist).copied().unwrap_or(0);
        let _ = writeln!(out, "{i},{l},{dist},{},{pairs}", r.delta[&dist]);
    }
    out
}

fn dist_table(r: &RunReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "F_{{{}^{}}} over F_{}, modulus {}", r.q, r.n, r.q, poly_string(&r.modulus));
    let _ = writeln!(out, "U = {}", r.subspace);
    let _ = writeln!(out, "k = {}, stabilizer F_{{{}^{}}}^*, |Orb(U)| = {}", r.k, r.q, r.t, r.orbit_size);
    if let Some(s) = &r.shifts {
        let _ = writeln!(out, "shifts of F_{{{}^{}}} in U: {} (dim W = {})", r.q, 2 * r.t, s.count, s.w_dim);
    }
    let _ = writeln!(out, "{:>3} {:>12} {:>8} {:>20}", "i", "lambda_i", "dist", "ordered pairs");
    for (i, &l) in r.lambda.iter().enumerate() {
        let dist = 2 * r.k - 2 * i;
        let _ = writeln!(out, "{i:>3} {l:>12} {dist:>8} {:>20}", r.pair_counts.get(&dist).copied().unwrap_or(0));
    }
    match r.min_distance {
        Some(d) => {
            let _ = writeln!(out, "minimum distance {d}");
        }
        None => {
            let _ = writeln!(out, "single-member orbit");
        }
    }
    out
}

/// `x^4 + x + 1` style rendering of ascending coefficients.
pub fn poly_string(coeffs: &[u8]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (_, false) => format!("{c}{mono}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn cmd_verify(a: &VerifyArgs) -> CliResult<i32> {
    if a.list {
        for name in verify::CHECKS {
            out!("{name}");
        }
        return Ok(0);
    }
    let names: Vec<&str> = match &a.check {
        Some(name) => vec![name.as_str()],
        None => verify::CHECKS.to_vec(),
    };
    let custom = match (a.field.q()?, a.field.n) {
        (Some(q), Some(n)) => {
            let k = a.dim.unwrap_or(if 2 * a.t <= n { 2 * a.t } else { a.t });
            let cfg = CheckConfig::new(q, n, k).with_t(a.t).with_samples(a.samples).with_seed(a.seed);
            Some((a.field.tower()?, cfg))
        }
        (None, None) if a.dim.is_none() => None,
        _ => return Err(Exit::usage("give both the field (--q or --p/--e) and --n, or neither")),
    };
    let mut failed = 0;
    for name in names {
        let runs = match &custom {
            Some((tower, cfg)) => vec![verify::check_in(name, tower, cfg)?],
            None => verify::default_configs(name)?
                .iter()
                .map(|cfg| verify::check(name, cfg))
                .collect::<Result<Vec<_>, _>>()?,
        };
        for r in runs {
            failed += !r.passed as usize;
            if a.json {
                out!("{}", serde_json::to_string(&r).expect("report serializes"));
            } else {
                out!("{}", report_line(&r).trim_end_matches('\n'));
            }
        }
    }
    Ok(if failed > 0 { 1 } else { 0 })
}

fn report_line(r: &CheckReport) -> String {
    let c = &r.config;
    let status = match (r.passed, r.applicable) {
        (false, _) => "FAIL",
        (true, true) => "PASS",
        (true, false) => "N/A ",
    };
    let mut out = format!(
        "{status} {:<18} q={} n={} k={} t={} samples={} seed={} cases={}\n",
        r.check_name, c.q, c.n, c.k, c.t, c.samples, c.seed, r.cases
    );
    for note in &r.notes {
        let _ = writeln!(out, "       {note}");
    }
    for w in &r.witnesses {
        let _ = writeln!(out, "       witness: {w}");
    }
    out
}

#[derive(Serialize)]
struct FieldInfo {
    p: u32,
    e: usize,
    q: u32,
    n: usize,
    prime_degree: usize,
    modulus: Vec<u8>,
    modulus_text: String,
    conway: bool,
    subfields: Vec<SubfieldInfo>,
    q_binomials: Vec<String>,
}

#[derive(Serialize)]
struct SubfieldInfo {
    /// `F_{q^s}`.
    s: usize,
    size: u64,
    /// `z^exponent` generates `F_{q^s}^*`.
    exponent: u64,
    generator: String,
}

fn cmd_field_info(a: &FieldInfoArgs) -> CliResult<i32> {
    let tower = a.field.tower()?;
    let (q, n) = (tower.q(), tower.n());
    let conway = a.field.table()?.get(tower.p(), tower.prime_degree()).is_some_and(|c| {
        c.iter().map(|&x| x as u8).eq(tower.modulus().iter().copied())
    });
    let subfields = crate::subspace::divisors(n)
        .into_iter()
        .map(|s| -> CliResult<SubfieldInfo> {
            Ok(SubfieldInfo {
                s,
                size: tower.subfield_size(s),
                exponent: tower.subfield_exponent(s)?,
                generator: crate::subspace::format_element(&tower.subfield_generator(s)?),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let q_binomials = (0..=n).map(|j| verify::gaussian_binomial(n as u32, j as u32, q).to_string()).collect();
    let info = FieldInfo {
        p: tower.p(),
        e: tower.e(),
        q,
        n,
        prime_degree: tower.prime_degree(),
        modulus: tower.modulus().to_vec(),
        modulus_text: poly_string(tower.modulus()),
        conway,
        subfields,
        q_binomials,
    };
    if a.json {
        out!("{}", serde_json::to_string_pretty(&info).expect("info serializes"));
        return Ok(0);
    }
    out!("F_{{{q}^{n}}}: p = {}, e = {}, degree {} over F_{}", info.p, info.e, info.prime_degree, info.p);
    out!("modulus {} ({})", info.modulus_text, if conway { "Conway" } else { "not the Conway polynomial" });
    out!("subfields F_{{{q}^s}}, s | {n}:");
    for s in &info.subfields {
        out!("  s = {:>2}  |F| = {:>12}  generator z^{} = {}", s.s, s.size, s.exponent, s.generator);
    }
    out!("q-binomials [{n} choose j]_{q}, j = 0..{n}:");
    for (j, b) in info.q_binomials.iter().enumerate() {
        let mark = if a.dim == Some(j) { "  <- k" } else { "" };
        out!("  j = {j:>2}  {b}{mark}");
    }
    Ok(0)
}
