//! Command-line front end: `refine`, `verify` and `digits`.
//!
//! Settings come from flags, then a `key=value` config file, then defaults.
//! Exit codes: 0 success or true, 1 false, 2 invalid seed or violated
//! precondition, 3 degenerate ratio, 4 inconclusive or precision exhausted,
//! 5 parse error.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::approx::{approx_record, pi_digits, ApproxRecord};
use crate::arctan::Strategy;
use crate::error::{Error, Result};
use crate::exact::{pi_interval, Rational};
use crate::identity::{verify, MachinIdentity, TangentWitness, Verdict};
use crate::precision::PrecisionBudget;
use crate::refine::{fibonacci, refined_verdict, Refinement, RefinementRecord, Seed};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FALSE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_DEGENERATE: u8 = 3;
pub const EXIT_INCONCLUSIVE: u8 = 4;
pub const EXIT_PARSE: u8 = 5;

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SeedInvalid(_) | Error::Precondition(_) | Error::Domain(_) | Error::Io(_) => EXIT_INVALID,
        Error::DegenerateRatio { .. } => EXIT_DEGENERATE,
        Error::Inconclusive(_) | Error::PrecisionExhausted(_) => EXIT_INCONCLUSIVE,
        Error::Parse { .. } => EXIT_PARSE,
        Error::DivisionByZero | Error::Pole | Error::ZeroPower | Error::Internal(_) => EXIT_FALSE,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Table => "table",
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Parse {
                column: 1,
                message: format!("unknown format {other:?} (expected table, json or csv)"),
            }),
        }
    }
}

/// Resolved settings for a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub a0: i64,
    pub a1: i64,
    pub u0: Rational,
    pub u1: Rational,
    pub depth: usize,
    pub eps: Rational,
    pub strategy: Strategy,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            a0: 1,
            a1: 1,
            u0: Rational::new(1, 2).expect("nonzero"),
            u1: Rational::new(1, 3).expect("nonzero"),
            depth: 8,
            eps: Rational::pow10(-30),
            strategy: Strategy::Doubling,
            format: Format::Table,
            out: None,
        }
    }
}

const CONFIG_KEYS: &[&str] = &["a0", "a1", "u0", "u1", "depth", "eps", "strategy", "format", "out"];

impl RunConfig {
    /// Sets one setting from its text form. Errors report column 1 of
    /// `value`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::Parse {
            column: 1,
            message: format!("invalid {what} for {key}: {value:?}"),
        };
        let rational = || value.parse::<Rational>().map_err(|_| bad("rational"));
        let value = value.trim();
        match key {
            "a0" => self.a0 = value.parse().map_err(|_| bad("integer"))?,
            "a1" => self.a1 = value.parse().map_err(|_| bad("integer"))?,
            "u0" => self.u0 = rational()?,
            "u1" => self.u1 = rational()?,
            "depth" => self.depth = value.parse().map_err(|_| bad("count"))?,
            "eps" => {
                let eps = rational()?;
                if !eps.is_positive() {
                    return Err(Error::Precondition(format!("eps must be positive, got {eps}")));
                }
                self.eps = eps;
            }
            "strategy" => self.strategy = value.parse()?,
            "format" => self.format = value.parse()?,
            "out" => self.out = Some(PathBuf::from(value)),
            _ => {
                return Err(Error::Parse {
                    column: 1,
                    message: format!("unknown key {key:?} (known: {})", CONFIG_KEYS.join(", ")),
                })
            }
        }
        Ok(())
    }

    /// Applies a config file body: `key = value` lines, `#` comments.
    pub fn apply_config_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Parse {
                    column: raw.len() - raw.trim_start().len() + 1,
                    message: format!("config line {}: expected key=value", i + 1),
                });
            };
            self.set(key.trim(), value).map_err(|e| match e {
                Error::Parse { message, .. } => Error::Parse {
                    column: key.len() + 2 + (value.len() - value.trim_start().len()),
                    message: format!("config line {}: {message}", i + 1),
                },
                other => other,
            })?;
        }
        Ok(())
    }

    pub fn seed(&self) -> Result<Seed> {
        Seed::new(self.a0, self.a1, self.u0.clone(), self.u1.clone())
    }
}

/// One output row: a refinement record with its approximation data.
///
/// Rationals are `"num/den"` strings. `r_decimal` is `r` truncated to 12
/// places; `err_lo`/`err_hi` are rounded outward so they still enclose
/// `r - π`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub n: usize,
    pub q: u64,
    pub u_n: String,
    pub u_next: String,
    pub a_n: i64,
    pub a_prev: i64,
    pub a_next: i64,
    #[serde(rename = "N")]
    pub big_n: u64,
    #[serde(rename = "D")]
    pub big_d: u64,
    pub fib: u64,
    pub r: String,
    pub r_decimal: String,
    pub err_lo: String,
    pub err_hi: String,
}

fn fits<T: TryFrom<BigInt>>(x: &BigInt, what: &str) -> Result<T> {
    T::try_from(x.clone()).map_err(|_| Error::Internal(format!("{what} = {x} does not fit the output schema")))
}

fn rational_text(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

impl OutputRecord {
    pub fn new(rec: &RefinementRecord, approx: &ApproxRecord, places: usize) -> Result<Self> {
        Ok(OutputRecord {
            n: rec.n,
            q: rec.q,
            u_n: rational_text(&rec.u_n),
            u_next: rational_text(&rec.u_next),
            a_n: fits(&rec.a_n, "a_n")?,
            a_prev: fits(&rec.a_prev, "a_prev")?,
            a_next: fits(&rec.a_next, "a_next")?,
            big_n: fits(&rec.convergent.num, "N")?,
            big_d: fits(&rec.convergent.den, "D")?,
            fib: fits(&BigInt::from(rec.fib.clone()), "fib")?,
            r: rational_text(&approx.r),
            r_decimal: approx.r.to_decimal_trunc(12),
            err_lo: approx.err.lo().to_decimal_floor(places),
            err_hi: approx.err.hi().to_decimal_ceil(places),
        })
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "machin-refine",
    version,
    about = "Refine two-term Machin-like formulas by the continued fraction of their arctangent ratio"
)]
struct Cli {
    /// File of key=value defaults (a0, a1, u0, u1, depth, eps, strategy, format, out)
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit refinement records with their π approximations
    Refine(RefineArgs),
    /// Verify an identity such as "4*atan(1/5) - 1*atan(1/239) = pi/4"
    Verify {
        identity: String,
    },
    /// Print certified decimal digits of π from a refined identity
    Digits(DigitsArgs),
}

#[derive(Debug, Args)]
struct SeedArgs {
    /// Coefficient of arctan(u0)
    #[arg(long, allow_hyphen_values = true)]
    a0: Option<String>,
    /// Coefficient of arctan(u1)
    #[arg(long, allow_hyphen_values = true)]
    a1: Option<String>,
    /// Larger seed argument, as p/q or a decimal
    #[arg(long)]
    u0: Option<String>,
    /// Smaller seed argument
    #[arg(long)]
    u1: Option<String>,
}

#[derive(Debug, Args)]
struct RefineArgs {
    #[command(flatten)]
    seed: SeedArgs,
    /// Number of records to emit
    #[arg(long)]
    depth: Option<String>,
    /// Width of the π enclosure behind err_lo/err_hi
    #[arg(long)]
    eps: Option<String>,
    /// linear or doubling
    #[arg(long)]
    strategy: Option<String>,
    /// table, json or csv
    #[arg(long)]
    format: Option<String>,
    /// Write the JSON-lines ledger here
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
    /// Extend an existing ledger by `depth` records
    #[arg(long, value_name = "PATH")]
    resume: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DigitsArgs {
    #[command(flatten)]
    seed: SeedArgs,
    /// Record whose identity is evaluated (at least 1)
    #[arg(long)]
    n: usize,
    /// Decimal places after the point
    #[arg(long)]
    digits: u32,
    /// Also print series term counts and timing
    #[arg(long)]
    stats: bool,
}

impl SeedArgs {
    fn pairs(&self) -> Vec<(&'static str, &String)> {
        [("a0", &self.a0), ("a1", &self.a1), ("u0", &self.u0), ("u1", &self.u1)]
            .into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (k, v)))
            .collect()
    }
}

impl RefineArgs {
    fn pairs(&self) -> Vec<(&'static str, &String)> {
        let mut pairs = self.seed.pairs();
        for (k, v) in [
            ("depth", &self.depth),
            ("eps", &self.eps),
            ("strategy", &self.strategy),
            ("format", &self.format),
            ("out", &self.out),
        ] {
            if let Some(v) = v {
                pairs.push((k, v));
            }
        }
        pairs
    }
}

fn resolve(config: Option<&Path>, flags: &[(&str, &String)]) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = config {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        cfg.apply_config_text(&text)?;
    }
    for (k, v) in flags {
        cfg.set(k, v).map_err(|e| match e {
            Error::Parse { column, message } => Error::Parse {
                column,
                message: format!("--{k}: {message}"),
            },
            other => other,
        })?;
    }
    Ok(cfg)
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            return if informational {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            } else {
                let _ = err.write_all(text.as_bytes());
                EXIT_PARSE
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    let config = cli.config.as_deref();
    match &cli.command {
        Command::Refine(args) => {
            let cfg = resolve(config, &args.pairs())?;
            cmd_refine(&cfg, args.resume.as_deref(), out)
        }
        Command::Verify { identity } => cmd_verify(identity, out),
        Command::Digits(args) => {
            let cfg = resolve(config, &args.seed.pairs())?;
            cmd_digits(&cfg, args.n, args.digits, args.stats, out)
        }
    }
}

fn io(e: impl fmt::Display) -> Error {
    Error::Io(e.to_string())
}

/// Decimal places for the error columns: two more than `eps` resolves.
fn error_places(eps: &Rational) -> usize {
    eps.recip().map(|r| r.ceil().to_string().len() + 1).unwrap_or(12).max(12)
}

pub fn cmd_refine(cfg: &RunConfig, resume: Option<&Path>, out: &mut dyn Write) -> Result<u8> {
    if cfg.depth == 0 {
        return Err(Error::Precondition("depth must be at least 1".into()));
    }
    let (mut ledger, stream) = match resume {
        Some(path) => {
            let ledger = read_ledger(path)?;
            let stream = resume_stream(&ledger, cfg.strategy)?;
            (ledger, stream)
        }
        None => (Vec::new(), Refinement::new(&cfg.seed()?, cfg.strategy)),
    };
    let pi = pi_interval(&cfg.eps)?;
    let places = error_places(&cfg.eps);
    let mut sink = RecordSink::new(cfg.format, out);
    let mut fresh = Vec::new();
    let mut failure = None;
    for rec in stream.take(cfg.depth) {
        let row = rec.and_then(|rec| {
            refined_verdict(&rec)?;
            OutputRecord::new(&rec, &approx_record(&rec, &pi)?, places)
        });
        match row {
            Ok(row) => {
                sink.push(&row)?;
                fresh.push(row);
            }
            Err(e) => {
                failure = Some(e);
                break;
            }
        }
    }
    sink.finish()?;

    if let Some(path) = resume {
        append_ledger(path, &fresh)?;
    }
    if let Some(path) = &cfg.out {
        ledger.extend(fresh);
        write_ledger(path, &ledger)?;
    }
    failure.map_or(Ok(EXIT_OK), Err)
}

/// Writes rows in the chosen format. JSON lines go straight out; CSV and
/// tables are buffered until the end.
struct RecordSink<'a> {
    format: Format,
    out: &'a mut dyn Write,
    csv: Option<csv::Writer<Vec<u8>>>,
    table: Vec<OutputRecord>,
}

impl<'a> RecordSink<'a> {
    fn new(format: Format, out: &'a mut dyn Write) -> Self {
        RecordSink {
            format,
            out,
            csv: (format == Format::Csv).then(|| csv::Writer::from_writer(Vec::new())),
            table: Vec::new(),
        }
    }

    fn push(&mut self, row: &OutputRecord) -> Result<()> {
        match self.format {
            Format::Json => writeln!(self.out, "{}", serde_json::to_string(row).map_err(io)?).map_err(io),
            Format::Csv => {
                let w = self.csv.as_mut().expect("csv writer");
                w.serialize(row).map_err(io)
            }
            Format::Table => {
                self.table.push(row.clone());
                Ok(())
            }
        }
    }

    fn finish(self) -> Result<()> {
        if let Some(w) = self.csv {
            let buf = w.into_inner().map_err(io)?;
            self.out.write_all(&buf).map_err(io)?;
        }
        if self.format == Format::Table {
            self.out.write_all(render_table(&self.table).as_bytes()).map_err(io)?;
        }
        self.out.flush().map_err(io)
    }
}

fn abbreviate(fraction: &str) -> String {
    if fraction.len() <= 24 {
        return fraction.to_string();
    }
    let (p, q) = fraction.split_once('/').unwrap_or((fraction, "1"));
    format!("({} digits)/({} digits)", p.len(), q.len())
}

fn render_table(rows: &[OutputRecord]) -> String {
    let header = ["n", "q", "a_-n", "a_-n-1", "N_n", "D_n", "u_n", "r_n", "r_n - pi ~"];
    let cells: Vec<[String; 9]> = rows
        .iter()
        .map(|r| {
            [
                r.n.to_string(),
                r.q.to_string(),
                r.a_n.to_string(),
                r.a_next.to_string(),
                r.big_n.to_string(),
                r.big_d.to_string(),
                abbreviate(&r.u_n),
                r.r_decimal.clone(),
                approx_error(r),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let mut s = String::new();
    let line = |s: &mut String, row: &[&str]| {
        let padded: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        s.push_str(padded.join("  ").trim_end());
        s.push('\n');
    };
    line(&mut s, &header);
    for row in &cells {
        line(&mut s, &row.iter().map(String::as_str).collect::<Vec<_>>());
    }
    s
}

/// Midpoint of the error enclosure in scientific notation, for display only.
fn approx_error(r: &OutputRecord) -> String {
    match (r.err_lo.parse::<Rational>(), r.err_hi.parse::<Rational>()) {
        (Ok(lo), Ok(hi)) => format!("{:.4e}", ((lo + hi) * Rational::new(1, 2).expect("nonzero")).to_f64()),
        _ => "?".into(),
    }
}

fn read_ledger(path: &Path) -> Result<Vec<OutputRecord>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Parse {
                column: e.column(),
                message: format!("ledger line {}: {e}", i + 1),
            })
        })
        .collect()
}

fn write_ledger(path: &Path, rows: &[OutputRecord]) -> Result<()> {
    let mut text = String::new();
    for row in rows {
        text.push_str(&serde_json::to_string(row).map_err(io)?);
        text.push('\n');
    }
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn append_ledger(path: &Path, rows: &[OutputRecord]) -> Result<()> {
    let mut f = fs::OpenOptions::new()
        .append(true)
        .open(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    for row in rows {
        writeln!(f, "{}", serde_json::to_string(row).map_err(io)?).map_err(io)?;
    }
    Ok(())
}

fn parse_field(text: &str, n: usize, field: &str) -> Result<Rational> {
    text.parse().map_err(|_| Error::Parse {
        column: 1,
        message: format!("ledger record {n}: {field} = {text:?} is not a rational"),
    })
}

/// Re-derives every recurrence in the ledger, re-verifies the seed from
/// record 0 and the identity of the last record, and returns a stream
/// positioned after it.
fn resume_stream(ledger: &[OutputRecord], strategy: Strategy) -> Result<Refinement> {
    let first = ledger
        .first()
        .ok_or_else(|| Error::Precondition("ledger is empty".into()))?;
    let seed = Seed::new(
        first.a_n,
        first.a_prev,
        parse_field(&first.u_n, 0, "u_n")?,
        parse_field(&first.u_next, 0, "u_next")?,
    )?;
    let inconsistent = |n: usize, what: &str| Error::Precondition(format!("ledger record {n}: {what} is inconsistent"));
    let (mut n2, mut d2, mut n1, mut d1) = (0u64, 1u64, 1u64, 0u64);
    for (i, r) in ledger.iter().enumerate() {
        if r.n != i {
            return Err(inconsistent(i, "index"));
        }
        let next = |a: u64, b: u64| r.q.checked_mul(a).and_then(|x| x.checked_add(b));
        let (Some(nn), Some(dd)) = (next(n1, n2), next(d1, d2)) else {
            return Err(inconsistent(i, "convergent"));
        };
        if (nn, dd) != (r.big_n, r.big_d) {
            return Err(inconsistent(i, "convergent"));
        }
        (n2, d2, n1, d1) = (n1, d1, nn, dd);
        if fibonacci(i + 1).to_u64() != Some(r.fib) {
            return Err(inconsistent(i, "fib"));
        }
        if r.q as i128 * r.a_n as i128 + r.a_prev as i128 != r.a_next as i128 {
            return Err(inconsistent(i, "a_next"));
        }
        let (u, v) = (parse_field(&r.u_n, i, "u_n")?, parse_field(&r.u_next, i, "u_next")?);
        let r_exact = (u.scale(&r.a_n.into()) + v.scale(&r.a_prev.into())).scale(&BigInt::from(4));
        if rational_text(&r_exact) != r.r {
            return Err(inconsistent(i, "r"));
        }
        if let Some(next) = ledger.get(i + 1) {
            if next.a_n != r.a_next || next.a_prev != r.a_n || next.u_n != r.u_next {
                return Err(inconsistent(i + 1, "link to the previous record"));
            }
        }
    }
    let last = ledger.last().expect("nonempty");
    let qs: Vec<u64> = ledger.iter().map(|r| r.q).collect();
    Refinement::resume(
        &seed,
        &qs,
        &parse_field(&last.u_n, last.n, "u_n")?,
        &parse_field(&last.u_next, last.n, "u_next")?,
        &last.a_n.into(),
        &last.a_prev.into(),
        strategy,
    )
}

/// Longest run of leading digits worth printing whole.
const PRINT_LIMIT: usize = 60;

fn integer_summary(x: &BigInt) -> String {
    let s = x.to_string();
    if s.len() <= PRINT_LIMIT {
        s
    } else {
        format!("<{} digits>", s.trim_start_matches('-').len())
    }
}

pub fn cmd_verify(text: &str, out: &mut dyn Write) -> Result<u8> {
    let id: MachinIdentity = text.parse()?;
    match verify(&id) {
        Verdict::True(v) => {
            let c = v.certificate();
            writeln!(out, "true").map_err(io)?;
            writeln!(out, "identity: {id}").map_err(io)?;
            match &c.tangent {
                TangentWitness::Product(p) => writeln!(
                    out,
                    "tangent: product (re, im) = ({}, {})",
                    integer_summary(&p.re),
                    integer_summary(&p.im)
                ),
                TangentWitness::Balance(b) => writeln!(
                    out,
                    "tangent: valuations cancel over {} coprime factors; product = ({}, {}) mod 2^61-1",
                    b.blocks.len(),
                    b.residue.0,
                    b.residue.1
                ),
            }
            .map_err(io)?;
            writeln!(
                out,
                "angle sum in [{}, {}]",
                c.angle_sum.lo().to_decimal_floor(6),
                c.angle_sum.hi().to_decimal_ceil(6)
            )
            .map_err(io)?;
            Ok(EXIT_OK)
        }
        Verdict::False(why) => {
            writeln!(out, "false: {why}").map_err(io)?;
            Ok(EXIT_FALSE)
        }
        Verdict::Inconclusive(why) => {
            writeln!(out, "inconclusive: {why}").map_err(io)?;
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}

pub fn cmd_digits(cfg: &RunConfig, n: usize, digits: u32, stats: bool, out: &mut dyn Write) -> Result<u8> {
    let seed = cfg.seed()?;
    let start = Instant::now();
    let report = pi_digits(&seed, n, digits, PrecisionBudget::from_env())?;
    let elapsed = start.elapsed();
    writeln!(out, "{}", report.digits).map_err(io)?;
    if stats {
        writeln!(out, "# series terms for arctan(u_{n}): {}", report.terms[0]).map_err(io)?;
        writeln!(out, "# series terms for arctan(u_{}): {}", n + 1, report.terms[1]).map_err(io)?;
        writeln!(out, "# guard places: {}", report.guard).map_err(io)?;
        writeln!(out, "# elapsed: {:.3} ms", elapsed.as_secs_f64() * 1e3).map_err(io)?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_text_and_errors() {
        let mut cfg = RunConfig::default();
        cfg.apply_config_text("# seed\nu0 = 1/5\nu1=1/239 # small\na0=4\n\na1 = -1\ndepth=3\n")
            .unwrap();
        assert_eq!((cfg.a0, cfg.a1, cfg.depth), (4, -1, 3));
        assert_eq!(cfg.u1, "1/239".parse::<Rational>().unwrap());
        let mut cfg = RunConfig::default();
        let e = cfg.apply_config_text("depth = 3\ncolour = red\n").unwrap_err();
        assert!(matches!(e, Error::Parse { ref message, .. } if message.contains("line 2")));
        let e = cfg.apply_config_text("depth= x\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                column: 8,
                message: "config line 1: invalid count for depth: \" x\"".into()
            }
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::SeedInvalid(String::new())), EXIT_INVALID);
        assert_eq!(exit_code(&Error::Pole), EXIT_FALSE);
        assert_eq!(exit_code(&Error::PrecisionExhausted(String::new())), EXIT_INCONCLUSIVE);
        assert_eq!(
            exit_code(&Error::Parse {
                column: 1,
                message: String::new()
            }),
            EXIT_PARSE
        );
    }

    #[test]
    fn error_places_follow_eps() {
        assert_eq!(error_places(&Rational::pow10(-30)), 32);
        assert_eq!(error_places(&Rational::pow10(-3)), 12);
    }

    #[test]
    fn table_aligns_columns() {
        let mut buf = Vec::new();
        let cfg = RunConfig {
            depth: 3,
            ..RunConfig::default()
        };
        cmd_refine(&cfg, None, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].trim_start().starts_with('n'));
        assert!(lines[3].contains("3.160940325497"));
    }
}
