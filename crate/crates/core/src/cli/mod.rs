//! Command-line front end. The `wangsun` binary is a thin shell around
//! [`run`], which takes its arguments, environment and output streams
//! explicitly so it can be driven from tests.

pub mod cache;
pub mod oeis;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::affine;
use crate::arith;
use crate::wangsun::{self, SumKind, SumOptions, SumResult, WangSunError};
use cache::{CacheRecord, ResultsCache};
use oeis::{Fixtures, OeisClient, OeisMatch};
use output::{csv_row, write_result, Format, ResultJson, CSV_HEADER};
use verify::{run_verify, Suite, VerifyConfig};

pub const ENV_CACHE: &str = "WANGSUN_CACHE";
pub const ENV_OEIS_URL: &str = "WANGSUN_OEIS_URL";
pub const ENV_OFFLINE: &str = "WANGSUN_OFFLINE";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ENV: i32 = 3;

/// Settings taken from environment variables.
#[derive(Debug, Clone)]
pub struct Environment {
    pub cache_path: PathBuf,
    pub oeis_url: String,
    pub offline: bool,
}

impl Default for Environment {
    fn default() -> Self {
        Self {
            cache_path: PathBuf::from(cache::DEFAULT_CACHE_PATH),
            oeis_url: oeis::DEFAULT_BASE_URL.to_string(),
            offline: false,
        }
    }
}

fn truthy(v: &str) -> bool {
    !matches!(
        v.trim().to_ascii_lowercase().as_str(),
        "" | "0" | "false" | "no" | "off"
    )
}

impl Environment {
    pub fn from_process() -> Self {
        let mut env = Self::default();
        if let Some(p) = std::env::var_os(ENV_CACHE) {
            env.cache_path = PathBuf::from(p);
        }
        if let Ok(u) = std::env::var(ENV_OEIS_URL) {
            env.oeis_url = u;
        }
        if let Ok(v) = std::env::var(ENV_OFFLINE) {
            env.offline = truthy(&v);
        }
        env
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "wangsun",
    version,
    about = "Exact Wang-Sun cyclotomic sums over affine derangements of Z/2kZ"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Never touch the network; OEIS queries are answered from bundled fixtures.
    #[arg(long, global = true)]
    offline: bool,
    /// Do not read or write the results cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SumArgs {
    #[arg(long)]
    k: u64,
    /// Which primitive root zeta = exp(2 pi i a / 2k) to use.
    #[arg(long, default_value_t = 1)]
    root: i64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Unsigned sum over the quasipolarities of Z/2kZ.
    Qsum(SumArgs),
    /// Signed sum over all affine derangements of Z/2kZ.
    Dsum(SumArgs),
    /// Signed sum over the derangements of S_(n-1), zeta a primitive n-th root.
    Classical {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        root: i64,
    },
    /// Count (and optionally list) the quasipolarities of Z/2kZ.
    Quasipolarities {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        list: bool,
    },
    /// Emit qsum or dsum over a range of k, optionally looking it up in the OEIS.
    Sequence {
        #[arg(long, value_parser = ["qsum", "dsum"])]
        kind: String,
        #[arg(long)]
        k_min: u64,
        #[arg(long)]
        k_max: u64,
        #[arg(long, default_value_t = 1)]
        step: u64,
        #[arg(long)]
        oeis: bool,
    },
    /// Run the verification suites.
    Verify {
        #[arg(long, default_value_t = 1)]
        k_min: u64,
        #[arg(long, default_value_t = 12)]
        k_max: u64,
        #[arg(long, default_value_t = 9)]
        n_max: u64,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Invariant(String),
    Env(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Invariant(_) => EXIT_VERIFY,
            Failure::Env(_) => EXIT_ENV,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Invariant(m) | Failure::Env(m) => m,
        }
    }
}

impl From<WangSunError> for Failure {
    fn from(e: WangSunError) -> Self {
        match e {
            WangSunError::NotRational { .. } | WangSunError::SignNotConstant { .. } => {
                Failure::Invariant(e.to_string())
            }
            WangSunError::Affine(affine::AffineError::CharacterizationMismatch { .. }) => {
                Failure::Invariant(e.to_string())
            }
            WangSunError::Pool(_) => Failure::Env(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<cache::CacheError> for Failure {
    fn from(e: cache::CacheError) -> Self {
        match e {
            cache::CacheError::Integrity { .. } => Failure::Invariant(e.to_string()),
            _ => Failure::Env(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Env(e.to_string())
    }
}

struct Ctx<'a> {
    format: Format,
    opts: SumOptions,
    cache: Option<ResultsCache>,
    oeis: OeisClient,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn record(&self, r: &SumResult) -> Result<(), Failure> {
        if let Some(cache) = &self.cache {
            cache.put(&CacheRecord::from_result(r))?;
        }
        Ok(())
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, env: &Environment, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    let offline = cli.offline || env.offline;
    let oeis = if offline {
        OeisClient::offline(Fixtures::bundled())
    } else {
        OeisClient::online(env.oeis_url.clone())
    };
    let mut ctx = Ctx {
        format: cli.format,
        opts: SumOptions::default().with_jobs(cli.jobs.unwrap_or(0)),
        cache: (!cli.no_cache).then(|| ResultsCache::new(env.cache_path.clone())),
        oeis,
        out,
        err,
    };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(ctx.err, "error: {}", f.message());
            f.code()
        }
    }
}

/// Entry point for the binary.
pub fn main() -> std::process::ExitCode {
    let env = Environment::from_process();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run(
        std::env::args_os(),
        &env,
        &mut stdout.lock(),
        &mut stderr.lock(),
    );
    std::process::ExitCode::from(code as u8)
}

fn dispatch(command: Command, ctx: &mut Ctx<'_>) -> Result<i32, Failure> {
    match command {
        Command::Qsum(a) => {
            let r = wangsun::qsum(a.k, &ctx.opts.with_root(a.root))?;
            emit_sum(ctx, &r)
        }
        Command::Dsum(a) => {
            let r = wangsun::dsum(a.k, &ctx.opts.with_root(a.root))?;
            emit_sum(ctx, &r)
        }
        Command::Classical { n, root } => {
            let r = wangsun::classical_sum(n, &ctx.opts.with_root(root))?;
            emit_sum(ctx, &r)
        }
        Command::Quasipolarities { k, list } => cmd_quasipolarities(ctx, k, list),
        Command::Sequence {
            kind,
            k_min,
            k_max,
            step,
            oeis,
        } => {
            let kind: SumKind = kind.parse().map_err(Failure::Usage)?;
            cmd_sequence(ctx, kind, k_min, k_max, step, oeis)
        }
        Command::Verify {
            k_min,
            k_max,
            n_max,
            suite,
        } => cmd_verify(ctx, k_min, k_max, n_max, suite),
    }
}

fn emit_sum(ctx: &mut Ctx<'_>, r: &SumResult) -> Result<i32, Failure> {
    ctx.record(r)?;
    write_result(ctx.out, ctx.format, r)?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct QuasipolarityJson {
    u: u64,
    v: u64,
    sign: i8,
    hits_tritone: bool,
}

fn cmd_quasipolarities(ctx: &mut Ctx<'_>, k: u64, list: bool) -> Result<i32, Failure> {
    if k == 0 {
        return Err(Failure::Usage("k must be at least 1".into()));
    }
    let maps: Vec<_> = affine::enumerate_quasipolarities_bruteforce(k)
        .map_err(|e| Failure::Usage(e.to_string()))?
        .collect();
    let rows: Vec<QuasipolarityJson> = maps
        .iter()
        .map(|f| QuasipolarityJson {
            u: f.translation(),
            v: f.linear(),
            sign: f.sign(),
            hits_tritone: f.hits_tritone(),
        })
        .collect();
    match ctx.format {
        Format::Plain => {
            writeln!(ctx.out, "{}", maps.len())?;
            if list {
                for (f, r) in maps.iter().zip(&rows) {
                    writeln!(
                        ctx.out,
                        "{f}\tsign={:+}\ttritone={}",
                        r.sign,
                        if r.hits_tritone { "yes" } else { "no" }
                    )?;
                }
            }
        }
        Format::Json => {
            let mut v = serde_json::json!({
                "k": k,
                "count": maps.len(),
                "unitary_sigma": arith::unitary_sigma(k),
            });
            if list {
                v["maps"] = serde_json::to_value(&rows).expect("serializable");
            }
            writeln!(ctx.out, "{v}")?;
        }
        Format::Csv => {
            writeln!(ctx.out, "u,v,sign,hits_tritone")?;
            for r in &rows {
                writeln!(ctx.out, "{},{},{},{}", r.u, r.v, r.sign, r.hits_tritone)?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Terms of a computed sequence worth sending to the OEIS: for `qsum` the
/// values at even `k` (odd `k` always gives 0); for `dsum` the integer-valued
/// terms.
pub fn oeis_terms(results: &[SumResult]) -> Vec<i128> {
    results
        .iter()
        .filter(|r| r.kind != SumKind::Qsum || r.param % 2 == 0)
        .filter_map(|r| r.value.to_integer())
        .filter_map(|i| i128::try_from(i).ok())
        .take(oeis::MAX_TERMS)
        .collect()
}

fn cmd_sequence(
    ctx: &mut Ctx<'_>,
    kind: SumKind,
    k_min: u64,
    k_max: u64,
    step: u64,
    lookup: bool,
) -> Result<i32, Failure> {
    if k_min == 0 || k_min > k_max || step == 0 {
        return Err(Failure::Usage(
            "need 1 <= k-min <= k-max and step >= 1".into(),
        ));
    }
    let mut results = Vec::new();
    for k in (k_min..=k_max).step_by(step as usize) {
        let r = match kind {
            SumKind::Qsum => wangsun::qsum(k, &ctx.opts)?,
            _ => wangsun::dsum(k, &ctx.opts)?,
        };
        ctx.record(&r)?;
        results.push(r);
    }
    let (matches, lookup_err, terms) = if lookup {
        let terms = oeis_terms(&results);
        match ctx.oeis.search(&terms) {
            Ok(m) => (Some(m), None, terms),
            Err(e) => (None, Some(e.to_string()), terms),
        }
    } else {
        (None, None, Vec::new())
    };

    match ctx.format {
        Format::Plain => {
            let line: Vec<String> = results.iter().map(|r| r.value.to_string()).collect();
            writeln!(ctx.out, "{}", line.join(","))?;
            if let Some(m) = &matches {
                write_matches_plain(ctx.out, m)?;
            }
        }
        Format::Json => {
            let rows: Vec<ResultJson> = results.iter().map(ResultJson::from).collect();
            let mut v = serde_json::json!({
                "kind": kind,
                "k_min": k_min,
                "k_max": k_max,
                "step": step,
                "terms": rows,
            });
            if lookup {
                v["oeis_query"] =
                    serde_json::to_value(terms.iter().map(|t| t.to_string()).collect::<Vec<_>>())
                        .expect("serializable");
                match (&matches, &lookup_err) {
                    (Some(m), _) => v["oeis"] = serde_json::to_value(m).expect("serializable"),
                    (_, Some(e)) => v["oeis_error"] = serde_json::Value::String(e.clone()),
                    _ => {}
                }
            }
            writeln!(ctx.out, "{v}")?;
        }
        Format::Csv => {
            writeln!(ctx.out, "{CSV_HEADER}")?;
            for r in &results {
                writeln!(ctx.out, "{}", csv_row(&ResultJson::from(r)))?;
            }
        }
    }
    if let Some(e) = lookup_err {
        writeln!(ctx.err, "error: OEIS lookup failed: {e}")?;
        return Ok(EXIT_ENV);
    }
    Ok(EXIT_OK)
}

fn write_matches_plain(out: &mut dyn Write, matches: &[OeisMatch]) -> std::io::Result<()> {
    if matches.is_empty() {
        return writeln!(out, "no OEIS matches");
    }
    for m in matches {
        writeln!(
            out,
            "{} ({} terms matched): {}",
            m.sequence_id, m.matched_prefix_length, m.name
        )?;
    }
    Ok(())
}

fn cmd_verify(
    ctx: &mut Ctx<'_>,
    k_min: u64,
    k_max: u64,
    n_max: u64,
    suite: Suite,
) -> Result<i32, Failure> {
    if k_min == 0 || k_min > k_max {
        return Err(Failure::Usage("need 1 <= k-min <= k-max".into()));
    }
    let cfg = VerifyConfig {
        k_min,
        k_max,
        n_max,
        suite,
        jobs: ctx.opts.jobs,
    };
    let report = run_verify(&cfg);
    match ctx.format {
        Format::Plain => {
            for c in &report.checks {
                writeln!(
                    ctx.out,
                    "{} {} {}: {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.suite,
                    c.name,
                    c.detail
                )?;
            }
            let failed = report.failures().count();
            writeln!(ctx.out, "{} checks, {} failed", report.checks.len(), failed)?;
        }
        Format::Json => {
            let failures: Vec<_> = report.failures().collect();
            let v = serde_json::json!({
                "passed": report.passed(),
                "checks": report.checks,
                "failures": failures,
            });
            writeln!(ctx.out, "{v}")?;
        }
        Format::Csv => {
            writeln!(ctx.out, "suite,check,passed,detail")?;
            for c in &report.checks {
                writeln!(
                    ctx.out,
                    "{},{},{},\"{}\"",
                    c.suite,
                    c.name,
                    c.passed,
                    c.detail.replace('"', "\"\"")
                )?;
            }
        }
    }
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], env: &Environment) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["wangsun"];
        full.extend_from_slice(args);
        let code = run(full, env, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn no_cache_env() -> Environment {
        Environment {
            offline: true,
            ..Default::default()
        }
    }

    #[test]
    fn qsum_plain() {
        let (code, out, _) = run_str(&["--no-cache", "qsum", "--k", "6"], &no_cache_env());
        assert_eq!((code, out.as_str()), (0, "8\n"));
    }

    #[test]
    fn usage_errors_exit_two() {
        let env = no_cache_env();
        assert_eq!(run_str(&["qsum"], &env).0, EXIT_USAGE);
        assert_eq!(
            run_str(&["--no-cache", "classical", "--n", "4"], &env).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_str(&["--no-cache", "qsum", "--k", "0"], &env).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_str(&["--no-cache", "qsum", "--k", "3", "--root", "3"], &env).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_str(
                &["--no-cache", "verify", "--k-min", "5", "--k-max", "2"],
                &env
            )
            .0,
            EXIT_USAGE
        );
        assert_eq!(run_str(&["bogus"], &env).0, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_str(&["--help"], &no_cache_env());
        assert_eq!(code, 0);
        assert!(out.contains("qsum"));
    }

    #[test]
    fn truthy_values() {
        assert!(truthy("1"));
        assert!(truthy("yes"));
        assert!(!truthy("0"));
        assert!(!truthy("false"));
        assert!(!truthy(""));
    }
}
