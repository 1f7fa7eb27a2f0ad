//! Command-line and config-file parsing into a fully resolved [`RunConfig`].

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use zerolab::analytic::OmegaSpec;
use zerolab::ntcore::PRIMORIAL_PRIMES;

/// Environment variable naming the default sieve cache directory.
pub const CACHE_ENV: &str = "ZEROLAB_CACHE_DIR";

#[derive(Debug)]
pub enum ConfigError {
    Usage(String),
    Io(String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Usage(m) | ConfigError::Io(m) => f.write_str(m),
        }
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError::Usage(msg.into()))
}

#[derive(Parser, Debug)]
#[command(name = "zerolab", version, about = "Numerical experiments around Nyman–Beurling approximation and zero-free regions")]
pub struct Cli {
    /// key=value file; command-line flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Worker threads (≥ 1).
    #[arg(long, global = true)]
    pub threads: Option<String>,
    /// Sieve size; defaults to the largest index the command touches.
    #[arg(long = "sieve-limit", global = true)]
    pub sieve_limit: Option<String>,
    /// Directory for cached sieves [env: ZEROLAB_CACHE_DIR].
    #[arg(long = "cache-dir", global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Report path; standard output when absent.
    #[arg(long, short, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Report format; inferred from the output extension, else csv.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Scan checkpoint file.
    #[arg(long, global = true, value_name = "PATH")]
    pub checkpoint: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<CommandArgs>,
}

macro_rules! command_args {
    ($(#[$doc:meta])* $name:ident { $($(#[$m:meta])* $field:ident: $key:literal),* $(,)? }) => {
        $(#[$doc])*
        #[derive(Args, Debug, Default, Clone)]
        pub struct $name {
            $($(#[$m])* #[arg(long = $key, allow_hyphen_values = true)] pub $field: Option<String>,)*
        }

        impl $name {
            const KEYS: &'static [&'static str] = &[$($key),*];

            fn pairs(&self) -> Vec<(&'static str, Option<String>)> {
                vec![$(($key, self.$field.clone())),*]
            }
        }
    };
}

command_args!(
    /// Build (or load) the Möbius/Mertens/φ tables.
    SieveArgs { limit: "limit" }
);
command_args!(
    /// Scan condition (6) over all m with a nonempty window.
    Scan6Args {
        s: "s",
        omega: "omega",
        n_cap: "n-cap",
        m_start: "m-start",
        m_end: "m-end",
        chunk_m: "chunk-m",
        #[arg(num_args = 0..=1, default_missing_value = "true")]
        resume: "resume",
        #[arg(hide = true)]
        max_chunks: "max-chunks",
    }
);
command_args!(
    /// List m with m·|Σ_{k≤m} μ(k)/k| ≤ threshold.
    SelbergArgs { limit: "limit", threshold: "threshold" }
);
command_args!(
    /// Weighted norms of F_m over a list of m.
    NormsArgs { p: "p", alpha: "alpha", m_list: "m-list", truncation: "truncation" }
);
command_args!(
    /// Exact window of F_m, F'_m or s_t.
    FprimeArgs { kind: "kind", m: "m", n_start: "n-start", n_end: "n-end" }
);
command_args!(
    /// Both sides of the Beurling integral identity.
    BeurlingArgs { s: "s", coeffs: "coeffs", truncation: "truncation" }
);
command_args!(
    /// Check a power-series operator identity.
    SeriesCheckArgs { identity: "identity", k: "k", order: "order", a: "a", b: "b" }
);
command_args!(
    /// Gram diagnostics of the g_k system.
    RieszArgs { a: "a", b: "b", alpha: "alpha", k_max: "k-max" }
);
command_args!(
    /// Distance from (1−z)^{1−a} to span{(1−z)^{1−a} h_k}.
    SpanArgs { a: "a", k_max: "k-max", order: "order", alpha: "alpha" }
);

#[derive(Subcommand, Debug, Clone)]
pub enum CommandArgs {
    Sieve(SieveArgs),
    Scan6(Scan6Args),
    Selberg(SelbergArgs),
    Norms(NormsArgs),
    Fprime(FprimeArgs),
    Beurling(BeurlingArgs),
    SeriesCheck(SeriesCheckArgs),
    Riesz(RieszArgs),
    Span(SpanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Sieve,
    Scan6,
    Selberg,
    Norms,
    Fprime,
    Beurling,
    SeriesCheck,
    Riesz,
    Span,
}

impl Command {
    fn keys(self) -> &'static [&'static str] {
        match self {
            Command::Sieve => SieveArgs::KEYS,
            Command::Scan6 => Scan6Args::KEYS,
            Command::Selberg => SelbergArgs::KEYS,
            Command::Norms => NormsArgs::KEYS,
            Command::Fprime => FprimeArgs::KEYS,
            Command::Beurling => BeurlingArgs::KEYS,
            Command::SeriesCheck => SeriesCheckArgs::KEYS,
            Command::Riesz => RieszArgs::KEYS,
            Command::Span => SpanArgs::KEYS,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Command::Sieve => "sieve",
            Command::Scan6 => "scan6",
            Command::Selberg => "selberg",
            Command::Norms => "norms",
            Command::Fprime => "fprime",
            Command::Beurling => "beurling",
            Command::SeriesCheck => "series-check",
            Command::Riesz => "riesz",
            Command::Span => "span",
        }
    }
}

impl FromStr for Command {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        <Command as ValueEnum>::from_str(s, false).or_else(|_| usage(format!("unknown command {s:?}")))
    }
}

impl CommandArgs {
    fn split(&self) -> (Command, Vec<(&'static str, Option<String>)>) {
        match self {
            CommandArgs::Sieve(a) => (Command::Sieve, a.pairs()),
            CommandArgs::Scan6(a) => (Command::Scan6, a.pairs()),
            CommandArgs::Selberg(a) => (Command::Selberg, a.pairs()),
            CommandArgs::Norms(a) => (Command::Norms, a.pairs()),
            CommandArgs::Fprime(a) => (Command::Fprime, a.pairs()),
            CommandArgs::Beurling(a) => (Command::Beurling, a.pairs()),
            CommandArgs::SeriesCheck(a) => (Command::SeriesCheck, a.pairs()),
            CommandArgs::Riesz(a) => (Command::Riesz, a.pairs()),
            CommandArgs::Span(a) => (Command::Span, a.pairs()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WindowSel {
    F,
    Fprime,
    St,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Identity {
    A07,
    A06,
    A08,
}

/// Typed parameters of the selected command.
#[derive(Debug, Clone, PartialEq)]
pub enum Job {
    Sieve { limit: u64 },
    Scan6 { s: f64, omega: OmegaSpec, n_cap: u64, m_start: u64, m_end: u64, chunk_m: u64, resume: bool, max_chunks: Option<usize> },
    Selberg { limit: u64, threshold: f64 },
    Norms { p: f64, alpha: f64, m_list: Vec<u64>, truncation: Option<u64> },
    Fprime { kind: WindowSel, m: u64, n_start: u64, n_end: u64 },
    Beurling { s: Complex64, coeffs: Vec<BigRational>, truncation: u64 },
    SeriesCheck { identity: Identity, k: usize, order: usize, a: f64, b: f64 },
    Riesz { a: f64, b: f64, alpha: f64, k_max: usize },
    Span { a: f64, k_max: usize, order: usize, alpha: f64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub sieve_limit: u64,
    pub threads: usize,
    pub checkpoint_path: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    pub output: OutputSpec,
    /// Normalized command parameters, defaults included.
    pub params: BTreeMap<String, String>,
    #[serde(skip)]
    pub job: Job,
}

const GLOBAL_KEYS: &[&str] = &["command", "threads", "sieve-limit", "cache-dir", "output", "format", "checkpoint"];

fn normalize_key(k: &str) -> String {
    k.trim().to_ascii_lowercase().replace('_', "-")
}

/// Reads `key = value` lines; `#` starts a comment line.
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::Io(format!("cannot read config {}: {e}", path.display())))?;
    parse_config_text(&text)
}

pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return usage(format!("config line {}: expected key = value", i + 1));
        };
        let key = normalize_key(k);
        if map.insert(key.clone(), v.trim().to_string()).is_some() {
            return usage(format!("config line {}: duplicate key {key:?}", i + 1));
        }
    }
    Ok(map)
}

fn parse_num<T: FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<Option<T>, ConfigError> {
    match map.get(key) {
        None => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .or_else(|_| usage(format!("invalid value {v:?} for {key}"))),
    }
}

fn require<T: FromStr>(map: &BTreeMap<String, String>, key: &str, cmd: Command) -> Result<T, ConfigError> {
    parse_num(map, key)?.map_or_else(|| usage(format!("{} requires --{key}", cmd.name())), Ok)
}

fn or_default<T: FromStr>(map: &BTreeMap<String, String>, key: &str, default: T) -> Result<T, ConfigError> {
    Ok(parse_num(map, key)?.unwrap_or(default))
}

fn parse_list<T: FromStr>(v: &str, key: &str) -> Result<Vec<T>, ConfigError> {
    v.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().or_else(|_| usage(format!("invalid entry {s:?} in {key}"))))
        .collect()
}

fn parse_bool(v: &str, key: &str) -> Result<bool, ConfigError> {
    match v {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => usage(format!("invalid boolean {v:?} for {key}")),
    }
}

fn finite(x: f64, key: &str) -> Result<f64, ConfigError> {
    if x.is_finite() {
        Ok(x)
    } else {
        usage(format!("{key} must be finite"))
    }
}

fn build_job(cmd: Command, map: &BTreeMap<String, String>) -> Result<(Job, BTreeMap<String, String>), ConfigError> {
    let mut out = BTreeMap::new();
    let mut put = |k: &str, v: String| {
        out.insert(k.to_string(), v);
    };
    let job = match cmd {
        Command::Sieve => {
            let limit: u64 = require(map, "limit", cmd)?;
            if limit == 0 {
                return usage("limit must be ≥ 1");
            }
            put("limit", limit.to_string());
            Job::Sieve { limit }
        }
        Command::Scan6 => {
            let s: f64 = finite(require(map, "s", cmd)?, "s")?;
            if !(0.5..1.0).contains(&s) {
                return usage(format!("s = {s} must lie in [0.5, 1)"));
            }
            let omega: OmegaSpec = map
                .get("omega")
                .map(|v| v.parse().or_else(|e: zerolab::Error| usage(e.to_string())))
                .transpose()?
                .unwrap_or(OmegaSpec::Affine { c0: 1.0, c1: 1.0 });
            let n_cap: u64 = require(map, "n-cap", cmd)?;
            if n_cap < 3 {
                return usage("n-cap must be ≥ 3");
            }
            let m_start: u64 = or_default(map, "m-start", 2)?;
            let m_end: u64 = or_default(map, "m-end", n_cap - 1)?;
            if m_start < 2 || m_start > m_end {
                return usage(format!("need 2 ≤ m-start ≤ m-end, got {m_start}..{m_end}"));
            }
            let chunk_m: u64 = or_default(map, "chunk-m", zerolab::analytic::DEFAULT_CHUNK_M)?;
            if chunk_m == 0 {
                return usage("chunk-m must be ≥ 1");
            }
            let resume = map.get("resume").map(|v| parse_bool(v, "resume")).transpose()?.unwrap_or(false);
            let max_chunks: Option<usize> = parse_num(map, "max-chunks")?;
            put("s", s.to_string());
            put("omega", omega.to_string());
            put("n-cap", n_cap.to_string());
            put("m-start", m_start.to_string());
            put("m-end", m_end.to_string());
            put("chunk-m", chunk_m.to_string());
            put("resume", resume.to_string());
            if let Some(c) = max_chunks {
                put("max-chunks", c.to_string());
            }
            Job::Scan6 { s, omega, n_cap, m_start, m_end, chunk_m, resume, max_chunks }
        }
        Command::Selberg => {
            let limit: u64 = require(map, "limit", cmd)?;
            let threshold: f64 = finite(or_default(map, "threshold", 0.5)?, "threshold")?;
            if limit == 0 || threshold <= 0.0 {
                return usage("selberg needs limit ≥ 1 and threshold > 0");
            }
            put("limit", limit.to_string());
            put("threshold", threshold.to_string());
            Job::Selberg { limit, threshold }
        }
        Command::Norms => {
            let p: f64 = finite(or_default(map, "p", 1.0)?, "p")?;
            let alpha: f64 = finite(require(map, "alpha", cmd)?, "alpha")?;
            if !(1.0..=2.0).contains(&p) {
                return usage(format!("p = {p} must lie in [1, 2]"));
            }
            let m_list: Vec<u64> = match map.get("m-list") {
                Some(v) => parse_list(v, "m-list")?,
                None => (4..=13).map(|e| 1u64 << e).collect(),
            };
            if m_list.is_empty() || m_list.contains(&0) {
                return usage("m-list must hold positive integers");
            }
            let truncation: Option<u64> = parse_num(map, "truncation")?;
            if truncation == Some(0) {
                return usage("truncation must be ≥ 1");
            }
            put("p", p.to_string());
            put("alpha", alpha.to_string());
            put("m-list", m_list.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
            put("truncation", truncation.map_or("default".into(), |t| t.to_string()));
            Job::Norms { p, alpha, m_list, truncation }
        }
        Command::Fprime => {
            let kind = match map.get("kind").map(String::as_str).unwrap_or("fprime") {
                "f" | "F" => WindowSel::F,
                "fprime" | "Fprime" => WindowSel::Fprime,
                "st" | "s_t" => WindowSel::St,
                other => return usage(format!("unknown kind {other:?}; expected f, fprime or st")),
            };
            let m: u64 = require(map, "m", cmd)?;
            if m < 2 {
                return usage("m must be ≥ 2");
            }
            let primorial = {
                let mut acc = 1u64;
                PRIMORIAL_PRIMES.iter().any(|&p| {
                    acc = acc.saturating_mul(p);
                    acc == m
                })
            };
            if kind != WindowSel::F && !primorial {
                return usage(format!("{m} is not a primorial"));
            }
            if kind == WindowSel::St && m == 2 {
                return usage("s_t is undefined for m = 2");
            }
            let n_start: u64 = or_default(map, "n-start", 1)?;
            let n_end: u64 = or_default(map, "n-end", m)?;
            if n_start == 0 || n_end < n_start {
                return usage(format!("need 1 ≤ n-start ≤ n-end, got {n_start}..{n_end}"));
            }
            put("kind", format!("{kind:?}").to_lowercase());
            put("m", m.to_string());
            put("n-start", n_start.to_string());
            put("n-end", n_end.to_string());
            Job::Fprime { kind, m, n_start, n_end }
        }
        Command::Beurling => {
            let s: Complex64 = require::<String>(map, "s", cmd)?
                .parse()
                .or_else(|_| usage(format!("invalid complex s {:?}", map["s"])))?;
            if !(s.re > 0.0 && s.re.is_finite() && s.im.is_finite()) || s == Complex64::new(1.0, 0.0) {
                return usage(format!("s = {s} must have Re(s) > 0 and s ≠ 1"));
            }
            let coeffs: Vec<BigRational> = parse_list(&require::<String>(map, "coeffs", cmd)?, "coeffs")?;
            if coeffs.is_empty() {
                return usage("coeffs must list c_2..c_N");
            }
            let truncation: u64 = or_default(map, "truncation", zerolab::analytic::DEFAULT_TRUNCATION)?;
            if truncation == 0 {
                return usage("truncation must be ≥ 1");
            }
            put("s", s.to_string());
            put("coeffs", coeffs.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
            put("truncation", truncation.to_string());
            Job::Beurling { s, coeffs, truncation }
        }
        Command::SeriesCheck => {
            let identity = match map.get("identity").map(|s| s.to_ascii_uppercase()).as_deref().unwrap_or("A07") {
                "A07" => Identity::A07,
                "A06" => Identity::A06,
                "A08" => Identity::A08,
                other => return usage(format!("unknown identity {other:?}; expected A06, A07 or A08")),
            };
            let k: usize = or_default(map, "k", 2)?;
            let order: usize = or_default(map, "order", 64)?;
            let a: f64 = finite(or_default(map, "a", 1.0)?, "a")?;
            let b: f64 = finite(or_default(map, "b", 1.0)?, "b")?;
            if k < 2 || order < 1 || a <= 0.0 || b == 0.0 {
                return usage("series-check needs k ≥ 2, order ≥ 1, a > 0, b ≠ 0");
            }
            put("identity", format!("{identity:?}"));
            put("k", k.to_string());
            put("order", order.to_string());
            put("a", a.to_string());
            put("b", b.to_string());
            Job::SeriesCheck { identity, k, order, a, b }
        }
        Command::Riesz => {
            let a: f64 = finite(or_default(map, "a", 1.0)?, "a")?;
            let b: f64 = finite(or_default(map, "b", 1.0)?, "b")?;
            let alpha: f64 = finite(or_default(map, "alpha", -2.5)?, "alpha")?;
            let k_max: usize = or_default(map, "k-max", 200)?;
            put("a", a.to_string());
            put("b", b.to_string());
            put("alpha", alpha.to_string());
            put("k-max", k_max.to_string());
            Job::Riesz { a, b, alpha, k_max }
        }
        Command::Span => {
            let a: f64 = finite(or_default(map, "a", 1.0)?, "a")?;
            let k_max: usize = or_default(map, "k-max", 8)?;
            let order: usize = or_default(map, "order", 2048)?;
            let alpha: f64 = finite(or_default(map, "alpha", -2.5)?, "alpha")?;
            if k_max < 2 || order < 1 {
                return usage("span needs k-max ≥ 2 and order ≥ 1");
            }
            put("a", a.to_string());
            put("k-max", k_max.to_string());
            put("order", order.to_string());
            put("alpha", alpha.to_string());
            Job::Span { a, k_max, order, alpha }
        }
    };
    Ok((job, out))
}

impl Job {
    /// Largest sieve index the job reads; zero when it needs no sieve.
    pub fn required_sieve(&self) -> u64 {
        match self {
            Job::Sieve { limit } => *limit,
            Job::Scan6 { n_cap, .. } => *n_cap,
            Job::Selberg { limit, .. } => *limit,
            Job::Norms { m_list, .. } => m_list.iter().copied().max().unwrap_or(1),
            Job::Fprime { m, .. } => *m,
            _ => 0,
        }
    }
}

/// Merges the config file (if any) with command-line flags and validates the result.
pub fn parse_config(cli: &Cli) -> Result<RunConfig, ConfigError> {
    let mut map = match &cli.config {
        Some(path) => read_config_file(path)?,
        None => BTreeMap::new(),
    };
    let flag_cmd = cli.command.as_ref().map(CommandArgs::split);
    let file_cmd = map.remove("command").map(|c| c.parse::<Command>()).transpose()?;
    let cmd = match (flag_cmd.as_ref().map(|(c, _)| *c), file_cmd) {
        (Some(a), Some(b)) if a != b => {
            return usage(format!("command {} conflicts with config command {}", a.name(), b.name()))
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return usage("no command given; see --help"),
    };
    if let Some(bad) = map.keys().find(|k| !GLOBAL_KEYS.contains(&k.as_str()) && !cmd.keys().contains(&k.as_str())) {
        return usage(format!("unknown config key {bad:?} for {}", cmd.name()));
    }
    let mut set = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            map.insert(k.to_string(), v);
        }
    };
    set("threads", cli.threads.clone());
    set("sieve-limit", cli.sieve_limit.clone());
    set("cache-dir", cli.cache_dir.as_ref().map(|p| p.display().to_string()));
    set("output", cli.output.as_ref().map(|p| p.display().to_string()));
    set("format", cli.format.clone());
    set("checkpoint", cli.checkpoint.as_ref().map(|p| p.display().to_string()));
    if let Some((_, pairs)) = flag_cmd {
        for (k, v) in pairs {
            set(k, v);
        }
    }

    let threads: usize = match parse_num(&map, "threads")? {
        Some(0) => return usage("threads must be ≥ 1"),
        Some(t) => t,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let (job, params) = build_job(cmd, &map)?;
    let required = job.required_sieve();
    let sieve_limit: u64 = match parse_num(&map, "sieve-limit")? {
        Some(l) if l < required => {
            return usage(format!("sieve-limit {l} is below the {required} this command needs"))
        }
        Some(l) => l,
        None => required,
    };
    let output_path = map.get("output").map(PathBuf::from);
    let format = match map.get("format").map(String::as_str) {
        Some("csv") => Format::Csv,
        Some("json") => Format::Json,
        Some(other) => return usage(format!("unknown format {other:?}; expected csv or json")),
        None => match output_path.as_ref().and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some("json") => Format::Json,
            _ => Format::Csv,
        },
    };
    let checkpoint_path = map.get("checkpoint").map(PathBuf::from);
    if checkpoint_path.is_some() && cmd != Command::Scan6 {
        return usage("--checkpoint applies to scan6 only");
    }
    if matches!(job, Job::Scan6 { resume: true, .. }) && checkpoint_path.is_none() {
        return usage("--resume needs --checkpoint");
    }
    let cache_dir = map
        .get("cache-dir")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from));
    Ok(RunConfig {
        command: cmd,
        sieve_limit,
        threads,
        checkpoint_path,
        cache_dir,
        output: OutputSpec { path: output_path, format },
        params,
        job,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> Result<RunConfig, ConfigError> {
        let cli = Cli::try_parse_from(std::iter::once("zerolab").chain(args.iter().copied())).unwrap();
        parse_config(&cli)
    }

    #[test]
    fn scan6_mapping() {
        let c = cfg(&["scan6", "--s", "0.5", "--omega", "affine:1,1", "--n-cap", "360000"]).unwrap();
        assert_eq!(c.command, Command::Scan6);
        match c.job {
            Job::Scan6 { s, omega, n_cap, m_start, m_end, .. } => {
                assert_eq!(s, 0.5);
                assert_eq!(omega, OmegaSpec::Affine { c0: 1.0, c1: 1.0 });
                assert_eq!((n_cap, m_start, m_end), (360_000, 2, 359_999));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(c.sieve_limit, 360_000);
    }

    #[test]
    fn usage_errors() {
        assert!(matches!(cfg(&[]), Err(ConfigError::Usage(_))));
        assert!(matches!(cfg(&["--threads", "0", "sieve", "--limit", "10"]), Err(ConfigError::Usage(_))));
        assert!(matches!(cfg(&["scan6", "--s", "0.5"]), Err(ConfigError::Usage(_))));
        assert!(matches!(cfg(&["scan6", "--s", "1.5", "--n-cap", "10"]), Err(ConfigError::Usage(_))));
        assert!(matches!(
            cfg(&["--sieve-limit", "5", "selberg", "--limit", "10"]),
            Err(ConfigError::Usage(_))
        ));
        assert!(matches!(cfg(&["fprime", "--m", "7"]), Err(ConfigError::Usage(_))));
        assert!(matches!(cfg(&["scan6", "--s", "0.5", "--n-cap", "10", "--resume"]), Err(ConfigError::Usage(_))));
    }

    #[test]
    fn config_text() {
        let m = parse_config_text("# comment\nn_cap = 100\n s=0.5 \n").unwrap();
        assert_eq!(m["n-cap"], "100");
        assert_eq!(m["s"], "0.5");
        assert!(parse_config_text("a = 1\na = 2").is_err());
        assert!(parse_config_text("novalue").is_err());
    }
}
