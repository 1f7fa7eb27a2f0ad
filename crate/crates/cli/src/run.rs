//! Executes a resolved [`RunConfig`] and writes its report.

use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use zerolab::analytic::{beurling_lhs, beurling_rhs, condition6_scan, BeurlingValue, ScanOptions, ScanParams};
use zerolab::approx::{SequenceWindow, WindowKind};
use zerolab::ntcore::{self, mobius_harmonic_prefix, selberg_scan, SieveTables};
use zerolab::series::{
    apply_t_a, apply_t_ab, binomial_series, g_system_diagnostics, hk_series, hk_span_family, span_projection,
    OperatorParams, EIGEN_TOLERANCE,
};
use zerolab::spaces::{fm_norm_trend, WeightParams};
use zerolab::{Error, ExactCombo};

use crate::config::{Format, Identity, Job, RunConfig, WindowSel};

/// Maximum coefficient error accepted by `series-check`.
pub const SERIES_TOLERANCE: f64 = 1e-9;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// A command's rendered results and whether its checks held.
struct Report {
    csv: Vec<u8>,
    json: Value,
    passed: bool,
}

#[derive(Debug)]
pub struct RunError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Io(_) | Error::Json(_) | Error::CorruptCache { .. } | Error::CorruptCheckpoint { .. } => EXIT_IO,
            _ => EXIT_USAGE,
        };
        RunError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError { code: EXIT_IO, message: e.to_string() }
    }
}

/// Runs the job and returns the process exit code.
pub fn run(cfg: &RunConfig) -> Result<i32, RunError> {
    let tables = if cfg.sieve_limit > 0 { Some(load_sieve(cfg)?) } else { None };
    let tables = tables.as_ref();
    let report = match &cfg.job {
        Job::Sieve { .. } => sieve(tables.expect("sieve needed")),
        Job::Scan6 { .. } => match scan6(cfg, tables.expect("sieve needed"))? {
            Some(r) => Ok(r),
            None => return Ok(EXIT_OK),
        },
        Job::Selberg { limit, threshold } => selberg(tables.expect("sieve needed"), *limit, *threshold),
        Job::Norms { p, alpha, m_list, truncation } => norms(tables.expect("sieve needed"), *p, *alpha, m_list, *truncation),
        Job::Fprime { kind, m, n_start, n_end } => fprime(tables.expect("sieve needed"), *kind, *m, *n_start, *n_end),
        Job::Beurling { s, coeffs, truncation } => beurling(*s, coeffs, *truncation),
        Job::SeriesCheck { identity, k, order, a, b } => series_check(*identity, *k, *order, *a, *b),
        Job::Riesz { a, b, alpha, k_max } => riesz(*a, *b, *alpha, *k_max),
        Job::Span { a, k_max, order, alpha } => span(*a, *k_max, *order, *alpha),
    }?;
    write_report(cfg, &report)?;
    Ok(if report.passed { EXIT_OK } else { EXIT_FAILED })
}

fn cache_path(dir: &Path, limit: u64) -> PathBuf {
    dir.join(format!("sieve-{limit}.ntco"))
}

fn load_sieve(cfg: &RunConfig) -> Result<SieveTables, RunError> {
    let Some(dir) = &cfg.cache_dir else {
        return Ok(SieveTables::build(cfg.sieve_limit)?);
    };
    let path = cache_path(dir, cfg.sieve_limit);
    if path.exists() {
        log::info!("loading sieve from {}", path.display());
        return Ok(ntcore::cache::load(&path)?);
    }
    let tables = SieveTables::build(cfg.sieve_limit)?;
    std::fs::create_dir_all(dir)?;
    ntcore::cache::save(&tables, &path)?;
    log::info!("cached sieve at {}", path.display());
    Ok(tables)
}

fn write_report(cfg: &RunConfig, report: &Report) -> Result<(), RunError> {
    let bytes = match cfg.output.format {
        Format::Csv => report.csv.clone(),
        Format::Json => {
            let doc = json!({ "config": cfg, "result": report.json });
            let mut v = serde_json::to_vec_pretty(&doc).map_err(Error::from)?;
            v.push(b'\n');
            v
        }
    };
    match &cfg.output.path {
        None => std::io::stdout().lock().write_all(&bytes)?,
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(&bytes)?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| e.error)?;
            log::info!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn sieve(t: &SieveTables) -> Result<Report, RunError> {
    let limit = t.limit();
    let mut csv = b"n,mu,mertens,phi\n".to_vec();
    for n in 1..=limit {
        writeln!(csv, "{n},{},{},{}", t.mu(n), t.mertens(n), t.phi(n))?;
    }
    let floor_sum: i64 = (1..=limit).map(|k| t.mu(k) as i64 * (limit / k) as i64).sum();
    let passed = floor_sum == 1;
    if !passed {
        log::error!("Σ μ(k)⌊n/k⌋ = {floor_sum} at n = {limit}");
    }
    let json = json!({
        "limit": limit,
        "mertens": t.mertens(limit),
        "primes": t.primes().len(),
        "floor_identity_at_limit": floor_sum,
    });
    Ok(Report { csv, json, passed })
}

fn scan6(cfg: &RunConfig, t: &SieveTables) -> Result<Option<Report>, RunError> {
    let Job::Scan6 { s, omega, n_cap, m_start, m_end, chunk_m, resume, max_chunks } = cfg.job.clone() else {
        unreachable!()
    };
    let params = ScanParams { m_start, m_end, ..ScanParams::full(s, omega, n_cap) };
    let options = ScanOptions {
        threads: cfg.threads,
        chunk_m,
        checkpoint: cfg.checkpoint_path.clone(),
        resume,
        max_chunks,
    };
    let report = condition6_scan(&params, t, &options)?;
    if !report.complete {
        log::warn!(
            "scan stopped after {} checkpoints; rerun with --resume to continue",
            report.checkpoints.len()
        );
        return Ok(None);
    }
    log::info!(
        "{} pairs, {} violations, max ratio {} at {:?}",
        report.pairs,
        report.violations.len(),
        report.max_ratio,
        report.argmax
    );
    let mut csv = Vec::new();
    report.write_per_m_csv(&mut csv)?;
    let json: Value = serde_json::from_str(&report.to_json()?).map_err(Error::from)?;
    Ok(Some(Report { csv, json, passed: report.violations.is_empty() }))
}

fn selberg(t: &SieveTables, limit: u64, threshold: f64) -> Result<Report, RunError> {
    let scan = selberg_scan(t, limit, threshold)?;
    let mut csv = b"m,scaled_t\n".to_vec();
    let mut rows = Vec::new();
    for &m in &scan.points {
        let v = mobius_harmonic_prefix(t, m)?.scaled_t();
        writeln!(csv, "{m},{v}")?;
        rows.push(json!({ "m": m, "scaled_t": v }));
    }
    let json = json!({ "points": rows, "exact_adjudications": scan.exact_adjudications });
    Ok(Report { csv, json, passed: true })
}

fn norms(t: &SieveTables, p: f64, alpha: f64, m_list: &[u64], truncation: Option<u64>) -> Result<Report, RunError> {
    let w = WeightParams::new(p, alpha)?;
    let trend = fm_norm_trend(m_list, &w, t, truncation)?;
    let mut csv = Vec::new();
    trend.write_csv(&mut csv)?;
    let json = serde_json::to_value(&trend).map_err(Error::from)?;
    Ok(Report { csv, json, passed: true })
}

fn fprime(t: &SieveTables, kind: WindowSel, m: u64, n_start: u64, n_end: u64) -> Result<Report, RunError> {
    let kind = match kind {
        WindowSel::F => WindowKind::F,
        WindowSel::Fprime => WindowKind::FPrime,
        WindowSel::St => WindowKind::St,
    };
    let w = SequenceWindow::build_chunked(kind, m, n_start..=n_end, 4096, t)?;
    let mut csv = Vec::new();
    w.write_csv(&mut csv)?;
    let bound = 2.0 * m as f64;
    let exceed = match kind {
        WindowKind::F => w.values.iter().position(|v| v.to_f64().map_or(true, |x| x.abs() >= bound)),
        _ => None,
    };
    if let Some(i) = exceed {
        log::error!("|F_{m}({})| ≥ 2m", n_start + i as u64);
    }
    let json = json!({
        "kind": kind.label(),
        "m": m,
        "n_start": w.n_start,
        "n_end": w.n_end,
        "values": w.values.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    Ok(Report { csv, json, passed: exceed.is_none() })
}

fn beurling(s: Complex64, coeffs: &[zerolab::Rational], truncation: u64) -> Result<Report, RunError> {
    let combo = ExactCombo::make_admissible(coeffs.to_vec())?.to_f64();
    let lhs = beurling_lhs(&combo, s, truncation)?;
    let rhs = beurling_rhs(&combo, s)?;
    let diff = (lhs.value - rhs.value).norm();
    let allowed = lhs.error_bound() + rhs.error_bound();
    let passed = diff <= allowed;
    if !passed {
        log::error!("|lhs − rhs| = {diff:e} exceeds the bound {allowed:e}");
    }
    let mut csv = b"side,re,im,tail_bound,rounding_bound\n".to_vec();
    for (name, v) in [("lhs", &lhs), ("rhs", &rhs)] {
        writeln!(csv, "{name},{},{},{:e},{:e}", v.value.re, v.value.im, v.tail_bound, v.rounding_bound)?;
    }
    let side = |v: &BeurlingValue| {
        json!({ "re": v.value.re, "im": v.value.im, "tail_bound": v.tail_bound, "rounding_bound": v.rounding_bound })
    };
    let json = json!({
        "c": combo.coeffs(),
        "lhs": side(&lhs),
        "rhs": side(&rhs),
        "difference": diff,
        "allowed": allowed,
        "passed": passed,
    });
    Ok(Report { csv, json, passed })
}

fn series_check(identity: Identity, k: usize, order: usize, a: f64, b: f64) -> Result<Report, RunError> {
    let (computed, expected): (Vec<f64>, Vec<f64>) = match identity {
        Identity::A07 => {
            let out = apply_t_a(&hk_series::<f64>(k, order)?, &1.0)?;
            let r = (1..=out.coeffs().len()).map(|n| (n % k) as f64).collect();
            (out.coeffs().to_vec(), r)
        }
        Identity::A06 => {
            let f = hk_series::<f64>(k, order)?.try_mul(&binomial_series(1.0 - a, order))?;
            let out = apply_t_ab(&f, &a, &1.0)?;
            let r = (1..=out.coeffs().len()).map(|n| (n % k) as f64).collect();
            (out.coeffs().to_vec(), r)
        }
        Identity::A08 => {
            let f = binomial_series(b - a, order).scale(&(-1.0 / b));
            let out = apply_t_ab(&f, &a, &b)?;
            let n = out.coeffs().len();
            (out.coeffs().to_vec(), vec![1.0; n])
        }
    };
    let mut csv = b"n,computed,expected,abs_error\n".to_vec();
    let mut max_err = 0.0f64;
    for (i, (c, e)) in computed.iter().zip(&expected).enumerate() {
        let err = (c - e).abs();
        max_err = if err.is_nan() { f64::NAN } else { max_err.max(err) };
        writeln!(csv, "{},{c},{e},{err:e}", i + 1)?;
    }
    let passed = max_err <= SERIES_TOLERANCE;
    if !passed {
        log::error!("max coefficient error {max_err:e} exceeds {SERIES_TOLERANCE:e}");
    }
    let json = json!({
        "identity": format!("{identity:?}"),
        "max_abs_error": max_err,
        "tolerance": SERIES_TOLERANCE,
        "passed": passed,
    });
    Ok(Report { csv, json, passed })
}

fn riesz(a: f64, b: f64, alpha: f64, k_max: usize) -> Result<Report, RunError> {
    let params = OperatorParams::new(a, b, alpha)?;
    let d = g_system_diagnostics(&params, k_max)?;
    let passed = d.eig_min > 0.0
        && d.eig_max.is_finite()
        && d.eigen.min_residual <= EIGEN_TOLERANCE
        && d.eigen.max_residual <= EIGEN_TOLERANCE;
    if !passed {
        log::error!("Gram extremes [{}, {}] do not bound a Riesz system", d.eig_min, d.eig_max);
    }
    let mut csv = Vec::new();
    d.gram.write_upper_csv(&mut csv)?;
    let json = json!({
        "constants": d.constants,
        "bijective": params.bijective(),
        "eig_min": d.eig_min,
        "eig_max": d.eig_max,
        "eigen": d.eigen,
        "passed": passed,
    });
    Ok(Report { csv, json, passed })
}

fn span(a: f64, k_max: usize, order: usize, alpha: f64) -> Result<Report, RunError> {
    let (target, family) = hk_span_family(a, k_max, order)?;
    let mut csv = b"K,distance,condition\n".to_vec();
    let mut rows = Vec::new();
    let mut last = f64::INFINITY;
    let mut passed = true;
    for big_k in 2..=k_max {
        let (distance, condition) = match span_projection(&target, &family[..big_k - 1], alpha) {
            Ok(p) => (p.distance, p.condition_estimate),
            Err(Error::IllConditioned { condition }) => (f64::NAN, condition),
            Err(e) => return Err(e.into()),
        };
        if distance > last * (1.0 + 1e-9) + 1e-12 {
            log::error!("distance grew from {last} to {distance} at K = {big_k}");
            passed = false;
        }
        if distance.is_finite() {
            last = distance;
        }
        writeln!(csv, "{big_k},{distance},{condition:e}")?;
        rows.push(json!({ "K": big_k, "distance": distance, "condition": condition }));
    }
    Ok(Report { csv, json: json!({ "rows": rows, "passed": passed }), passed })
}
