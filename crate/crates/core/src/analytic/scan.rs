use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::condition6::{
    adjudicate, check_params, decision_band, m_term, n_term, ratio_term, rhs_from_terms, OmegaSpec,
};
use crate::approx::GWalk;
use crate::error::{Error, Result};
use crate::ntcore::{MobiusPrefix, SieveTables};

/// Cap on the number of `m` values per chunk.
pub const DEFAULT_CHUNK_M: u64 = 2048;

/// What to scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanParams {
    pub s: f64,
    pub omega: OmegaSpec,
    pub m_start: u64,
    pub m_end: u64,
    pub n_cap: u64,
}

impl ScanParams {
    /// Every `m ≥ 2` whose window `(m, min(m^{1/s}, n_cap)]` is nonempty.
    pub fn full(s: f64, omega: OmegaSpec, n_cap: u64) -> Self {
        Self {
            s,
            omega,
            m_start: 2,
            m_end: n_cap.saturating_sub(1).max(1),
            n_cap,
        }
    }

    /// Last `n` of the window for `m`: `min(⌊m^{1/s}⌋, n_cap)`.
    pub fn window_end(&self, m: u64) -> u64 {
        let p = (m as f64).powf(1.0 / self.s);
        let top = if p >= self.n_cap as f64 { self.n_cap } else { p.floor() as u64 };
        top.min(self.n_cap)
    }

    pub fn region_label(&self) -> String {
        format!(
            "Omega_{} = {{Re(z) > {}}}: condition verified for scanned range only",
            self.s, self.s
        )
    }
}

/// How to run it.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanOptions {
    pub threads: usize,
    pub chunk_m: u64,
    pub checkpoint: Option<PathBuf>,
    /// Continue from `checkpoint` if it exists.
    pub resume: bool,
    /// Stop after this many chunks, leaving a checkpoint (used to simulate interruption).
    pub max_chunks: Option<usize>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            threads: 1,
            chunk_m: DEFAULT_CHUNK_M,
            checkpoint: None,
            resume: false,
            max_chunks: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub m: u64,
    pub n: u64,
    pub lhs: u64,
    pub rhs: f64,
}

/// Largest `|G(n, m)|/RHS` over the window of one `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerM {
    pub m: u64,
    pub n_hi: u64,
    pub t: f64,
    pub max_ratio: f64,
    /// Zero when `G` vanishes on the whole window.
    pub argmax_n: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
struct Partial {
    per_m: Vec<PerM>,
    violations: Vec<Violation>,
    pairs: u64,
    adjudications: u64,
    checkpoints: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Checkpoint {
    params: ScanParams,
    next_m: u64,
    partial_report_digest: String,
    partial: Partial,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub params: ScanParams,
    pub region_label: String,
    pub complete: bool,
    pub violations: Vec<Violation>,
    pub max_ratio: f64,
    /// `(m, n)` attaining `max_ratio`, the smallest `m` on ties.
    pub argmax: Option<(u64, u64)>,
    pub pairs: u64,
    pub adjudications: u64,
    /// `next_m` after each chunk, recorded when checkpointing.
    pub checkpoints: Vec<u64>,
    #[serde(skip)]
    pub per_m: Vec<PerM>,
}

impl ScanReport {
    /// `m,n_hi,t,max_ratio,argmax_n`.
    pub fn write_per_m_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "m,n_hi,t,max_ratio,argmax_n")?;
        for r in &self.per_m {
            writeln!(out, "{},{},{},{},{}", r.m, r.n_hi, r.t, r.max_ratio, r.argmax_n)?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn digest(partial: &Partial) -> Result<String> {
    let bytes = serde_json::to_vec(partial)?;
    Ok(Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect())
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn load_checkpoint(path: &Path, params: &ScanParams) -> Result<(u64, Partial)> {
    let corrupt = |reason: String| Error::CorruptCheckpoint {
        path: path.to_path_buf(),
        reason,
    };
    let text = fs::read_to_string(path)?;
    let cp: Checkpoint = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
    if &cp.params != params {
        return Err(corrupt("scan parameters differ from the checkpoint".into()));
    }
    if digest(&cp.partial)? != cp.partial_report_digest {
        return Err(corrupt("digest mismatch".into()));
    }
    let expected_next = cp.partial.checkpoints.last().copied().unwrap_or(params.m_start);
    if cp.next_m != expected_next || cp.next_m < params.m_start || cp.next_m > params.m_end + 1 {
        return Err(corrupt(format!("next_m = {} is inconsistent", cp.next_m)));
    }
    Ok((cp.next_m, cp.partial))
}

fn save_checkpoint(path: &Path, params: &ScanParams, next_m: u64, partial: &Partial) -> Result<()> {
    let cp = Checkpoint {
        params: params.clone(),
        next_m,
        partial_report_digest: digest(partial)?,
        partial: partial.clone(),
    };
    write_atomic(path, &serde_json::to_vec(&cp)?)
}

#[derive(Debug, Default)]
struct ChunkResult {
    per_m: Vec<PerM>,
    violations: Vec<Violation>,
    pairs: u64,
    adjudications: u64,
}

struct Context<'a> {
    params: &'a ScanParams,
    tables: &'a SieveTables,
    /// `t` and its error bound, indexed by `m − m_start`.
    t: Vec<(f64, f64)>,
}

/// Chunk boundaries: short chunks while windows are short, then `chunk_m`.
fn chunks(from: u64, to: u64, chunk_m: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut lo = from;
    while lo <= to {
        let len = chunk_m.min(lo).max(1);
        let hi = (lo + len - 1).min(to);
        out.push((lo, hi));
        lo = hi + 1;
    }
    out
}

fn scan_chunk(ctx: &Context, lo: u64, hi: u64) -> Result<ChunkResult> {
    let p = ctx.params;
    let s = p.s;
    let len = (hi - lo + 1) as usize;
    let mu: Vec<i32> = (lo..=hi).map(|m| ctx.tables.mu(m) as i32).collect();
    let n_hi: Vec<u64> = (lo..=hi).map(|m| p.window_end(m)).collect();
    let tv: Vec<(f64, f64)> = (lo..=hi)
        .map(|m| ctx.t[(m - p.m_start) as usize])
        .collect();
    let w: Vec<f64> = tv.iter().map(|&(t, _)| p.omega.eval(t)).collect();
    let band: Vec<f64> = tv
        .iter()
        .map(|&(t, e)| decision_band(&p.omega, t, e))
        .collect();
    let mt: Vec<f64> = (lo..=hi).map(|m| m_term(m, s)).collect();
    let mut best = vec![0.0f64; len];
    let mut arg = vec![0u64; len];
    // `min(best, 1)`, scaled down so the cheap lower bound below stays below the true RHS.
    let mut thr = vec![0.0f64; len];
    const LB_SHRINK: f64 = 1.0 - 1e-12;

    let mut out = ChunkResult::default();
    let n_end = n_hi.iter().copied().max().unwrap_or(0);
    if n_end <= lo {
        return Ok(out);
    }
    let mut base = GWalk::starting_at(lo + 1, lo - 1, ctx.tables)?;
    let mut first = 0usize;
    for n in lo + 1..=n_end {
        if n > lo + 1 {
            base.advance()?;
        }
        while first < len && n_hi[first] < n {
            first += 1;
        }
        let last = ((n - 1).min(hi) - lo) as usize;
        let nt = n_term(n, s);
        let n32 = n as u32;
        let mut g = base.value();
        for i in 0..first.min(last + 1) {
            g += (mu[i] * (n32 / (lo as u32 + i as u32)) as i32) as i64;
        }
        for i in first..=last {
            g += (mu[i] * (n32 / (lo as u32 + i as u32)) as i32) as i64;
            let lhs = g.unsigned_abs() as f64;
            if lhs <= thr[i] * (mt[i] + nt) * w[i] * LB_SHRINK {
                continue;
            }
            let m = lo + i as u64;
            let rhs = rhs_from_terms(mt[i], nt, ratio_term(m, n, s), w[i]);
            let ratio = lhs / rhs;
            if ratio > best[i] {
                best[i] = ratio;
                arg[i] = n;
                thr[i] = best[i].min(1.0);
            }
            if lhs > rhs * (1.0 - band[i]) {
                let pass = if lhs > rhs * (1.0 + band[i]) {
                    false
                } else {
                    out.adjudications += 1;
                    adjudicate(m, n, g.unsigned_abs(), s, &p.omega, ctx.tables)?
                };
                if !pass {
                    out.violations.push(Violation {
                        m,
                        n,
                        lhs: g.unsigned_abs(),
                        rhs,
                    });
                }
            }
        }
    }
    for i in 0..len {
        let m = lo + i as u64;
        if n_hi[i] > m {
            out.pairs += n_hi[i] - m;
            out.per_m.push(PerM {
                m,
                n_hi: n_hi[i],
                t: tv[i].0,
                max_ratio: best[i],
                argmax_n: arg[i],
            });
        }
    }
    out.violations.sort_by_key(|v| (v.m, v.n));
    Ok(out)
}

/// Scans `|G(n, m)|` against the condition-(6) bound for every `m` in range and
/// `n ∈ (m, min(m^{1/s}, n_cap)]`.
///
/// `G` is advanced in `n` for the chunk's base `m_lo − 1` and extended across the
/// chunk's `m` values, so each pair costs one division. Chunks are merged in
/// ascending `m`, making the report independent of thread count and chunk size.
pub fn condition6_scan(
    params: &ScanParams,
    tables: &SieveTables,
    options: &ScanOptions,
) -> Result<ScanReport> {
    check_params(params.s)?;
    if options.threads == 0 {
        return Err(Error::Parameter("threads must be ≥ 1".into()));
    }
    if params.m_start < 2 {
        return Err(Error::Parameter("m_start must be ≥ 2".into()));
    }
    if params.n_cap > u32::MAX as u64 {
        return Err(Error::Parameter("n_cap must fit in 32 bits".into()));
    }
    tables.check_index(params.n_cap.max(params.m_end.min(params.n_cap)))?;
    if params.m_end < params.m_start {
        return Ok(assemble(params, Partial::default(), true));
    }
    let m_end = params.m_end.min(params.n_cap);
    tables.check_index(m_end)?;

    let (mut next_m, mut partial) = match (&options.checkpoint, options.resume) {
        (Some(path), true) if path.exists() => load_checkpoint(path, params)?,
        _ => (params.m_start, Partial::default()),
    };

    let mut t = Vec::with_capacity((m_end + 1 - params.m_start) as usize);
    let mut prefix = MobiusPrefix::first();
    for m in 2..=m_end {
        prefix.extend(tables)?;
        if m >= params.m_start {
            t.push((prefix.scaled_t(), prefix.scaled_t_error()));
        }
    }
    let ctx = Context { params, tables, t };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.threads)
        .build()
        .map_err(|e| Error::Parameter(e.to_string()))?;
    let all = chunks(next_m, m_end, options.chunk_m.max(1));
    let mut done = 0usize;
    let mut complete = true;
    for wave in all.chunks(options.threads) {
        if let Some(limit) = options.max_chunks {
            if done >= limit {
                complete = false;
                break;
            }
        }
        let results: Vec<ChunkResult> = pool.install(|| {
            wave.par_iter()
                .map(|&(lo, hi)| scan_chunk(&ctx, lo, hi))
                .collect::<Result<Vec<_>>>()
        })?;
        for r in results {
            partial.per_m.extend(r.per_m);
            partial.violations.extend(r.violations);
            partial.pairs += r.pairs;
            partial.adjudications += r.adjudications;
        }
        done += wave.len();
        next_m = wave.last().unwrap().1 + 1;
        if let Some(path) = &options.checkpoint {
            partial.checkpoints.extend(wave.iter().map(|&(_, hi)| hi + 1));
            save_checkpoint(path, params, next_m, &partial)?;
        }
    }
    if next_m <= m_end {
        complete = false;
    }
    Ok(assemble(params, partial, complete))
}

fn assemble(params: &ScanParams, partial: Partial, complete: bool) -> ScanReport {
    let mut max_ratio = 0.0;
    let mut argmax = None;
    for r in &partial.per_m {
        if r.max_ratio > max_ratio {
            max_ratio = r.max_ratio;
            argmax = Some((r.m, r.argmax_n));
        }
    }
    ScanReport {
        params: params.clone(),
        region_label: params.region_label(),
        complete,
        violations: partial.violations,
        max_ratio,
        argmax,
        pairs: partial.pairs,
        adjudications: partial.adjudications,
        checkpoints: partial.checkpoints,
        per_m: partial.per_m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::condition6_check;
    use crate::ntcore::mobius_harmonic_prefix;

    fn affine(c0: f64, c1: f64) -> OmegaSpec {
        OmegaSpec::affine(c0, c1).unwrap()
    }

    #[test]
    fn chunk_layout() {
        assert_eq!(chunks(2, 9, 4), vec![(2, 3), (4, 7), (8, 9)]);
        assert!(chunks(5, 4, 4).is_empty());
    }

    #[test]
    fn empty_range() {
        let t = SieveTables::build(100).unwrap();
        let mut p = ScanParams::full(0.5, affine(1.0, 1.0), 100);
        p.m_start = 50;
        p.m_end = 40;
        let r = condition6_scan(&p, &t, &ScanOptions::default()).unwrap();
        assert!(r.violations.is_empty() && r.per_m.is_empty());
        assert_eq!(r.max_ratio, 0.0);
    }

    #[test]
    fn scan_matches_pointwise_checks() {
        let t = SieveTables::build(3000).unwrap();
        // A deliberately weak omega so that violations occur.
        for (omega, s) in [(affine(0.05, 0.0), 0.5), (affine(1.0, 1.0), 0.5), (affine(0.1, 0.1), 0.6)] {
            let p = ScanParams::full(s, omega, 3000);
            let opts = ScanOptions { chunk_m: 7, ..ScanOptions::default() };
            let r = condition6_scan(&p, &t, &opts).unwrap();
            let mut expected = Vec::new();
            let mut best = 0.0f64;
            let mut prefix = MobiusPrefix::first();
            for m in 2..3000u64 {
                prefix.extend(&t).unwrap();
                for n in m + 1..=p.window_end(m) {
                    let c = condition6_check(m, n, s, &omega, &t, &prefix).unwrap();
                    best = best.max(c.lhs as f64 / c.rhs);
                    if !c.pass {
                        expected.push((m, n));
                    }
                }
            }
            let got: Vec<(u64, u64)> = r.violations.iter().map(|v| (v.m, v.n)).collect();
            assert_eq!(got, expected);
            assert_eq!(r.max_ratio, best);
            assert_eq!(r.violations.is_empty(), r.max_ratio <= 1.0);
        }
        let _ = mobius_harmonic_prefix(&t, 2).unwrap();
    }

    #[test]
    fn invariant_under_threads_and_chunks() {
        let t = SieveTables::build(20_000).unwrap();
        let p = ScanParams::full(0.5, affine(1.0, 1.0), 20_000);
        let base = condition6_scan(&p, &t, &ScanOptions::default()).unwrap();
        let mut csv = Vec::new();
        base.write_per_m_csv(&mut csv).unwrap();
        for (threads, chunk_m) in [(3, 100), (2, 1), (4, 5000)] {
            let opts = ScanOptions { threads, chunk_m, ..ScanOptions::default() };
            let r = condition6_scan(&p, &t, &opts).unwrap();
            let mut other = Vec::new();
            r.write_per_m_csv(&mut other).unwrap();
            assert_eq!(csv, other);
            assert_eq!(r.max_ratio, base.max_ratio);
            assert_eq!(r.violations, base.violations);
        }
        assert!(base.violations.is_empty());
        assert_eq!(base.per_m.len(), 19_998);
    }

    #[test]
    fn resume_reproduces_full_run() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.ckpt");
        let t = SieveTables::build(5000).unwrap();
        let p = ScanParams::full(0.5, affine(0.3, 0.0), 5000);
        let full = condition6_scan(&p, &t, &ScanOptions { chunk_m: 64, ..ScanOptions::default() }).unwrap();
        let opts = ScanOptions {
            chunk_m: 64,
            checkpoint: Some(path.clone()),
            resume: true,
            max_chunks: Some(5),
            ..ScanOptions::default()
        };
        let part = condition6_scan(&p, &t, &opts).unwrap();
        assert!(!part.complete);
        let rest = condition6_scan(&p, &t, &ScanOptions { max_chunks: None, ..opts.clone() }).unwrap();
        assert!(rest.complete);
        assert_eq!(rest.per_m, full.per_m);
        assert_eq!(rest.violations, full.violations);
        assert!(!full.violations.is_empty());
        assert!(rest.checkpoints.windows(2).all(|w| w[0] < w[1]));

        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replacen("\"pairs\":", "\"pairs\":1", 1)).unwrap();
        assert!(matches!(
            condition6_scan(&p, &t, &opts),
            Err(Error::CorruptCheckpoint { .. })
        ));
        fs::write(&path, "{").unwrap();
        assert!(matches!(
            condition6_scan(&p, &t, &opts),
            Err(Error::CorruptCheckpoint { .. })
        ));
    }
}
