use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::norms::{envelope_tail, Envelope, NormResult, Tail, WeightParams};
use crate::error::{Error, Result};
use crate::ntcore::{mobius_harmonic_prefix, SieveTables};
use crate::scalar::CompensatedSum;

const SEGMENT: usize = 1 << 15;

/// `max(10^6, m²)`.
pub fn default_truncation(m: u64) -> u64 {
    (m * m).max(1_000_000)
}

/// Calls `visit(n, F_m(n))` for `n = 1..=n_max` in ascending order.
///
/// `G(n, m)` is advanced segment by segment: each squarefree `k ≤ m` adds `μ(k)`
/// at its multiples, so only `μ` up to `m` is read.
pub fn fm_values(
    m: u64,
    n_max: u64,
    tables: &SieveTables,
    mut visit: impl FnMut(u64, f64),
) -> Result<()> {
    if m == 0 {
        return Err(Error::Parameter("m must be ≥ 1".into()));
    }
    let harmonic = mobius_harmonic_prefix(tables, m)?.value();
    let ks: Vec<(u64, i32)> = (1..=m)
        .filter_map(|k| match tables.mu(k) {
            0 => None,
            mu => Some((k, mu as i32)),
        })
        .collect();
    let mut delta = vec![0i32; SEGMENT];
    let mut g = 0i64;
    let mut lo = 1u64;
    while lo <= n_max {
        let hi = (lo + SEGMENT as u64 - 1).min(n_max);
        let len = (hi - lo + 1) as usize;
        delta[..len].fill(0);
        for &(k, mu) in &ks {
            let mut j = lo.div_ceil(k) * k;
            while j <= hi {
                delta[(j - lo) as usize] += mu;
                j += k;
            }
        }
        for (i, d) in delta[..len].iter().enumerate() {
            let n = lo + i as u64;
            g += *d as i64;
            let f = if n < m {
                0.0
            } else {
                (1 - g) as f64 + (m * (n / m)) as f64 * harmonic
            };
            visit(n, f);
        }
        lo = hi + 1;
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct FmTrendRow {
    pub m: u64,
    pub norm: NormResult<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FmTrend {
    pub weights: WeightParams<f64>,
    pub rows: Vec<FmTrendRow>,
    /// Largest truncated norm over the rows.
    pub max: f64,
    /// Last row's truncated norm over the first row's.
    pub ratio_last_first: f64,
}

impl FmTrend {
    /// `m,truncated_value,tail_bound,truncation_index`; an unbounded tail is written as `inf`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "m,truncated_value,tail_bound,truncation_index")?;
        for row in &self.rows {
            let tail = match row.norm.tail {
                Tail::Bounded(t) => format!("{t:e}"),
                _ => "inf".to_string(),
            };
            writeln!(
                out,
                "{},{:e},{},{}",
                row.m, row.norm.truncated_value, tail, row.norm.truncation_index
            )?;
        }
        Ok(())
    }
}

/// `‖F_m‖_{p,α}` for each `m`, with the tail bounded through `|F_m(n)| < 2m`.
///
/// `truncation` defaults to [`default_truncation`] per `m`.
pub fn fm_norm_trend(
    m_list: &[u64],
    w: &WeightParams<f64>,
    tables: &SieveTables,
    truncation: Option<u64>,
) -> Result<FmTrend> {
    if m_list.is_empty() {
        return Err(Error::Parameter("m_list is empty".into()));
    }
    let rows = m_list
        .par_iter()
        .map(|&m| {
            let n_max = truncation.unwrap_or_else(|| default_truncation(m));
            let mut acc = CompensatedSum::new();
            let alpha = w.alpha;
            fm_values(m, n_max, tables, |n, f| {
                if f != 0.0 {
                    acc.add(w.pow_p(f) * (n as f64).powf(alpha));
                }
            })?;
            let env = Envelope {
                a: 2.0 * m as f64,
                b: 0.0,
            };
            Ok(FmTrendRow {
                m,
                norm: NormResult {
                    truncated_value: w.root_p(acc.value()),
                    tail: envelope_tail(&env, w, n_max),
                    truncation_index: n_max,
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max = rows
        .iter()
        .map(|r| r.norm.truncated_value)
        .fold(f64::NEG_INFINITY, f64::max);
    let ratio_last_first =
        rows.last().unwrap().norm.truncated_value / rows[0].norm.truncated_value;
    Ok(FmTrend {
        weights: *w,
        rows,
        max,
        ratio_last_first,
    })
}
