//! On-disk sieve cache.
//!
//! Layout (little-endian): `b"NTCO"`, version `u32`, limit `u64`, then μ packed
//! four entries per byte (2 bits each: `00` = 0, `01` = 1, `10` = -1), the
//! Mertens table as `i64`, and φ as `u64`. Arrays cover `1..=limit`.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::SieveTables;
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"NTCO";
pub const VERSION: u32 = 1;
const SPOT_CHECKS: usize = 64;

fn encode_mu(x: i8) -> u8 {
    match x {
        0 => 0b00,
        1 => 0b01,
        _ => 0b10,
    }
}

fn decode_mu(bits: u8) -> Option<i8> {
    match bits {
        0b00 => Some(0),
        0b01 => Some(1),
        0b10 => Some(-1),
        _ => None,
    }
}

pub fn write_cache<W: Write>(tables: &SieveTables, out: W) -> Result<()> {
    let mut w = BufWriter::new(out);
    let n = tables.limit() as usize;
    w.write_all(&MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&tables.limit().to_le_bytes())?;
    let mu = &tables.mu_table()[1..];
    for chunk in mu.chunks(4) {
        let mut byte = 0u8;
        for (i, &x) in chunk.iter().enumerate() {
            byte |= encode_mu(x) << (2 * i);
        }
        w.write_all(&[byte])?;
    }
    for &m in &tables.mertens_table()[1..=n] {
        w.write_all(&(m as i64).to_le_bytes())?;
    }
    for &p in &tables.phi_table()[1..=n] {
        w.write_all(&(p as u64).to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn save(tables: &SieveTables, path: &Path) -> Result<()> {
    let tmp = path.with_extension("tmp");
    write_cache(tables, File::create(&tmp)?)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn load(path: &Path) -> Result<SieveTables> {
    let corrupt = |reason: String| Error::CorruptCache {
        path: path.to_path_buf(),
        reason,
    };
    let mut r = BufReader::new(File::open(path)?);
    let mut header = [0u8; 16];
    r.read_exact(&mut header)
        .map_err(|_| corrupt("truncated header".into()))?;
    if header[..4] != MAGIC {
        return Err(corrupt("bad magic".into()));
    }
    let version = u32::from_le_bytes(header[4..8].try_into().unwrap());
    if version != VERSION {
        return Err(corrupt(format!("unsupported version {version}")));
    }
    let limit = u64::from_le_bytes(header[8..16].try_into().unwrap());
    if limit == 0 || limit >= u32::MAX as u64 {
        return Err(corrupt(format!("implausible limit {limit}")));
    }
    let n = limit as usize;
    let expected = n.div_ceil(4) + 16 * n;
    let mut body = Vec::with_capacity(expected);
    r.read_to_end(&mut body)?;
    if body.len() != expected {
        return Err(corrupt(format!(
            "body is {} bytes, expected {expected}",
            body.len()
        )));
    }
    let (packed, rest) = body.split_at(n.div_ceil(4));
    let (mert_bytes, phi_bytes) = rest.split_at(8 * n);

    let mut mu = Vec::with_capacity(n + 1);
    mu.push(0i8);
    for i in 0..n {
        let bits = (packed[i / 4] >> (2 * (i % 4))) & 0b11;
        mu.push(decode_mu(bits).ok_or_else(|| corrupt(format!("bad mu code at {}", i + 1)))?);
    }
    let mut mertens = Vec::with_capacity(n + 1);
    mertens.push(0i32);
    for (i, c) in mert_bytes.chunks_exact(8).enumerate() {
        let v = i64::from_le_bytes(c.try_into().unwrap());
        let prev = *mertens.last().unwrap() as i64;
        if v != prev + mu[i + 1] as i64 {
            return Err(corrupt(format!("Mertens prefix breaks at {}", i + 1)));
        }
        mertens.push(v as i32);
    }
    let mut phi = Vec::with_capacity(n + 1);
    phi.push(0u32);
    for c in phi_bytes.chunks_exact(8) {
        let v = u64::from_le_bytes(c.try_into().unwrap());
        phi.push(u32::try_from(v).map_err(|_| corrupt("phi overflows".into()))?);
    }

    let tables = SieveTables::from_parts(mu, mertens, phi);
    spot_check(&tables).map_err(corrupt)?;
    Ok(tables)
}

/// Compare 64 pseudo-random entries against trial-division recomputation.
fn spot_check(tables: &SieveTables) -> std::result::Result<(), String> {
    let limit = tables.limit();
    let mut rng = StdRng::seed_from_u64(limit);
    for _ in 0..SPOT_CHECKS {
        let n = rng.gen_range(1..=limit);
        let (mu, phi) = mu_phi_by_trial_division(n);
        if tables.mu(n) != mu || tables.phi(n) != phi {
            return Err(format!("spot check failed at {n}"));
        }
    }
    Ok(())
}

fn mu_phi_by_trial_division(n: u64) -> (i8, u64) {
    let (mut rest, mut mu, mut phi) = (n, 1i8, n);
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            mu = if e > 1 { 0 } else { -mu };
            phi = phi / p * (p - 1);
        }
        p += 1;
    }
    if rest > 1 {
        mu = -mu;
        phi = phi / rest * (rest - 1);
    }
    (mu, phi)
}
