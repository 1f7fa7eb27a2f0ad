use super::SieveTables;
use crate::error::{Error, Result};

/// The primes whose product still fits in `u64` (2·3·…·47 = 614889782588491410).
pub const PRIMORIAL_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// `m_t`, the product of the first `t` primes; `primorial(0) = 1`.
pub fn primorial(t: usize) -> Result<u64> {
    if t > PRIMORIAL_PRIMES.len() {
        return Err(Error::Overflow(format!("primorial({t}) exceeds u64")));
    }
    PRIMORIAL_PRIMES[..t]
        .iter()
        .try_fold(1u64, |acc, &p| acc.checked_mul(p))
        .ok_or_else(|| Error::Overflow(format!("primorial({t}) exceeds u64")))
}

/// `Some(t)` when `m = m_t` for some `t ≥ 1`.
pub fn primorial_index(m: u64) -> Option<usize> {
    let mut acc = 1u64;
    for (i, &p) in PRIMORIAL_PRIMES.iter().enumerate() {
        acc = acc.checked_mul(p)?;
        if acc == m {
            return Some(i + 1);
        }
        if acc > m {
            return None;
        }
    }
    None
}

/// `p_t`, the t-th prime (1-based), for `1 ≤ t ≤ 15`.
pub fn nth_primorial_prime(t: usize) -> Result<u64> {
    if t == 0 || t > PRIMORIAL_PRIMES.len() {
        return Err(Error::Parameter(format!("prime index {t} outside 1..=15")));
    }
    Ok(PRIMORIAL_PRIMES[t - 1])
}

/// `#{1 ≤ k ≤ n : gcd(k, m) = 1}` by inclusion–exclusion over the squarefree
/// divisors of `m`; O(2^ω(m)).
pub fn coprime_count(n: u64, m: u64, tables: &SieveTables) -> Result<u64> {
    if m == 0 {
        return Err(Error::Parameter("coprime_count needs m ≥ 1".into()));
    }
    let total: i128 = tables
        .squarefree_divisors(m)
        .into_iter()
        .map(|(d, mu)| mu as i128 * (n / d) as i128)
        .sum();
    Ok(total as u64)
}

/// `(t, M(⌊n/t⌋))` for `t = 1..=⌊n/m⌋`; each distinct quotient is looked up once.
pub fn mertens_at_quotients(tables: &SieveTables, n: u64, m: u64) -> Result<Vec<(u64, i64)>> {
    if m == 0 {
        return Err(Error::Parameter("m must be at least 1".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    tables.check_index(n)?;
    let tmax = n / m;
    let mut out = Vec::with_capacity(tmax as usize);
    let mut t = 1;
    while t <= tmax {
        let q = n / t;
        let block_end = (n / q).min(tmax);
        let value = tables.mertens(q);
        for tt in t..=block_end {
            out.push((tt, value));
        }
        t = block_end + 1;
    }
    Ok(out)
}
