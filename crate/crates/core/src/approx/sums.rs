use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Result;
use crate::ntcore::{lcm_upto, SieveTables};

/// `r_k(n) = k·{n/k} = n mod k`.
#[inline]
pub fn r(k: u64, n: u64) -> u64 {
    debug_assert!(k >= 2, "r_k needs k ≥ 2");
    n % k
}

/// `G(n, m) = Σ_{k≤m} μ(k)⌊n/k⌋`, summed term by term.
///
/// Terms with `k > n` vanish, so only `μ` up to `min(m, n)` is read.
pub fn g_direct(n: u64, m: u64, tables: &SieveTables) -> Result<i64> {
    let top = m.min(n);
    if top == 0 {
        return Ok(0);
    }
    tables.check_index(top)?;
    let mu = &tables.mu_table()[..=top as usize];
    let mut acc = 0i64;
    if n <= u32::MAX as u64 {
        let n32 = n as u32;
        for (k, &x) in mu.iter().enumerate().skip(1) {
            if x != 0 {
                acc += x as i64 * (n32 / k as u32) as i64;
            }
        }
    } else {
        for (k, &x) in mu.iter().enumerate().skip(1) {
            if x != 0 {
                acc += x as i64 * (n / k as u64) as i64;
            }
        }
    }
    Ok(acc)
}

/// `G(n, m) = 1 + Σ_{t=1}^{⌊n/m⌋} (M(m) − M(⌊n/t⌋))`, one lookup per distinct quotient.
pub fn g_mertens(n: u64, m: u64, tables: &SieveTables) -> Result<i64> {
    if m == 0 || n == 0 {
        return Ok(0);
    }
    let tmax = n / m;
    if tmax == 0 {
        return Ok(1);
    }
    tables.check_index(n)?;
    let mm = tables.mertens(m);
    let mut acc = 1i64 + tmax as i64 * mm;
    let mut t = 1;
    while t <= tmax {
        let q = n / t;
        let end = (n / q).min(tmax);
        acc -= (end - t + 1) as i64 * tables.mertens(q);
        t = end + 1;
    }
    Ok(acc)
}

/// `H(n, m) = Σ_{k=2}^m μ(k){n/k}` as an exact rational.
///
/// Accumulated as `Σ μ(k)·(n mod k)·(L/k)` over `L = lcm(1..=m)` and reduced once.
pub fn h_direct(n: u64, m: u64, tables: &SieveTables) -> Result<BigRational> {
    if m < 2 {
        return Ok(BigRational::zero());
    }
    let l = lcm_upto(tables, m)?;
    let mut num = BigInt::zero();
    for k in 2..=m {
        let mu = tables.mu(k);
        let rem = n % k;
        if mu != 0 && rem != 0 {
            let term = (&l / k) * rem;
            if mu > 0 {
                num += term;
            } else {
                num -= term;
            }
        }
    }
    Ok(BigRational::new(num, l))
}

/// `Σ_{k | n, k ≤ m} μ(k)`, from the distinct primes of `n`.
pub fn mobius_divisor_sum_upto(n: u64, m: u64, tables: &SieveTables) -> i64 {
    if m == 0 {
        return 0;
    }
    let mut primes = [0u64; 16];
    let mut r = 0;
    let mut rest = n;
    while rest > 1 {
        let p = tables.spf(rest);
        primes[r] = p;
        r += 1;
        while rest % p == 0 {
            rest /= p;
        }
    }
    signed_divisor_sum(&primes[..r], 1, m)
}

/// `Σ μ(d)` over squarefree `d = base·(product of a subset of primes)` with `d ≤ m`, sign relative to `base`.
fn signed_divisor_sum(primes: &[u64], base: u64, m: u64) -> i64 {
    let mut total = 1;
    for (i, &p) in primes.iter().enumerate() {
        let d = base * p;
        if d > m {
            break;
        }
        total -= signed_divisor_sum(&primes[i + 1..], d, m);
    }
    total
}

/// Walks `n ↦ G(n, m)` for fixed `m` using
/// `G(n+1, m) − G(n, m) = Σ_{k | n+1, k ≤ m} μ(k)`.
#[derive(Debug, Clone)]
pub struct GWalk<'a> {
    tables: &'a SieveTables,
    m: u64,
    n: u64,
    g: i64,
}

impl<'a> GWalk<'a> {
    /// Starts at `G(0, m) = 0`.
    pub fn new(m: u64, tables: &'a SieveTables) -> Self {
        Self { tables, m, n: 0, g: 0 }
    }

    /// Starts at an arbitrary `n` (evaluated via the Mertens form).
    pub fn starting_at(n: u64, m: u64, tables: &'a SieveTables) -> Result<Self> {
        let g = g_mertens(n, m, tables)?;
        Ok(Self { tables, m, n, g })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn value(&self) -> i64 {
        self.g
    }

    pub fn advance(&mut self) -> Result<i64> {
        let next = self.n + 1;
        self.tables.check_index(next)?;
        self.g += mobius_divisor_sum_upto(next, self.m, self.tables);
        self.n = next;
        Ok(self.g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntcore::exact_mobius_harmonic;

    fn tables() -> SieveTables {
        SieveTables::build(20_000).unwrap()
    }

    #[test]
    fn r_examples() {
        assert_eq!(r(3, 5), 2);
        assert_eq!(r(7, 7), 0);
        assert_eq!(r(2, 7), 1);
    }

    #[test]
    fn g_examples() {
        let t = tables();
        for n in 1..200 {
            assert_eq!(g_direct(n, n, &t).unwrap(), 1);
            assert_eq!(g_mertens(n, n, &t).unwrap(), 1);
        }
        assert_eq!(g_direct(7, 3, &t).unwrap(), 2);
        assert_eq!(g_direct(5, 2, &t).unwrap(), 3);
        assert_eq!(g_mertens(7, 3, &t).unwrap(), 2);
        assert_eq!(g_mertens(10, 4, &t).unwrap(), 2);
        assert_eq!(g_direct(10, 4, &t).unwrap(), 2);
        assert_eq!(g_mertens(5, 9, &t).unwrap(), 1);
    }

    #[test]
    fn h_examples() {
        let t = tables();
        assert_eq!(
            h_direct(7, 3, &t).unwrap(),
            BigRational::new((-5).into(), 6.into())
        );
        assert!(h_direct(7, 1, &t).unwrap().is_zero());
        let s3 = exact_mobius_harmonic(&t, 3).unwrap();
        let lhs = h_direct(7, 3, &t).unwrap() + BigRational::from_integer(g_direct(7, 3, &t).unwrap().into());
        assert_eq!(lhs, BigRational::new(7.into(), 6.into()));
        assert_eq!(lhs, s3 * BigRational::from_integer(7.into()));
    }

    #[test]
    fn walk_tracks_direct() {
        let t = tables();
        for m in [1u64, 2, 3, 10, 97, 360] {
            let mut w = GWalk::new(m, &t);
            for _ in 0..3000 {
                let g = w.advance().unwrap();
                assert_eq!(g, g_direct(w.n(), m, &t).unwrap(), "m={m} n={}", w.n());
            }
        }
        let mut w = GWalk::starting_at(5000, 77, &t).unwrap();
        w.advance().unwrap();
        assert_eq!(w.value(), g_direct(5001, 77, &t).unwrap());
    }

    #[test]
    fn divisor_sum_is_delta_when_unrestricted() {
        let t = tables();
        assert_eq!(mobius_divisor_sum_upto(1, 1, &t), 1);
        for d in 2..3000 {
            assert_eq!(mobius_divisor_sum_upto(d, d, &t), 0);
        }
    }
}
