use crate::error::{Error, Result};

/// Default memory budget, in sieve entries.
pub const DEFAULT_BUDGET_ENTRIES: u64 = 200_000_000;

/// Precomputed multiplicative tables for `1..=limit`.
///
/// Every per-index array has a dummy slot at index 0 so that `mu()[n]` is μ(n).
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveTables {
    limit: u64,
    mu: Vec<i8>,
    mertens: Vec<i32>,
    phi: Vec<u32>,
    spf: Vec<u32>,
    omega: Vec<u8>,
    primes: Vec<u32>,
}

impl SieveTables {
    /// Linear sieve with the default budget.
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with_budget(limit, DEFAULT_BUDGET_ENTRIES)
    }

    pub fn build_with_budget(limit: u64, budget_entries: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::Parameter("sieve limit must be at least 1".into()));
        }
        if limit > budget_entries || limit >= u32::MAX as u64 {
            return Err(Error::Capacity {
                requested: limit,
                budget: budget_entries.min(u32::MAX as u64 - 1),
            });
        }
        let n = limit as usize;
        let mut mu = vec![0i8; n + 1];
        let mut phi = vec![0u32; n + 1];
        let mut spf = vec![0u32; n + 1];
        let mut omega = vec![0u8; n + 1];
        let mut primes: Vec<u32> = Vec::with_capacity(prime_count_estimate(n));
        mu[1] = 1;
        phi[1] = 1;
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
                mu[i] = -1;
                phi[i] = (i - 1) as u32;
                omega[i] = 1;
            }
            let spf_i = spf[i];
            for &p in &primes {
                let ip = i * p as usize;
                if p > spf_i || ip > n {
                    break;
                }
                spf[ip] = p;
                if p == spf_i {
                    mu[ip] = 0;
                    phi[ip] = phi[i] * p;
                    omega[ip] = omega[i];
                } else {
                    mu[ip] = -mu[i];
                    phi[ip] = phi[i] * (p - 1);
                    omega[ip] = omega[i] + 1;
                }
            }
        }
        let mertens = prefix_sums(&mu);
        Ok(Self {
            limit,
            mu,
            mertens,
            phi,
            spf,
            omega,
            primes,
        })
    }

    /// Reassemble tables from cached μ, M and φ; rebuilds spf, ω and the prime list.
    pub(crate) fn from_parts(mu: Vec<i8>, mertens: Vec<i32>, phi: Vec<u32>) -> Self {
        let n = mu.len() - 1;
        let mut spf = vec![0u32; n + 1];
        let mut primes = Vec::with_capacity(prime_count_estimate(n));
        for i in 2..=n {
            if spf[i] == 0 {
                primes.push(i as u32);
                let mut j = i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        let mut omega = vec![0u8; n + 1];
        for i in 2..=n {
            let p = spf[i] as usize;
            let rest = i / p;
            omega[i] = if rest % p == 0 { omega[rest] } else { omega[rest] + 1 };
        }
        Self {
            limit: n as u64,
            mu,
            mertens,
            phi,
            spf,
            omega,
            primes,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    #[inline]
    pub fn mu(&self, n: u64) -> i8 {
        self.mu[n as usize]
    }

    #[inline]
    pub fn mertens(&self, n: u64) -> i64 {
        self.mertens[n as usize] as i64
    }

    #[inline]
    pub fn phi(&self, n: u64) -> u64 {
        self.phi[n as usize] as u64
    }

    #[inline]
    pub fn spf(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    #[inline]
    pub fn omega(&self, n: u64) -> u32 {
        self.omega[n as usize] as u32
    }

    /// μ table including the unused slot 0.
    pub fn mu_table(&self) -> &[i8] {
        &self.mu
    }

    /// Mertens table including the slot `M(0) = 0`.
    pub fn mertens_table(&self) -> &[i32] {
        &self.mertens
    }

    pub fn phi_table(&self) -> &[u32] {
        &self.phi
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn check_index(&self, n: u64) -> Result<()> {
        if n == 0 || n > self.limit {
            Err(Error::OutOfRange {
                index: n,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    /// Prime factorization `[(p, e)]`, ascending. Falls back to trial division above the limit.
    pub fn factorize(&self, mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        if n <= 1 {
            return out;
        }
        if n > self.limit {
            for &p in &self.primes {
                let p = p as u64;
                if p * p > n {
                    break;
                }
                if n % p == 0 {
                    let mut e = 0;
                    while n % p == 0 {
                        n /= p;
                        e += 1;
                    }
                    out.push((p, e));
                }
            }
            if n > self.limit {
                let mut d = self.primes.last().map_or(2, |&p| p as u64 + 1).max(2);
                while d * d <= n {
                    if n % d == 0 {
                        let mut e = 0;
                        while n % d == 0 {
                            n /= d;
                            e += 1;
                        }
                        out.push((d, e));
                    }
                    d += 1;
                }
                if n > 1 {
                    out.push((n, 1));
                }
                return out;
            }
        }
        while n > 1 {
            let p = self.spf(n);
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            match out.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => out.push((p, e)),
            }
        }
        out
    }

    /// Squarefree divisors of `n` with their Möbius values, in generation order.
    pub fn squarefree_divisors(&self, n: u64) -> Vec<(u64, i8)> {
        let mut divs = vec![(1u64, 1i8)];
        for (p, _) in self.factorize(n) {
            let len = divs.len();
            for i in 0..len {
                let (d, s) = divs[i];
                divs.push((d * p, -s));
            }
        }
        divs
    }
}

fn prefix_sums(mu: &[i8]) -> Vec<i32> {
    let mut out = Vec::with_capacity(mu.len());
    let mut acc = 0i32;
    out.push(0);
    for &x in &mu[1..] {
        acc += x as i32;
        out.push(acc);
    }
    out
}

fn prime_count_estimate(n: usize) -> usize {
    if n < 17 {
        8
    } else {
        let x = n as f64;
        (1.26 * x / x.ln()) as usize
    }
}
