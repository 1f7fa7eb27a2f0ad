//! The approximation errors `F_m`, the divisor-restricted `F'_m` and the
//! periodic guess `s_t`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::sums::{g_direct, g_mertens};
use crate::error::{Error, Result};
use crate::ntcore::{
    coprime_count, nth_primorial_prime, primorial, primorial_index, MobiusPrefix, SieveTables,
};

fn g_any(n: u64, m: u64, tables: &SieveTables) -> Result<i64> {
    if n <= tables.limit() {
        g_mertens(n, m, tables)
    } else {
        g_direct(n, m, tables)
    }
}

/// `F_m(n) = 1 − G(n, m) + m⌊n/m⌋·Σ_{k≤m} μ(k)/k`, exactly.
///
/// `harmonic` must be the exact prefix `Σ_{k≤m} μ(k)/k`. For `n < m` the value is 0.
/// At `n = m` the formula gives `m·Σ_{k≤m} μ(k)/k`, which is generally nonzero
/// (e.g. `F_2(2) = 1`).
pub fn f_exact(m: u64, n: u64, harmonic: &BigRational, tables: &SieveTables) -> Result<BigRational> {
    if m == 0 || n == 0 {
        return Err(Error::Parameter("F_m(n) needs m, n ≥ 1".into()));
    }
    if n < m {
        return Ok(BigRational::zero());
    }
    let g = g_any(n, m, tables)?;
    let scale = BigInt::from(m) * BigInt::from(n / m);
    Ok(BigRational::from_integer(BigInt::from(1 - g)) + harmonic * BigRational::from_integer(scale))
}

/// Floating-point `F_m(n)` from a running [`MobiusPrefix`] at the same `m`.
pub fn f_float(m: u64, n: u64, prefix: &MobiusPrefix, tables: &SieveTables) -> Result<f64> {
    if prefix.m() != m {
        return Err(Error::Parameter(format!(
            "prefix is for m = {}, expected {m}",
            prefix.m()
        )));
    }
    if n < m {
        return Ok(0.0);
    }
    let g = g_any(n, m, tables)?;
    Ok((1 - g) as f64 + (m * (n / m)) as f64 * prefix.value())
}

/// A primorial modulus `m_t` with its squarefree divisor table.
#[derive(Debug, Clone)]
pub struct PrimorialModulus {
    m: u64,
    t: usize,
    phi: u64,
    divisors: Vec<(u64, i8)>,
}

impl PrimorialModulus {
    pub fn new(m: u64) -> Result<Self> {
        let t = primorial_index(m).ok_or(Error::NotPrimorial(m))?;
        Self::from_index(t)
    }

    pub fn from_index(t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::Parameter("primorial index must be ≥ 1".into()));
        }
        let m = primorial(t)?;
        let primes = &crate::ntcore::PRIMORIAL_PRIMES[..t];
        let mut divisors = vec![(1u64, 1i8)];
        for &p in primes {
            let len = divisors.len();
            for i in 0..len {
                let (d, s) = divisors[i];
                divisors.push((d * p, -s));
            }
        }
        let phi = primes.iter().map(|p| p - 1).product();
        Ok(Self { m, t, phi, divisors })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn phi(&self) -> u64 {
        self.phi
    }

    /// The largest prime factor `p_t`.
    pub fn largest_prime(&self) -> u64 {
        crate::ntcore::PRIMORIAL_PRIMES[self.t - 1]
    }

    /// `G'(n, m) = Σ_{k | m} μ(k)⌊n/k⌋`.
    pub fn g_prime(&self, n: u64) -> i64 {
        self.divisors
            .iter()
            .map(|&(d, s)| s as i64 * (n / d) as i64)
            .sum()
    }

    /// `m·H'(n, m) = Σ_{k | m, k ≥ 2} μ(k)·(n mod k)·(m/k)`; always an integer.
    pub fn scaled_h_prime(&self, n: u64) -> i128 {
        self.divisors
            .iter()
            .filter(|&&(d, _)| d >= 2)
            .map(|&(d, s)| s as i128 * (n % d) as i128 * (self.m / d) as i128)
            .sum()
    }

    /// `m·Σ_{k | m} μ(k)/k`, an integer.
    pub fn scaled_harmonic(&self) -> i128 {
        self.divisors
            .iter()
            .map(|&(d, s)| s as i128 * (self.m / d) as i128)
            .sum()
    }

    /// `F'_m(n) = 1 − G'(n, m) + m⌊n/m⌋·Σ_{k|m} μ(k)/k`, evaluated term by term.
    pub fn f_prime_formula(&self, n: u64) -> i64 {
        1 - self.g_prime(n) + ((n / self.m) as i128 * self.scaled_harmonic()) as i64
    }

    /// `F'_m(n)` via periodicity and the coprime count: `1 − #{1 ≤ k ≤ n mod m : (k, m) = 1}`,
    /// with residue 0 mapping to `F'_m(m) = 1`.
    pub fn f_prime(&self, n: u64, tables: &SieveTables) -> Result<i64> {
        let r = n % self.m;
        if r == 0 {
            return Ok(1);
        }
        Ok(1 - coprime_count(r, self.m, tables)? as i64)
    }
}

/// `F'_m(n)` for a primorial `m`.
pub fn f_prime(m: u64, n: u64, tables: &SieveTables) -> Result<i64> {
    if n == 0 {
        return Err(Error::Parameter("F'_m(n) needs n ≥ 1".into()));
    }
    PrimorialModulus::new(m)?.f_prime(n, tables)
}

/// `s_t(n) = (φ(m) − 1)/(m − p_t)·(r_{p_t}(n) − r_m(n))` with `m = m_t`.
///
/// Needs `t ≥ 2`; at `t = 1` the denominator `m − p_t` vanishes.
pub fn s_t_eval(t: usize, n: u64) -> Result<BigRational> {
    if t < 2 {
        return Err(Error::Parameter(format!(
            "s_t is undefined for t = {t} (m_t − p_t = 0)"
        )));
    }
    let modulus = PrimorialModulus::from_index(t)?;
    let m = modulus.m();
    let p = nth_primorial_prime(t)?;
    let diff = (n % p) as i128 - (n % m) as i128;
    let factor = BigRational::new(
        BigInt::from(modulus.phi() - 1),
        BigInt::from(m - p),
    );
    Ok(factor * BigRational::from_integer(BigInt::from(diff)))
}

/// Checks `G(n, m) + H(n, m) = n·Σ_{k≤m} μ(k)/k` for `m = 1..=max_m` in exact
/// arithmetic over the common denominator `lcm(1..=max_m)`.
///
/// Returns the first `m` where the identity fails.
pub fn gh_identity_first_failure(n: u64, max_m: u64, tables: &SieveTables) -> Result<Option<u64>> {
    let l = crate::ntcore::lcm_upto(tables, max_m.max(1))?;
    let nl = BigInt::from(n);
    let mut g = 0i64;
    let mut scaled_h = BigInt::zero();
    let mut scaled_s = BigInt::zero();
    for k in 1..=max_m {
        let mu = tables.mu(k);
        if mu != 0 {
            let lk = &l / k;
            g += mu as i64 * (n / k) as i64;
            let term_h = &lk * (n % k);
            if mu > 0 {
                scaled_s += &lk;
                if k >= 2 {
                    scaled_h += term_h;
                }
            } else {
                scaled_s -= &lk;
                if k >= 2 {
                    scaled_h -= term_h;
                }
            }
        }
        if BigInt::from(g) * &l + &scaled_h != &nl * &scaled_s {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// `F_m(n)` via `1 + H(n, m) − r_m(n)·Σ_{k≤m} μ(k)/k`; an independent route to [`f_exact`].
pub fn f_via_fractional_parts(
    m: u64,
    n: u64,
    harmonic: &BigRational,
    tables: &SieveTables,
) -> Result<BigRational> {
    let h = super::sums::h_direct(n, m, tables)?;
    let rm = BigRational::from_integer(BigInt::from(n % m));
    Ok(BigRational::one() + h - rm * harmonic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntcore::{exact_mobius_harmonic, mobius_harmonic_prefix};
    use num_integer::gcd;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn f_examples() {
        let t = SieveTables::build(1000).unwrap();
        let s2 = exact_mobius_harmonic(&t, 2).unwrap();
        assert_eq!(f_exact(2, 2, &s2, &t).unwrap(), q(1, 1));
        assert_eq!(f_exact(2, 4, &s2, &t).unwrap(), q(1, 1));
        assert_eq!(f_exact(2, 5, &s2, &t).unwrap(), q(0, 1));
        let s7 = exact_mobius_harmonic(&t, 7).unwrap();
        for n in 1..7 {
            assert!(f_exact(7, n, &s7, &t).unwrap().is_zero());
        }
    }

    #[test]
    fn f_routes_agree_and_respect_envelope() {
        let t = SieveTables::build(1000).unwrap();
        for m in [2u64, 3, 5, 12, 30, 31, 64] {
            let s = exact_mobius_harmonic(&t, m).unwrap();
            let p = mobius_harmonic_prefix(&t, m).unwrap();
            for n in m..=600 {
                let a = f_exact(m, n, &s, &t).unwrap();
                assert_eq!(a, f_via_fractional_parts(m, n, &s, &t).unwrap(), "m={m} n={n}");
                let bound = BigRational::from_integer((2 * m).into());
                assert!(num_traits::Signed::abs(&a) < bound);
                let fl = f_float(m, n, &p, &t).unwrap();
                assert!((fl - num_traits::ToPrimitive::to_f64(&a).unwrap()).abs() < 1e-9);
            }
        }
        // at n = m the r_m term vanishes but H(m, m) does not
        let s3 = exact_mobius_harmonic(&t, 3).unwrap();
        assert_eq!(f_exact(3, 3, &s3, &t).unwrap(), q(1, 2));
    }

    #[test]
    fn f_prime_examples() {
        let t = SieveTables::build(100).unwrap();
        assert_eq!(f_prime(6, 5, &t).unwrap(), -1);
        assert_eq!(f_prime(6, 6, &t).unwrap(), 1);
        for n in 1..=5 {
            assert_eq!(f_prime(30, n, &t).unwrap(), 0);
        }
        assert_eq!(f_prime(210, 210, &t).unwrap(), 1);
        assert!(matches!(f_prime(12, 5, &t), Err(Error::NotPrimorial(12))));
        // 1 + H'(5, 6) − r_6(5)·Σ_{k|6} μ(k)/k by hand
        let modulus = PrimorialModulus::new(6).unwrap();
        let h_prime = q(-1, 2) + q(-2, 3) + q(5, 6);
        assert_eq!(q(1, 1) + h_prime - q(5, 1) * q(1, 3), q(-1, 1));
        assert_eq!(modulus.f_prime_formula(5), -1);
    }

    #[test]
    fn f_prime_paths_and_count() {
        let t = SieveTables::build(100).unwrap();
        for tt in 1..=5 {
            let md = PrimorialModulus::from_index(tt).unwrap();
            let m = md.m();
            let mut count = 0i64;
            for n in 1..m {
                if n > 1 && gcd(n, m) == 1 {
                    count += 1;
                }
                assert_eq!(md.f_prime_formula(n), -count);
                assert_eq!(md.f_prime(n, &t).unwrap(), -count);
                // m·(G' + H') = n·φ(m)
                assert_eq!(
                    m as i128 * md.g_prime(n) as i128 + md.scaled_h_prime(n),
                    n as i128 * md.phi() as i128
                );
            }
            for n in [1, m / 2, m - 1, m] {
                assert_eq!(md.f_prime_formula(n + m), md.f_prime_formula(n));
                assert_eq!(md.f_prime_formula(n + 7 * m), md.f_prime(n, &t).unwrap());
            }
        }
    }

    #[test]
    fn s_t_examples() {
        assert_eq!(s_t_eval(2, 5).unwrap(), q(-1, 1));
        assert!(s_t_eval(3, 4).unwrap().is_zero());
        assert!(s_t_eval(3, 30).unwrap().is_zero());
        assert!(s_t_eval(4, 210).unwrap().is_zero());
        assert!(s_t_eval(1, 3).is_err());
        // literal evaluation at m − 1: −(φ(m) − 1), the opposite sign of −F'_m(m − 1)
        assert_eq!(s_t_eval(3, 29).unwrap(), q(-7, 1));
    }

    #[test]
    fn gh_identity_small() {
        let t = SieveTables::build(300).unwrap();
        for n in [1u64, 2, 17, 120, 299] {
            assert_eq!(gh_identity_first_failure(n, 300, &t).unwrap(), None);
        }
    }
}
