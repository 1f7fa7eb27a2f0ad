//! Prefix sums `Σ_{k≤m} μ(k)/k` and the small-value points `m·|Σ| ≤ θ`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::SieveTables;
use crate::error::{Error, Result};
use crate::scalar::{rational_from_f64, CompensatedSum};

/// Running value of `Σ_{k≤m} μ(k)/k` with a rigorous rounding bound.
///
/// The bound is `(H_m + 3)·ε` where `H_m` is the m-th harmonic number: each term
/// carries one rounding (`ε/2·1/k`) and compensated summation adds at most
/// `2ε|S| + O(mε²)` with `|S| ≤ 1`. Since `H_m + 3 ≤ 4m` this is `≤ 4·m·ε`.
#[derive(Debug, Clone)]
pub struct MobiusPrefix {
    m: u64,
    acc: CompensatedSum<f64>,
    harmonic: f64,
}

impl MobiusPrefix {
    pub fn first() -> Self {
        let mut acc = CompensatedSum::new();
        acc.add(1.0);
        Self {
            m: 1,
            acc,
            harmonic: 1.0,
        }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn value(&self) -> f64 {
        self.acc.value()
    }

    pub fn abs_error_bound(&self) -> f64 {
        (self.harmonic + 3.0) * f64::EPSILON
    }

    /// `t = m·|Σ_{k≤m} μ(k)/k|`.
    pub fn scaled_t(&self) -> f64 {
        self.m as f64 * self.value().abs()
    }

    /// Bound on the error of [`Self::scaled_t`], including the final product.
    pub fn scaled_t_error(&self) -> f64 {
        self.m as f64 * self.abs_error_bound() + self.scaled_t() * f64::EPSILON
    }

    /// Advance from `m` to `m + 1` in O(1).
    pub fn extend(&mut self, tables: &SieveTables) -> Result<()> {
        let next = self.m + 1;
        tables.check_index(next)?;
        let mu = tables.mu(next);
        if mu != 0 {
            self.acc.add(mu as f64 / next as f64);
        }
        self.harmonic += 1.0 / next as f64;
        self.m = next;
        Ok(())
    }
}

pub fn mobius_harmonic_prefix(tables: &SieveTables, m: u64) -> Result<MobiusPrefix> {
    tables.check_index(m)?;
    let mut p = MobiusPrefix::first();
    while p.m < m {
        p.extend(tables)?;
    }
    Ok(p)
}

/// `lcm(1..=m)` built from prime powers.
pub fn lcm_upto(tables: &SieveTables, m: u64) -> Result<BigInt> {
    tables.check_index(m)?;
    let mut l = BigInt::from(1u32);
    for &p in tables.primes() {
        let p = p as u64;
        if p > m {
            break;
        }
        let mut q = p;
        while q <= m / p {
            q *= p;
        }
        l *= q;
    }
    Ok(l)
}

/// Exact `Σ_{k≤m} μ(k)/k`, accumulated over the common denominator `lcm(1..=m)`.
pub fn exact_mobius_harmonic(tables: &SieveTables, m: u64) -> Result<BigRational> {
    let l = lcm_upto(tables, m)?;
    let mut num = BigInt::zero();
    for k in 1..=m {
        match tables.mu(k) {
            0 => {}
            1 => num += &l / k,
            _ => num -= &l / k,
        }
    }
    Ok(BigRational::new(num, l))
}

/// Outcome of a small-value scan, including which prefixes needed exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SelbergScan {
    pub points: Vec<u64>,
    pub exact_adjudications: Vec<u64>,
}

/// All `m ≤ limit` with `m·|Σ_{k≤m} μ(k)/k| ≤ threshold`, ascending.
pub fn selberg_points(tables: &SieveTables, limit: u64, threshold: f64) -> Result<Vec<u64>> {
    Ok(selberg_scan(tables, limit, threshold)?.points)
}

pub fn selberg_scan(tables: &SieveTables, limit: u64, threshold: f64) -> Result<SelbergScan> {
    if !(threshold > 0.0 && threshold.is_finite()) {
        return Err(Error::Parameter(format!(
            "threshold must be positive and finite, got {threshold}"
        )));
    }
    let mut out = SelbergScan::default();
    if limit == 0 {
        return Ok(out);
    }
    tables.check_index(limit)?;
    let exact_threshold = rational_from_f64(threshold).expect("finite");
    let mut prefix = MobiusPrefix::first();
    loop {
        let m = prefix.m();
        let t = prefix.scaled_t();
        let err = prefix.scaled_t_error();
        let qualifies = if t + err < threshold {
            true
        } else if t - err > threshold {
            false
        } else {
            out.exact_adjudications.push(m);
            let s = exact_mobius_harmonic(tables, m)?;
            BigRational::from_integer(BigInt::from(m)) * s.abs() <= exact_threshold
        };
        if qualifies {
            out.points.push(m);
        }
        if m == limit {
            break;
        }
        prefix.extend(tables)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational_from_int;

    fn tables() -> SieveTables {
        SieveTables::build(3000).unwrap()
    }

    fn exact_by_terms(t: &SieveTables, m: u64) -> BigRational {
        (1..=m)
            .map(|k| BigRational::new(BigInt::from(t.mu(k)), BigInt::from(k)))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    #[test]
    fn first_prefixes() {
        let t = tables();
        assert_eq!(mobius_harmonic_prefix(&t, 1).unwrap().value(), 1.0);
        assert_eq!(mobius_harmonic_prefix(&t, 2).unwrap().value(), 0.5);
        let p3 = mobius_harmonic_prefix(&t, 3).unwrap();
        assert!((p3.value() - 1.0 / 6.0).abs() <= p3.abs_error_bound());
        assert_eq!(
            exact_mobius_harmonic(&t, 3).unwrap(),
            BigRational::new(1.into(), 6.into())
        );
    }

    #[test]
    fn float_prefix_within_its_bound() {
        let t = tables();
        let mut p = MobiusPrefix::first();
        let mut exact = rational_from_int(1);
        for m in 2..=3000u64 {
            p.extend(&t).unwrap();
            exact += BigRational::new(BigInt::from(t.mu(m)), BigInt::from(m));
            if m % 97 == 0 || m < 50 {
                let x = rational_from_f64(p.value()).unwrap();
                let err = (x - &exact).abs();
                assert!(err <= rational_from_f64(p.abs_error_bound()).unwrap(), "m={m}");
                assert!(p.abs_error_bound() <= 4.0 * m as f64 * f64::EPSILON);
            }
        }
    }

    #[test]
    fn exact_paths_agree() {
        let t = tables();
        for m in [1, 2, 7, 30, 211, 1000] {
            assert_eq!(exact_mobius_harmonic(&t, m).unwrap(), exact_by_terms(&t, m));
        }
    }

    #[test]
    fn selberg_examples() {
        let t = tables();
        let pts = selberg_points(&t, 10, 0.5).unwrap();
        assert!(pts.contains(&3) && pts.contains(&5));
        for m in [1, 2, 4] {
            assert!(!pts.contains(&m));
        }
        assert!(selberg_points(&t, 2, 0.5).unwrap().is_empty());
        // 3·(1/6) = 1/2 sits exactly on the threshold
        let scan = selberg_scan(&t, 10, 0.5).unwrap();
        assert!(scan.exact_adjudications.contains(&3));
    }

    #[test]
    fn large_threshold_keeps_everything_bounded() {
        let t = tables();
        let pts = selberg_points(&t, 200, 1.0).unwrap();
        for m in 1..=200 {
            let s = exact_by_terms(&t, m);
            let inside = rational_from_int(m as i64) * s.abs() <= rational_from_int(1);
            assert_eq!(pts.contains(&m), inside, "m={m}");
        }
    }

    #[test]
    fn range_and_parameter_errors() {
        let t = tables();
        assert!(mobius_harmonic_prefix(&t, 0).is_err());
        assert!(mobius_harmonic_prefix(&t, 3001).is_err());
        assert!(selberg_points(&t, 10, 0.0).is_err());
        assert!(selberg_points(&t, 5000, 0.5).is_err());
    }
}
