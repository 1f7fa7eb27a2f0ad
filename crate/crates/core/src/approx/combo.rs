use std::any::TypeId;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Coefficients `c_1..c_N` with `Σ c_k/k = 0`.
///
/// Exact when `T` is [`BigRational`]; floating coefficients are accepted within `1e-12`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibleCombo<T> {
    coeffs: Vec<T>,
}

const FLOAT_TOLERANCE: f64 = 1e-12;

fn weighted_sum<T: Scalar>(coeffs: &[T]) -> T {
    coeffs
        .iter()
        .enumerate()
        .fold(T::zero(), |acc, (i, c)| acc + c.clone() / T::from_usize_exact(i + 1))
}

impl<T: Scalar> AdmissibleCombo<T> {
    /// Validates `c_1..c_N` (index 0 holds `c_1`).
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::Parameter("an admissible combination needs N ≥ 2".into()));
        }
        let s = weighted_sum(&coeffs);
        let ok = if TypeId::of::<T>() == TypeId::of::<BigRational>() {
            s.is_zero()
        } else {
            s.to_f64_lossy().abs() <= FLOAT_TOLERANCE
        };
        if !ok {
            return Err(Error::Parameter(format!(
                "Σ c_k/k = {:?} is not zero",
                s
            )));
        }
        Ok(Self { coeffs })
    }

    /// Completes `c_2..c_N` with the forced `c_1 = −Σ_{k≥2} c_k/k`.
    pub fn make_admissible(tail: Vec<T>) -> Result<Self> {
        if tail.is_empty() {
            return Err(Error::Parameter("an admissible combination needs N ≥ 2".into()));
        }
        let mut coeffs = Vec::with_capacity(tail.len() + 1);
        coeffs.push(T::zero());
        coeffs.extend(tail);
        coeffs[0] = -weighted_sum(&coeffs);
        Ok(Self { coeffs })
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    /// `c_k` for `1 ≤ k ≤ N`.
    pub fn c(&self, k: usize) -> &T {
        &self.coeffs[k - 1]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `S(n) = 1 + f(1/n) = 1 + Σ_{k=2}^N (c_k/k)·r_k(n)`, the value of `1 + Σ c_k{1/(kx)}`
    /// on `(1/(n+1), 1/n]`.
    pub fn s_value(&self, n: u64) -> T {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .fold(T::one(), |acc, (i, c)| {
                let k = (i + 1) as u64;
                acc + c.clone() * T::from_u64(n % k).expect("fits") / T::from_u64(k).expect("fits")
            })
    }

    /// `1 + Σ_{k≥2} |c_k|(k−1)/k`, a bound on `|S(n)|`.
    pub fn s_bound(&self) -> f64 {
        1.0 + self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.to_f64_lossy().abs() * i as f64 / (i + 1) as f64)
            .sum::<f64>()
    }

    pub fn to_f64(&self) -> AdmissibleCombo<f64> {
        AdmissibleCombo {
            coeffs: self.coeffs.iter().map(|c| c.to_f64_lossy()).collect(),
        }
    }
}

/// Free-function form of [`AdmissibleCombo::make_admissible`].
pub fn make_admissible<T: Scalar>(tail: Vec<T>) -> Result<AdmissibleCombo<T>> {
    AdmissibleCombo::make_admissible(tail)
}
