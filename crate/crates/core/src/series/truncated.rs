use std::io::Write;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// Power series `a_0 + a_1 z + … + a_N z^N` known up to order `N`.
///
/// Binary operations require equal orders and never extend the result.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> TruncatedSeries<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(Self { coeffs })
    }

    pub fn zeros(order: usize) -> Self {
        Self {
            coeffs: vec![T::zero(); order + 1],
        }
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.coeffs[0] = c;
        s
    }

    /// `1/(1−z)`.
    pub fn geometric(order: usize) -> Self {
        Self {
            coeffs: vec![T::one(); order + 1],
        }
    }

    /// `z^k`; zero if `k` exceeds the order.
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut s = Self::zeros(order);
        if k <= order {
            s.coeffs[k] = T::one();
        }
        s
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> T) -> Self {
        Self {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &T {
        &self.coeffs[n]
    }

    /// Index of the last nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip(other, |a, b| a.clone() + b.clone()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip(other, |a, b| a.clone() - b.clone()))
    }

    fn zip(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Cauchy product, skipping zero coefficients of `self`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Multiplication by `1/(1−z)`.
    pub fn cumsum(&self) -> Self {
        let mut acc = T::zero();
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| {
                    acc = acc.clone() + a.clone();
                    acc.clone()
                })
                .collect(),
        }
    }

    /// `f'`, one order lower.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::EmptySeries);
        }
        Ok(Self {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(n, a)| a.clone() * T::from_usize_exact(n + 1))
                .collect(),
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    /// Sum of the coefficients, i.e. the value at `z = 1` of the truncation.
    pub fn sum_coeffs(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, a| acc + a.clone())
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> TruncatedSeries<U> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> TruncatedSeries<f64> {
        self.map(|a| a.to_f64_lossy())
    }

    /// `n,a_n` rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "n,a_n")?;
        for (n, a) in self.coeffs.iter().enumerate() {
            writeln!(out, "{n},{a}")?;
        }
        Ok(())
    }
}

impl<T: Real> TruncatedSeries<T> {
    /// `log f` for `a_0 > 0`: `log a_0 + log(f/a_0)` with the recurrence
    /// `n g_n = n f_n − Σ_{j<n} j g_j f_{n−j}` on the normalized series.
    pub fn log(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if !(a0 > T::zero()) {
            return Err(Error::Parameter(format!(
                "series log needs a positive constant term, got {a0:?}"
            )));
        }
        let f: Vec<T> = self.coeffs.iter().map(|&a| a / a0).collect();
        let support: Vec<usize> = (1..f.len()).filter(|&i| f[i] != T::zero()).collect();
        let mut g = vec![T::zero(); f.len()];
        g[0] = a0.ln();
        for n in 1..f.len() {
            let mut acc = T::from_usize(n).unwrap() * f[n];
            for &i in &support {
                if i >= n {
                    break;
                }
                let j = n - i;
                acc -= T::from_usize(j).unwrap() * g[j] * f[i];
            }
            g[n] = acc / T::from_usize(n).unwrap();
        }
        Ok(Self { coeffs: g })
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.check_order(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (*a - *b).abs())
            .fold(T::zero(), T::max))
    }
}

impl<T: Scalar> Add for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;

    /// Panics on an order mismatch; see [`TruncatedSeries::try_add`].
    fn add(self, rhs: Self) -> TruncatedSeries<T> {
        self.try_add(rhs).expect("equal orders")
    }
}

impl<T: Scalar> Sub for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;

    fn sub(self, rhs: Self) -> TruncatedSeries<T> {
        self.try_sub(rhs).expect("equal orders")
    }
}

impl<T: Scalar> Neg for &TruncatedSeries<T> {
    type Output = TruncatedSeries<T>;

    fn neg(self) -> TruncatedSeries<T> {
        self.map(|a| -a.clone())
    }
}
