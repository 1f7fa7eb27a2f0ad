use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

use super::TruncatedSeries;

/// `(1−z)^c` via `a_n = a_{n−1}(n−1−c)/n`.
pub fn binomial_series<T: Scalar>(c: T, order: usize) -> TruncatedSeries<T> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut a = T::one();
    coeffs.push(a.clone());
    for n in 1..=order {
        a = a * (T::from_usize_exact(n - 1) - c.clone()) / T::from_usize_exact(n);
        coeffs.push(a.clone());
    }
    TruncatedSeries::new(coeffs).expect("nonempty")
}

/// `h_k = (1−z)^{−1}·log((1 + z + … + z^{k−1})/k)`.
pub fn hk_series<T: Real>(k: usize, order: usize) -> Result<TruncatedSeries<T>> {
    if k < 2 {
        return Err(Error::Parameter(format!("h_k needs k ≥ 2, got {k}")));
    }
    let inv_k = T::from_usize(k).unwrap().recip();
    let arg = TruncatedSeries::from_fn(order, |n| if n < k { inv_k } else { T::zero() });
    Ok(arg.log()?.cumsum())
}

/// `T_a f = ((1−z)^a f)'/(1−z)^a = f' − a·f/(1−z)`, one order lower.
pub fn apply_t_a<T: Scalar>(f: &TruncatedSeries<T>, a: &T) -> Result<TruncatedSeries<T>> {
    let d = f.derivative()?;
    let m = f.cumsum().truncate(d.order()).scale(a);
    d.try_sub(&m)
}

/// `T_{a,b} = M_h ∘ T_a` with `h = (1−z)^{a−b}`.
pub fn apply_t_ab<T: Scalar>(f: &TruncatedSeries<T>, a: &T, b: &T) -> Result<TruncatedSeries<T>> {
    if b.is_zero() {
        return Err(Error::Parameter("T_(a,b) needs b ≠ 0".into()));
    }
    let t = apply_t_a(f, a)?;
    let h = binomial_series(a.clone() - b.clone(), t.order());
    h.try_mul(&t)
}
