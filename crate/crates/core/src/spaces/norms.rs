use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Real};

/// The pair `(p, α)` selecting the `ℓ^p_α` norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightParams<T> {
    pub p: T,
    pub alpha: T,
}

impl<T: Real> WeightParams<T> {
    pub fn new(p: T, alpha: T) -> Result<Self> {
        if !(p >= T::one() && p <= T::lit(2.0)) {
            return Err(Error::Parameter(format!("p = {p:?} must lie in [1, 2]")));
        }
        if !alpha.is_finite() {
            return Err(Error::Parameter(format!("alpha = {alpha:?} must be finite")));
        }
        Ok(Self { p, alpha })
    }

    #[inline]
    pub(crate) fn pow_p(&self, x: T) -> T {
        let x = x.abs();
        if self.p == T::one() {
            x
        } else if self.p == T::lit(2.0) {
            x * x
        } else if x == T::zero() {
            x
        } else {
            (self.p * x.ln()).exp()
        }
    }

    #[inline]
    pub(crate) fn root_p(&self, x: T) -> T {
        if self.p == T::one() {
            x
        } else if self.p == T::lit(2.0) {
            x.sqrt()
        } else {
            x.powf(self.p.recip())
        }
    }
}

/// Growth envelope `|u(n)| ≤ A·n^b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope<T> {
    pub a: T,
    pub b: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Tail<T> {
    /// `(Σ_{n>N} |u(n)|^p n^α)^{1/p}` is at most this value.
    Bounded(T),
    /// The envelope's tail series diverges.
    Unbounded,
    /// No envelope was supplied.
    Unavailable,
}

/// A truncated norm with a bound on what was left out.
///
/// When the tail is bounded the true norm lies in
/// `[truncated_value, (truncated_value^p + tail^p)^{1/p}]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormResult<T> {
    pub truncated_value: T,
    pub tail: Tail<T>,
    pub truncation_index: u64,
}

impl<T: Real> NormResult<T> {
    pub fn tail_bound(&self) -> Option<T> {
        match self.tail {
            Tail::Bounded(t) => Some(t),
            _ => None,
        }
    }

    pub fn upper(&self, w: &WeightParams<T>) -> Option<T> {
        self.tail_bound()
            .map(|t| w.root_p(w.pow_p(self.truncated_value) + w.pow_p(t)))
    }
}

/// `Σ_{n>N} n^c ≤ N^{c+1}/|c+1|` for `c < −1`.
pub(crate) fn power_tail<T: Real>(n: u64, c: T) -> Option<T> {
    let c1 = c + T::one();
    if c1 >= T::zero() {
        return None;
    }
    Some(T::from_u64(n).unwrap().powf(c1) / c1.abs())
}

pub(crate) fn envelope_tail<T: Real>(env: &Envelope<T>, w: &WeightParams<T>, n: u64) -> Tail<T> {
    match power_tail(n, env.b * w.p + w.alpha) {
        Some(t) => Tail::Bounded(w.root_p(w.pow_p(env.a) * t)),
        None => Tail::Unbounded,
    }
}

/// `(Σ_{n≤N} |u(n)|^p n^α)^{1/p}`, summed in ascending `n`.
pub fn weighted_norm<T: Real>(
    u: impl Fn(u64) -> T,
    w: &WeightParams<T>,
    truncation: u64,
    envelope: Option<&Envelope<T>>,
) -> Result<NormResult<T>> {
    if truncation == 0 {
        return Err(Error::Parameter("truncation must be ≥ 1".into()));
    }
    let mut acc = CompensatedSum::new();
    for n in 1..=truncation {
        let x = u(n);
        if x != T::zero() {
            let nf = T::from_u64(n).unwrap();
            acc.add(w.pow_p(x) * nf.powf(w.alpha));
        }
    }
    let tail = match envelope {
        Some(env) => envelope_tail(env, w, truncation),
        None => Tail::Unavailable,
    };
    Ok(NormResult {
        truncated_value: w.root_p(acc.value()),
        tail,
        truncation_index: truncation,
    })
}

/// The dual factor `(Σ_{n≤N} n^{−q(1+σ+α/p)})^{1/q}`, `q = p/(p−1)`, of Hölder's inequality
/// `Σ|S(n)| n^{−1−σ} ≤ ‖S‖_{p,α}·factor`. For `p = 1` it is `max_n n^{−(1+σ+α)}`.
pub fn holder_dual_factor<T: Real>(w: &WeightParams<T>, sigma: T, truncation: u64) -> T {
    let e = T::one() + sigma + w.alpha / w.p;
    if w.p == T::one() {
        if e >= T::zero() {
            T::one()
        } else {
            T::from_u64(truncation).unwrap().powf(-e)
        }
    } else {
        let q = w.p / (w.p - T::one());
        let mut acc = CompensatedSum::new();
        for n in 1..=truncation {
            acc.add(T::from_u64(n).unwrap().powf(-q * e));
        }
        acc.value().powf(q.recip())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validated() {
        assert!(WeightParams::new(1.0, -2.0).is_ok());
        assert!(WeightParams::new(0.9, -2.0).is_err());
        assert!(WeightParams::new(2.1, -2.0).is_err());
        assert!(WeightParams::new(1.5, f64::NAN).is_err());
    }

    #[test]
    fn small_examples() {
        let w = WeightParams::new(1.0, -2.0).unwrap();
        let e1 = weighted_norm(|n| if n == 1 { 1.0 } else { 0.0 }, &w, 10, None).unwrap();
        assert_eq!(e1.truncated_value, 1.0);
        assert_eq!(e1.tail, Tail::Unavailable);
        let two = weighted_norm(|n| if n <= 2 { 1.0 } else { 0.0 }, &w, 10, None).unwrap();
        assert_eq!(two.truncated_value, 1.25);
        let w15 = WeightParams::new(1.5f64, 3.0).unwrap();
        let e = weighted_norm(|n| if n == 1 { -1.0 } else { 0.0 }, &w15, 5, None).unwrap();
        assert!((e.truncated_value - 1.0).abs() < 1e-15);
        assert!(weighted_norm(|_| 1.0, &w, 0, None).is_err());
    }

    #[test]
    fn zeta_two_bracketed() {
        let w = WeightParams::new(2.0, -2.0).unwrap();
        let env = Envelope { a: 1.0, b: 0.0 };
        let r = weighted_norm(|_| 1.0f64, &w, 100_000, Some(&env)).unwrap();
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        let lo = r.truncated_value.powi(2);
        let hi = r.upper(&w).unwrap().powi(2);
        assert!(lo <= z2 && z2 <= hi + 1e-14, "{lo} {z2} {hi}");
        assert!(hi - lo < 2e-5);
    }

    #[test]
    fn divergent_envelope_is_unbounded() {
        let w = WeightParams::new(1.0, -1.0).unwrap();
        let env = Envelope { a: 1.0, b: 0.0 };
        let r = weighted_norm(|_| 1.0, &w, 10, Some(&env)).unwrap();
        assert_eq!(r.tail, Tail::Unbounded);
        assert_eq!(r.upper(&w), None);
    }

    #[test]
    fn single_precision() {
        let w = WeightParams::new(2.0f32, -2.0).unwrap();
        let r = weighted_norm(|_| 1.0f32, &w, 1000, None).unwrap();
        assert!((r.truncated_value - 1.2821).abs() < 1e-3);
    }
}
