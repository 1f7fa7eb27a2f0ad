use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Real};

use super::norms::{NormResult, Tail};

/// `n^{−2s} − (n+1)^{−2s}`, evaluated without cancellation.
#[inline]
pub fn beurling_weight<T: Real>(n: u64, s: T) -> T {
    let nf = T::from_u64(n).unwrap();
    let two_s = s + s;
    -(-two_s * nf.recip().ln_1p()).exp_m1() * (-two_s * nf.ln()).exp()
}

/// `Σ_{n≤N} |u(n)|²(n^{−2s} − (n+1)^{−2s})`.
///
/// The value is the form itself, not its square root. Given `sup|u| ≤ bound` the
/// omitted part is at most `bound²·(N+1)^{−2s}`.
pub fn beurling_quadratic_form<T: Real>(
    u: impl Fn(u64) -> T,
    s: T,
    truncation: u64,
    bound: Option<T>,
) -> Result<NormResult<T>> {
    if !(s > T::zero()) {
        return Err(Error::Parameter(format!("s = {s:?} must be positive")));
    }
    let mut acc = CompensatedSum::new();
    for n in 1..=truncation {
        let x = u(n);
        if x != T::zero() {
            acc.add(x * x * beurling_weight(n, s));
        }
    }
    let tail = match bound {
        Some(b) => {
            let n1 = T::from_u64(truncation + 1).unwrap();
            Tail::Bounded(b * b * (-(s + s) * n1.ln()).exp())
        }
        None => Tail::Unavailable,
    };
    Ok(NormResult {
        truncated_value: acc.value(),
        tail,
        truncation_index: truncation,
    })
}
