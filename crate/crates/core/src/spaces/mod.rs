//! Weighted sequence norms `ℓ^p_α` and the Beurling quadratic form.
//!
//! A sequence `u(n)`, `n ≥ 1`, is identified with the power series whose
//! coefficient `a_{n−1}` is `u(n)`, so `u(n)` carries the weight `n^α`. Norms with
//! the shifted weight `(n+1)^α` differ from these by at most a factor `2^{|α|}`.

mod beurling;
mod norms;
mod trend;

pub use beurling::{beurling_quadratic_form, beurling_weight};
pub use norms::{holder_dual_factor, weighted_norm, Envelope, NormResult, Tail, WeightParams};
pub use trend::{default_truncation, fm_norm_trend, fm_values, FmTrend, FmTrendRow};
