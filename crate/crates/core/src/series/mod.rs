//! Truncated power series and the operators `T_a`, `T_{a,b}` on them.
//!
//! `T_{a,b}` is taken to be `M_h ∘ T_a` with `h = (1−z)^{a−b}`, so that
//! `T_{a,b}(−(1−z)^{b−a}/b) = 1/(1−z)` and `T_{a,1}(h_k (1−z)^{1−a}) = Ψ(r_k)`.
//! Logs and convolutions are naive `O(N²)`, adequate up to a few thousand terms.

mod linalg;
mod ops;
mod riesz;
mod span;
mod truncated;

pub use linalg::{eigen_extremes, Cholesky, EigenExtremes, SymMatrix};
pub use ops::{apply_t_a, apply_t_ab, binomial_series, hk_series};
pub use riesz::{
    dalpha_gram, g_basis, g_system_diagnostics, h_of_alpha, riesz_constants, t_a_g_basis,
    weighted_inner, OperatorParams, RieszConstants, RieszDiagnostics, EIGEN_TOLERANCE,
};
pub use span::{
    hk_span_family, span_distance, span_projection, SpanProjection, GRAM_REGULARIZATION,
    MAX_CONDITION,
};
pub use truncated::TruncatedSeries;
