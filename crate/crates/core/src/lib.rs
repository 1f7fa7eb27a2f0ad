//! Numerical laboratory for Nyman–Beurling style approximation problems.
//!
//! * [`ntcore`] — μ, Mertens and φ sieves, Möbius harmonic prefixes, primorials.
//! * [`approx`] — the sequences `r_k`, `G`, `H`, `F_m`, `F'_m`, `s_t` and admissible combinations.
//! * [`spaces`] — weighted `ℓ^p_α` norms and the Beurling quadratic form.
//! * [`series`] — truncated power series, the operators `T_a`, `T_{a,h}` and Riesz diagnostics.
//! * [`analytic`] — ζ on `Re(s) > 0`, the Beurling integral identity and the condition-(6) scanner.

pub mod analytic;
pub mod approx;
pub mod error;
pub mod ntcore;
pub mod scalar;
pub mod series;
pub mod spaces;

pub use error::{Error, Result};
pub use scalar::{CompensatedSum, Real, Scalar};

/// Exact rational used for identity checks.
pub type Rational = num_rational::BigRational;
/// Double-precision power series.
pub type Series = series::TruncatedSeries<f64>;
/// Single-precision power series.
pub type Series32 = series::TruncatedSeries<f32>;
/// Exact power series (binomial expansions with rational exponent).
pub type ExactSeries = series::TruncatedSeries<Rational>;
pub type Combo = approx::AdmissibleCombo<f64>;
pub type ExactCombo = approx::AdmissibleCombo<Rational>;
pub type Weights = spaces::WeightParams<f64>;
pub type Norm = spaces::NormResult<f64>;
