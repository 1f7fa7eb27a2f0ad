use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::approx::{g_direct, g_mertens};
use crate::error::{Error, Result};
use crate::ntcore::{exact_mobius_harmonic, MobiusPrefix, SieveTables};
use crate::scalar::rational_from_f64;

/// The nondecreasing weight `ω` applied to `t = m·|Σ_{k≤m} μ(k)/k|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum OmegaSpec {
    /// `ω(t) = c0 + c1·t`.
    Affine { c0: f64, c1: f64 },
}

impl OmegaSpec {
    pub fn affine(c0: f64, c1: f64) -> Result<Self> {
        if !(c0 >= 0.0 && c1 >= 0.0 && c0.is_finite() && c1.is_finite()) {
            return Err(Error::Parameter(format!(
                "affine omega needs finite c0, c1 ≥ 0, got {c0}, {c1}"
            )));
        }
        Ok(OmegaSpec::Affine { c0, c1 })
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            OmegaSpec::Affine { c0, c1 } => c0 + c1 * t,
        }
    }

    pub fn eval_exact(&self, t: &BigRational) -> BigRational {
        match *self {
            OmegaSpec::Affine { c0, c1 } => {
                let c = |x: f64| rational_from_f64(x).expect("validated finite");
                c(c0) + c(c1) * t
            }
        }
    }

    /// Bound on `|ω(t) − ω(t')|` when `|t − t'| ≤ dt`.
    pub fn slope_bound(&self, dt: f64) -> f64 {
        match *self {
            OmegaSpec::Affine { c1, .. } => c1 * dt,
        }
    }
}

impl fmt::Display for OmegaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaSpec::Affine { c0, c1 } => write!(f, "affine:{c0},{c1}"),
        }
    }
}

impl FromStr for OmegaSpec {
    type Err = Error;

    /// `affine:c0,c1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parameter(format!("cannot parse omega spec {s:?}; expected affine:c0,c1"));
        let rest = s.strip_prefix("affine:").ok_or_else(bad)?;
        let (a, b) = rest.split_once(',').ok_or_else(bad)?;
        let c0 = a.trim().parse().map_err(|_| bad())?;
        let c1 = b.trim().parse().map_err(|_| bad())?;
        OmegaSpec::affine(c0, c1)
    }
}

#[inline]
pub(crate) fn m_term(m: u64, s: f64) -> f64 {
    (m as f64).powf(s)
}

#[inline]
pub(crate) fn n_term(n: u64, s: f64) -> f64 {
    (n as f64).powf(s) / (n as f64).ln().sqrt()
}

#[inline]
pub(crate) fn ratio_term(m: u64, n: u64, s: f64) -> f64 {
    (n as f64 / m as f64).powf(s / (1.0 - s))
}

/// `(m^s + n^s/√log n + (n/m)^{s/(1−s)})·ω`, in the order every caller uses.
#[inline]
pub(crate) fn rhs_from_terms(mt: f64, nt: f64, rt: f64, omega_t: f64) -> f64 {
    (mt + nt + rt) * omega_t
}

/// Relative margin below which a float comparison is not trusted.
pub(crate) fn decision_band(omega: &OmegaSpec, t: f64, t_err: f64) -> f64 {
    let w = omega.eval(t);
    1e-9 + if w > 0.0 { omega.slope_bound(t_err) / w } else { 0.0 } + 16.0 * f64::EPSILON
}

/// Settles `lhs ≤ rhs` when the float comparison is inside the band, using the exact `t`.
pub(crate) fn adjudicate(
    m: u64,
    n: u64,
    lhs: u64,
    s: f64,
    omega: &OmegaSpec,
    tables: &SieveTables,
) -> Result<bool> {
    let harmonic = exact_mobius_harmonic(tables, m)?;
    let t = harmonic.abs() * BigRational::from_integer(m.into());
    let w = omega.eval_exact(&t).to_f64().unwrap_or(f64::INFINITY);
    let rhs = rhs_from_terms(m_term(m, s), n_term(n, s), ratio_term(m, n, s), w);
    Ok(lhs as f64 <= rhs * (1.0 + 32.0 * f64::EPSILON))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Condition6Check {
    pub lhs: u64,
    pub rhs: f64,
    pub pass: bool,
    /// The float comparison was too close and the exact `t` was used.
    pub adjudicated: bool,
}

pub(crate) fn check_params(s: f64) -> Result<()> {
    if !(0.5..1.0).contains(&s) {
        return Err(Error::Parameter(format!("s = {s} must lie in [1/2, 1)")));
    }
    Ok(())
}

/// `|G(n, m)| ≤ (m^s + n^s/√log n + (n/m)^{s/(1−s)})·ω(t)` with `t` taken from `prefix`.
pub fn condition6_check(
    m: u64,
    n: u64,
    s: f64,
    omega: &OmegaSpec,
    tables: &SieveTables,
    prefix: &MobiusPrefix,
) -> Result<Condition6Check> {
    check_params(s)?;
    if m < 2 || n < 2 {
        return Err(Error::Parameter(format!("need m, n ≥ 2, got m = {m}, n = {n}")));
    }
    if prefix.m() != m {
        return Err(Error::Parameter(format!(
            "prefix is for m = {}, expected {m}",
            prefix.m()
        )));
    }
    let g = if n <= tables.limit() {
        g_mertens(n, m, tables)?
    } else {
        g_direct(n, m, tables)?
    };
    let lhs = g.unsigned_abs();
    let t = prefix.scaled_t();
    let rhs = rhs_from_terms(m_term(m, s), n_term(n, s), ratio_term(m, n, s), omega.eval(t));
    let band = decision_band(omega, t, prefix.scaled_t_error());
    let l = lhs as f64;
    let (pass, adjudicated) = if l <= rhs * (1.0 - band) {
        (true, false)
    } else if l > rhs * (1.0 + band) {
        (false, false)
    } else {
        (adjudicate(m, n, lhs, s, omega, tables)?, true)
    };
    Ok(Condition6Check {
        lhs,
        rhs,
        pass,
        adjudicated,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LeadingTerm {
    /// `m^s`
    MPower,
    /// `n^s/√log n`
    NPower,
    /// `(n/m)^{s/(1−s)}`
    Ratio,
}

/// The largest of the three summands of the right-hand side.
pub fn leading_term(m: u64, n: u64, s: f64) -> LeadingTerm {
    let (a, b, c) = (m_term(m, s), n_term(n, s), ratio_term(m, n, s));
    if a >= b && a >= c {
        LeadingTerm::MPower
    } else if b >= c {
        LeadingTerm::NPower
    } else {
        LeadingTerm::Ratio
    }
}

/// `(m(log m)^{1/(2s)}, m^{1/s}/(log m)^{(1−s)/(2s²)})`, the asymptotic regime boundaries.
pub fn regime_boundaries(m: u64, s: f64) -> (f64, f64) {
    let (mf, lm) = (m as f64, (m as f64).ln());
    (
        mf * lm.powf(1.0 / (2.0 * s)),
        mf.powf(1.0 / s) / lm.powf((1.0 - s) / (2.0 * s * s)),
    )
}

/// Regime of `n ∈ (m, m^{1/s}]` by the asymptotic boundaries.
pub fn remark_regime(m: u64, n: u64, s: f64) -> LeadingTerm {
    let (b1, b2) = regime_boundaries(m, s);
    let nf = n as f64;
    if nf <= b1 {
        LeadingTerm::MPower
    } else if nf <= b2 {
        LeadingTerm::NPower
    } else {
        LeadingTerm::Ratio
    }
}
