use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::linalg::{eigen_extremes, EigenExtremes, SymMatrix};
use super::{apply_t_a, TruncatedSeries};

/// Residual target for the eigenvalue extremes.
pub const EIGEN_TOLERANCE: f64 = 1e-9;
const EIGEN_MAX_ITER: usize = 1_000_000;

/// Parameters `a`, `b`, `α` of the operators `T_a`, `T_{a,b}` and the `g_k` system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OperatorParams {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
}

impl OperatorParams {
    pub fn new(a: f64, b: f64, alpha: f64) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::Parameter(format!("a = {a} must be positive")));
        }
        if !(-3.0..=-2.0).contains(&alpha) {
            return Err(Error::Parameter(format!("alpha = {alpha} must lie in [-3, -2]")));
        }
        if !b.is_finite() {
            return Err(Error::Parameter(format!("b = {b} must be finite")));
        }
        Ok(Self { a, b, alpha })
    }

    /// Whether `a ≥ −(1+α)/2`, the range where `T_a` is bijective.
    pub fn bijective(&self) -> bool {
        self.a >= -(1.0 + self.alpha) / 2.0
    }

    /// `t_k = (k+1)(k+2)^{α/2}`.
    pub fn t_k(&self, k: usize) -> f64 {
        (k + 1) as f64 * ((k + 2) as f64).powf(self.alpha / 2.0)
    }

    /// `δ_k = (k+1)^{a−α+1/2}/(a−α+1/2)` for `k ≥ 0`, and `δ_{−1} = 0`.
    pub fn delta_k(&self, k: i64) -> f64 {
        if k < 0 {
            return 0.0;
        }
        let e = self.a - self.alpha + 0.5;
        ((k + 1) as f64).powf(e) / e
    }
}

/// `g_k = (z^{k+1} − Σ_{s≤k} (δ_s − δ_{s−1}) z^s / δ_k) / t_k`.
pub fn g_basis(k: usize, params: &OperatorParams, order: usize) -> Result<TruncatedSeries<f64>> {
    if order < k + 1 {
        return Err(Error::Parameter(format!(
            "g_{k} has degree {} but order is {order}",
            k + 1
        )));
    }
    let tk = params.t_k(k);
    let dk = params.delta_k(k as i64);
    let mut s = TruncatedSeries::zeros(order);
    let mut coeffs = s.clone().into_coeffs();
    for (i, c) in coeffs.iter_mut().enumerate().take(k + 1) {
        let step = params.delta_k(i as i64) - params.delta_k(i as i64 - 1);
        *c = -step / dk / tk;
    }
    coeffs[k + 1] = 1.0 / tk;
    s = TruncatedSeries::new(coeffs)?;
    Ok(s)
}

/// `T_a g_k`, one order lower than `order`.
pub fn t_a_g_basis(k: usize, params: &OperatorParams, order: usize) -> Result<TruncatedSeries<f64>> {
    apply_t_a(&g_basis(k, params, order)?, &params.a)
}

/// `⟨f, g⟩_w = Σ_n a_n(f) a_n(g) (n+1)^w`.
pub fn weighted_inner(f: &TruncatedSeries<f64>, g: &TruncatedSeries<f64>, w: f64) -> Result<f64> {
    if f.order() != g.order() {
        return Err(Error::OrderMismatch(f.order(), g.order()));
    }
    Ok(f.coeffs()
        .iter()
        .zip(g.coeffs())
        .enumerate()
        .filter(|(_, (a, b))| **a != 0.0 && **b != 0.0)
        .map(|(n, (a, b))| a * b * ((n + 1) as f64).powf(w))
        .sum())
}

/// `C_0`, `C_1` and `H(α)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RieszConstants {
    pub c0: f64,
    pub c1: f64,
    pub h_alpha: f64,
}

/// `H(α) = −2α³ + 3α² + 2α + 1`, exact in exact scalars.
pub fn h_of_alpha<T: Scalar>(alpha: T) -> T {
    let c = |x: i64| T::from_i64(x).expect("small integer");
    ((c(-2) * alpha.clone() + c(3)) * alpha.clone() + c(2)) * alpha + c(1)
}

pub fn riesz_constants(params: &OperatorParams) -> RieszConstants {
    let (a, al) = (params.a, params.alpha);
    let c0 = (a - al + 0.5) * (a + 1.5) / (2.0 * a - al + 2.0);
    let c1 = (0.5 - al) * (a + 1.0) * (2.0 * a + 2.0 - al)
        / ((a - al + 1.5) * (a + (3.0 - al) / 2.0) * (a + (1.0 - al) / 2.0));
    RieszConstants {
        c0,
        c1,
        h_alpha: h_of_alpha(al),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RieszDiagnostics {
    pub constants: Option<RieszConstants>,
    pub gram: SymMatrix,
    pub eig_min: f64,
    pub eig_max: f64,
    pub eigen: EigenExtremes,
}

/// Gram matrix of `basis` under `(n+1)^alpha` with its extreme eigenvalues.
pub fn dalpha_gram(basis: &[TruncatedSeries<f64>], alpha: f64) -> Result<RieszDiagnostics> {
    let order = basis
        .first()
        .ok_or_else(|| Error::Parameter("empty basis".into()))?
        .order();
    if let Some(b) = basis.iter().find(|b| b.order() != order) {
        return Err(Error::OrderMismatch(order, b.order()));
    }
    let weights: Vec<f64> = (0..=order).map(|n| ((n + 1) as f64).powf(alpha)).collect();
    let gram = SymMatrix::from_upper(basis.len(), |i, j| {
        basis[i]
            .coeffs()
            .iter()
            .zip(basis[j].coeffs())
            .zip(&weights)
            .map(|((a, b), w)| a * b * w)
            .sum()
    });
    let eigen = eigen_extremes(&gram, EIGEN_TOLERANCE, EIGEN_MAX_ITER)?;
    Ok(RieszDiagnostics {
        constants: None,
        gram,
        eig_min: eigen.min,
        eig_max: eigen.max,
        eigen,
    })
}

/// Diagnostics for `{g_k}_{k≤k_max}` in `D_{α+2}` together with the constants.
pub fn g_system_diagnostics(params: &OperatorParams, k_max: usize) -> Result<RieszDiagnostics> {
    let order = k_max + 1;
    let basis = (0..=k_max)
        .map(|k| g_basis(k, params, order))
        .collect::<Result<Vec<_>>>()?;
    let mut d = dalpha_gram(&basis, params.alpha + 2.0)?;
    d.constants = Some(riesz_constants(params));
    Ok(d)
}
