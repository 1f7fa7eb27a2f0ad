use serde::Serialize;

use crate::error::{Error, Result};

use super::linalg::SymMatrix;
use super::riesz::weighted_inner;
use super::TruncatedSeries;

/// Diagonal shift applied to the normal equations.
pub const GRAM_REGULARIZATION: f64 = 1e-12;
/// Condition estimates above this are rejected.
pub const MAX_CONDITION: f64 = 1e10;

#[derive(Debug, Clone, Serialize)]
pub struct SpanProjection {
    pub distance: f64,
    pub coefficients: Vec<f64>,
    pub condition_estimate: f64,
}

/// Least-squares projection of `target` onto `span(basis)` in the `(n+1)^alpha` norm.
pub fn span_projection(
    target: &TruncatedSeries<f64>,
    basis: &[TruncatedSeries<f64>],
    alpha: f64,
) -> Result<SpanProjection> {
    if basis.is_empty() {
        let d = weighted_inner(target, target, alpha)?.sqrt();
        return Ok(SpanProjection {
            distance: d,
            coefficients: Vec::new(),
            condition_estimate: 1.0,
        });
    }
    for b in basis {
        if b.order() != target.order() {
            return Err(Error::OrderMismatch(target.order(), b.order()));
        }
    }
    let mut gram = SymMatrix::from_upper(basis.len(), |i, j| {
        weighted_inner(&basis[i], &basis[j], alpha).expect("orders checked")
    });
    gram.add_diagonal(GRAM_REGULARIZATION);
    let rhs = basis
        .iter()
        .map(|b| weighted_inner(b, target, alpha))
        .collect::<Result<Vec<_>>>()?;
    let chol = gram.cholesky()?;
    let condition_estimate = chol.condition_estimate();
    if condition_estimate > MAX_CONDITION {
        return Err(Error::IllConditioned {
            condition: condition_estimate,
        });
    }
    let coefficients = chol.solve(&rhs);
    let mut residual = target.clone();
    for (c, b) in coefficients.iter().zip(basis) {
        residual = residual.try_sub(&b.scale(c))?;
    }
    Ok(SpanProjection {
        distance: weighted_inner(&residual, &residual, alpha)?.sqrt(),
        coefficients,
        condition_estimate,
    })
}

pub fn span_distance(
    target: &TruncatedSeries<f64>,
    basis: &[TruncatedSeries<f64>],
    alpha: f64,
) -> Result<f64> {
    span_projection(target, basis, alpha).map(|p| p.distance)
}

/// `{(1−z)^{1−a} h_k}_{k=2..=k_max}` and the target `(1−z)^{1−a}`.
pub fn hk_span_family(
    a: f64,
    k_max: usize,
    order: usize,
) -> Result<(TruncatedSeries<f64>, Vec<TruncatedSeries<f64>>)> {
    let factor = super::binomial_series(1.0 - a, order);
    let basis = (2..=k_max)
        .map(|k| super::hk_series::<f64>(k, order).and_then(|h| factor.try_mul(&h)))
        .collect::<Result<Vec<_>>>()?;
    Ok((factor, basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn target_in_span() {
        let (_, basis) = hk_span_family(1.0, 5, 64).unwrap();
        let target = basis[1].try_add(&basis[2].scale(&-0.5)).unwrap();
        assert!(span_distance(&target, &basis, -2.5).unwrap() < 1e-10);
        assert!(span_distance(&basis[0], &basis, -2.5).unwrap() < 1e-10);
    }

    #[test]
    fn empty_basis_is_norm() {
        let t = TruncatedSeries::constant(2.0, 5);
        assert_eq!(span_distance(&t, &[], -2.0).unwrap(), 2.0);
    }

    #[test]
    fn dependent_basis_rejected() {
        let b = TruncatedSeries::geometric(10);
        let basis = vec![b.clone(), b.clone()];
        assert!(matches!(
            span_distance(&b, &basis, 0.0),
            Err(Error::IllConditioned { .. })
        ));
        assert!(span_distance(&b, &[TruncatedSeries::zeros(3)], 0.0).is_err());
    }
}
