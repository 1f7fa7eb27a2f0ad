use num_complex::Complex64;

use super::zeta::zeta_eval;
use crate::approx::AdmissibleCombo;
use crate::error::{Error, Result};
use crate::scalar::CompensatedSum;

/// Default truncation of the left-hand sum.
pub const DEFAULT_TRUNCATION: u64 = 1_000_000;

/// Relative accuracy assumed for ζ inside its window.
pub const ZETA_REL_ERROR: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeurlingValue {
    pub value: Complex64,
    /// Bound on the omitted tail (zero for the closed form).
    pub tail_bound: f64,
    /// Bound on floating-point and ζ error.
    pub rounding_bound: f64,
}

impl BeurlingValue {
    pub fn error_bound(&self) -> f64 {
        self.tail_bound + self.rounding_bound
    }
}

/// `(n^{−s} − (n+1)^{−s})/s` via `expm1`, stable for large `n`.
#[inline]
fn cell(n: u64, s: Complex64) -> Complex64 {
    let l = (1.0 / n as f64).ln_1p();
    let x = -s * l;
    let em1 = Complex64::new(
        x.re.exp_m1() * x.im.cos() - 2.0 * (x.im / 2.0).sin().powi(2),
        x.re.exp() * x.im.sin(),
    );
    -(-s * (n as f64).ln()).exp() * em1 / s
}

struct ComplexSum {
    re: CompensatedSum<f64>,
    im: CompensatedSum<f64>,
    abs: f64,
}

impl ComplexSum {
    fn new() -> Self {
        Self {
            re: CompensatedSum::new(),
            im: CompensatedSum::new(),
            abs: 0.0,
        }
    }

    fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
        self.abs += z.norm();
    }

    fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Moments `W_k = Σ_{n≤N} r_k(n)(n^{−s} − (n+1)^{−s})/s` (`W_1` holding the `r ≡ 1` sum),
/// from which the left-hand side for any combination with `N_c ≤ k_max` is a dot product.
#[derive(Debug, Clone)]
pub struct BeurlingKernel {
    s: Complex64,
    truncation: u64,
    moments: Vec<Complex64>,
    abs_moments: Vec<f64>,
}

/// Per-term relative rounding of `cell` plus the compensated accumulation.
const CELL_ULPS: f64 = 32.0;

impl BeurlingKernel {
    pub fn new(s: Complex64, truncation: u64, k_max: usize) -> Result<Self> {
        if !(s.re > 0.0) {
            return Err(Error::Parameter(format!("Re(s) must be positive, got {s}")));
        }
        if truncation == 0 {
            return Err(Error::Parameter("truncation must be ≥ 1".into()));
        }
        let k_max = k_max.max(1);
        let mut sums: Vec<ComplexSum> = (0..k_max).map(|_| ComplexSum::new()).collect();
        let mut r = vec![0u64; k_max + 1];
        for n in 1..=truncation {
            let w = cell(n, s);
            sums[0].add(w);
            for k in 2..=k_max {
                r[k] += 1;
                if r[k] == k as u64 {
                    r[k] = 0;
                }
                if r[k] != 0 {
                    sums[k - 1].add(w * r[k] as f64);
                }
            }
        }
        Ok(Self {
            s,
            truncation,
            moments: sums.iter().map(ComplexSum::value).collect(),
            abs_moments: sums.iter().map(|x| x.abs).collect(),
        })
    }

    pub fn k_max(&self) -> usize {
        self.moments.len()
    }

    /// `Σ_{n≤N} S(n)(n^{−s} − (n+1)^{−s})/s` with `S(n) = 1 + Σ_{k≥2} (c_k/k) r_k(n)`.
    pub fn lhs(&self, combo: &AdmissibleCombo<f64>) -> Result<BeurlingValue> {
        if combo.n() > self.k_max() {
            return Err(Error::Parameter(format!(
                "kernel covers k ≤ {}, combination has N = {}",
                self.k_max(),
                combo.n()
            )));
        }
        let mut value = self.moments[0];
        let mut abs = self.abs_moments[0];
        for k in 2..=combo.n() {
            let c = *combo.c(k) / k as f64;
            value += self.moments[k - 1] * c;
            abs += self.abs_moments[k - 1] * c.abs();
        }
        let sigma = self.s.re;
        let tail_bound = combo.s_bound() * ((self.truncation + 1) as f64).powf(-sigma) / sigma;
        Ok(BeurlingValue {
            value,
            tail_bound,
            rounding_bound: CELL_ULPS * f64::EPSILON * abs,
        })
    }
}

/// Left side of the Beurling identity, summed to `truncation`, with a tail bound from
/// `|S(n)| ≤ 1 + Σ|c_k|(k−1)/k` and `|n^{−s} − (n+1)^{−s}| ≤ |s|∫_n^{n+1} x^{−σ−1}dx`.
pub fn beurling_lhs(
    combo: &AdmissibleCombo<f64>,
    s: Complex64,
    truncation: u64,
) -> Result<BeurlingValue> {
    BeurlingKernel::new(s, truncation, combo.n())?.lhs(combo)
}

/// `(1 − ζ(s)Σ_{k≥1} c_k k^{−s})/s`.
///
/// The Dirichlet polynomial includes `c_1`: `∫_0^1 {1/(kx)} x^{s−1} dx = 1/(k(s−1)) − k^{−s}ζ(s)/s`,
/// and the `1/(s−1)` parts cancel only because `Σ c_k/k = 0`.
pub fn beurling_rhs(combo: &AdmissibleCombo<f64>, s: Complex64) -> Result<BeurlingValue> {
    let mut poly = Complex64::new(0.0, 0.0);
    let mut poly_abs = 0.0;
    for k in 1..=combo.n() {
        let c = *combo.c(k);
        if c != 0.0 {
            let t = (-s * (k as f64).ln()).exp() * c;
            poly += t;
            poly_abs += t.norm();
        }
    }
    let zeta = if poly_abs == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        zeta_eval(s)?.value
    };
    let value = (1.0 - zeta * poly) / s;
    let rounding_bound = (zeta.norm() * poly_abs * (ZETA_REL_ERROR + 16.0 * f64::EPSILON)
        + 8.0 * f64::EPSILON)
        / s.norm();
    Ok(BeurlingValue {
        value,
        tail_bound: 0.0,
        rounding_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::make_admissible;

    #[test]
    fn zero_combo_is_one_over_s() {
        let zero = make_admissible(vec![0.0; 3]).unwrap();
        for s in [Complex64::new(2.0, 0.0), Complex64::new(0.7, 3.0)] {
            let l = beurling_lhs(&zero, s, 100_000).unwrap();
            assert!((l.value - 1.0 / s).norm() <= l.error_bound());
            let r = beurling_rhs(&zero, s).unwrap();
            assert_eq!(r.value, 1.0 / s);
        }
    }

    #[test]
    fn two_term_example() {
        let combo = make_admissible(vec![1.0]).unwrap();
        let s = Complex64::new(2.0, 0.0);
        let r = beurling_rhs(&combo, s).unwrap();
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        // c_1 + c_2/4 = −1/4
        assert!((r.value.re - (1.0 + z2 / 4.0) / 2.0).abs() < 1e-14);
        let l = beurling_lhs(&combo, s, 200_000).unwrap();
        assert_eq!(l.value.im, 0.0);
        assert!((l.value - r.value).norm() <= l.error_bound() + r.error_bound(), "{l:?} {r:?}");
    }

    #[test]
    fn cell_matches_naive() {
        let s = Complex64::new(1.5, 2.0);
        for n in 1..40u64 {
            let naive = ((-s * (n as f64).ln()).exp() - (-s * ((n + 1) as f64).ln()).exp()) / s;
            assert!((cell(n, s) - naive).norm() < 1e-14);
        }
    }

    #[test]
    fn kernel_rejects_wide_combo() {
        let k = BeurlingKernel::new(Complex64::new(2.0, 0.0), 10, 3).unwrap();
        assert!(k.lhs(&make_admissible(vec![1.0, 1.0, 1.0]).unwrap()).is_err());
        assert!(BeurlingKernel::new(Complex64::new(0.0, 1.0), 10, 3).is_err());
    }
}
