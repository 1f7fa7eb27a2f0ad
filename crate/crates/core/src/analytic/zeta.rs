use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `Re(s) ≥ 0.3`, `|Im(s)| ≤ 100`: the region where `1e-10` relative accuracy is claimed.
pub const WINDOW_MIN_RE: f64 = 0.3;
pub const WINDOW_MAX_IM: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaMethod {
    /// Borwein's accelerated alternating series for `η`, divided by `1 − 2^{1−s}`.
    Borwein,
    /// Euler–Maclaurin summation, used where `1 − 2^{1−s}` nearly vanishes.
    EulerMaclaurin,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue {
    pub value: Complex64,
    /// False outside the accuracy window; the value is still computed.
    pub in_window: bool,
    pub method: ZetaMethod,
}

/// `ζ(s)` for `Re(s) > 0`, `s ≠ 1`.
pub fn zeta_eval(s: Complex64) -> Result<ZetaValue> {
    if !(s.re > 0.0) || !s.is_finite() {
        return Err(Error::Parameter(format!("zeta needs Re(s) > 0, got {s}")));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole);
    }
    let in_window = s.re >= WINDOW_MIN_RE && s.im.abs() <= WINDOW_MAX_IM;
    let factor = Complex64::new(1.0, 0.0) - (Complex64::new(2f64.ln(), 0.0) * (1.0 - s)).exp();
    if factor.norm() < 1e-2 {
        return Ok(ZetaValue {
            value: zeta_euler_maclaurin(s),
            in_window,
            method: ZetaMethod::EulerMaclaurin,
        });
    }
    Ok(ZetaValue {
        value: eta_borwein(s) / factor,
        in_window,
        method: ZetaMethod::Borwein,
    })
}

fn borwein_terms(t: f64) -> usize {
    let rate = (3.0 + 8f64.sqrt()).ln();
    ((PI * t.abs() / 2.0 + (1.0 + 2.0 * t.abs()).ln() + 30.0) / rate).ceil() as usize
}

/// `η(s) = −(1/d_n) Σ_{k<n} (−1)^k (d_k − d_n)/(k+1)^s`.
pub fn eta_borwein(s: Complex64) -> Complex64 {
    let n = borwein_terms(s.im).max(8);
    let nf = n as f64;
    // d_k = n Σ_{i≤k} (n+i−1)! 4^i / ((n−i)! (2i)!), built from the ratio of consecutive terms.
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0 / nf;
    let mut acc = term;
    d.push(nf * acc);
    for i in 1..=n {
        let fi = i as f64;
        term *= 4.0 * (nf + fi - 1.0) * (nf - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
        acc += term;
        d.push(nf * acc);
    }
    let dn = d[n];
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let pow = (-s * ((k + 1) as f64).ln()).exp();
        sum += pow * (sign * (d[k] - dn));
    }
    -sum / dn
}

const BERNOULLI: [f64; 13] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
];

/// Euler–Maclaurin summation with cut `N = 30 + |s|` and 13 Bernoulli corrections.
pub fn zeta_euler_maclaurin(s: Complex64) -> Complex64 {
    let n = 30 + s.norm().ceil() as u64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..n {
        sum += (-s * (k as f64).ln()).exp();
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let n_pow = (-s * ln_n).exp();
    sum += n_pow * nf / (s - 1.0) + n_pow * 0.5;
    // term_j = B_{2j}/(2j)! · s(s+1)…(s+2j−2) · N^{−s−2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut npow = n_pow / nf;
    for (j, b) in BERNOULLI.iter().enumerate() {
        sum += rising * npow * (b / fact);
        let j2 = 2.0 * (j + 1) as f64;
        rising = rising * (s + (j2 - 1.0)) * (s + j2);
        fact *= (j2 + 1.0) * (j2 + 2.0);
        npow /= nf * nf;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn real_values() {
        let z2 = zeta_eval(c(2.0, 0.0)).unwrap();
        assert!((z2.value.re - PI * PI / 6.0).abs() < 1e-13);
        assert_eq!(z2.value.im, 0.0);
        assert!(z2.in_window);
        let z3 = zeta_eval(c(3.0, 0.0)).unwrap().value;
        assert!((z3.re - 1.20205690315959428540).abs() < 1e-13);
    }

    #[test]
    fn errors_and_flags() {
        assert!(matches!(zeta_eval(c(1.0, 0.0)), Err(Error::Pole)));
        assert!(zeta_eval(c(0.0, 3.0)).is_err());
        assert!(zeta_eval(c(-1.0, 0.0)).is_err());
        assert!(!zeta_eval(c(0.2, 1.0)).unwrap().in_window);
        assert!(!zeta_eval(c(2.0, 150.0)).unwrap().in_window);
    }

    #[test]
    fn fallback_near_removable_points() {
        let s = c(1.0, 2.0 * PI / 2f64.ln());
        let z = zeta_eval(s).unwrap();
        assert_eq!(z.method, ZetaMethod::EulerMaclaurin);
        assert!((z.value - c(1.34657954283631710374, 0.10988313679626950079)).norm() < 1e-11);
    }

    #[test]
    fn routes_agree() {
        for s in [c(0.5, 0.0), c(0.7, 13.0), c(1.5, -40.0), c(3.0, 80.0), c(0.31, 99.0)] {
            let a = eta_borwein(s) / (1.0 - (c(2f64.ln(), 0.0) * (1.0 - s)).exp());
            let b = zeta_euler_maclaurin(s);
            assert!((a - b).norm() <= 1e-10 * b.norm(), "{s}: {a} vs {b}");
        }
    }
}
