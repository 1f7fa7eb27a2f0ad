use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Dense symmetric matrix stored row-major in full.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Fills the upper triangle from `f(i, j)`, `i ≤ j`, and mirrors it.
    pub fn from_upper(n: usize, f: impl Fn(usize, usize) -> f64 + Sync) -> Self {
        let rows: Vec<Vec<f64>> = (0..n)
            .into_par_iter()
            .map(|i| (i..n).map(|j| f(i, j)).collect())
            .collect();
        let mut data = vec![0.0; n * n];
        for (i, row) in rows.into_iter().enumerate() {
            for (off, v) in row.into_iter().enumerate() {
                let j = i + off;
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in 0..i {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        self.data
            .chunks_exact(self.n)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add_diagonal(&mut self, shift: f64) {
        for i in 0..self.n {
            self.data[i * self.n + i] += shift;
        }
    }

    /// Lower Cholesky factor; fails when a pivot is not positive.
    pub fn cholesky(&self) -> Result<Cholesky> {
        let n = self.n;
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let mut d = self.get(j, j);
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if !(d > 0.0) {
                return Err(Error::IllConditioned {
                    condition: f64::INFINITY,
                });
            }
            let d = d.sqrt();
            l[j * n + j] = d;
            for i in j + 1..n {
                let mut s = self.get(i, j);
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = s / d;
            }
        }
        Ok(Cholesky { n, l })
    }

    /// `i,j,value` rows for `i ≤ j`.
    pub fn write_upper_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "i,j,value")?;
        for i in 0..self.n {
            for j in i..self.n {
                writeln!(out, "{i},{j},{:e}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Cholesky {
    n: usize,
    l: Vec<f64>,
}

impl Cholesky {
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                y[i] -= self.l[i * n + k] * y[k];
            }
            y[i] /= self.l[i * n + i];
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                y[i] -= self.l[k * n + i] * y[k];
            }
            y[i] /= self.l[i * n + i];
        }
        y
    }

    /// `(max L_ii / min L_ii)²`, a lower estimate of the condition number.
    pub fn condition_estimate(&self) -> f64 {
        let diag = (0..self.n).map(|i| self.l[i * self.n + i]);
        let (lo, hi) = diag.fold((f64::INFINITY, 0.0f64), |(lo, hi), d| (lo.min(d), hi.max(d)));
        (hi / lo).powi(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenExtremes {
    pub min: f64,
    pub max: f64,
    pub min_residual: f64,
    pub max_residual: f64,
    pub iterations: usize,
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn residual(m: &SymMatrix, v: &[f64], lambda: f64) -> f64 {
    m.mul_vec(v)
        .iter()
        .zip(v)
        .map(|(w, x)| (w - lambda * x).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn start_vector(n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 1.0 / (i + 1) as f64).collect();
    normalize(&mut v);
    v
}

/// Extreme eigenvalues of a positive definite matrix: power iteration for the
/// largest and inverse (zero-shift) power iteration for the smallest, each run
/// until `‖Mv − λv‖ ≤ tol`.
pub fn eigen_extremes(m: &SymMatrix, tol: f64, max_iter: usize) -> Result<EigenExtremes> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::Parameter("empty matrix".into()));
    }
    let mut iterations = 0;

    let mut v = start_vector(n);
    let mut max = 0.0;
    let mut max_residual = f64::INFINITY;
    for _ in 0..max_iter {
        iterations += 1;
        let mut w = m.mul_vec(&v);
        max = dot(&v, &w);
        max_residual = w.iter().zip(&v).map(|(a, b)| (a - max * b).powi(2)).sum::<f64>().sqrt();
        if max_residual <= tol {
            break;
        }
        normalize(&mut w);
        v = w;
    }

    let chol = m.cholesky()?;
    let mut v = start_vector(n);
    let mut min = 0.0;
    let mut min_residual = f64::INFINITY;
    for _ in 0..max_iter {
        iterations += 1;
        let mut w = chol.solve(&v);
        normalize(&mut w);
        min = dot(&w, &m.mul_vec(&w));
        min_residual = residual(m, &w, min);
        v = w;
        if min_residual <= tol {
            break;
        }
    }
    if max_residual > tol || min_residual > tol {
        return Err(Error::Parameter(format!(
            "power iteration did not reach residual {tol:e} in {max_iter} steps"
        )));
    }
    Ok(EigenExtremes {
        min,
        max,
        min_residual,
        max_residual,
        iterations,
    })
}
