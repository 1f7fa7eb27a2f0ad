use std::io::Write;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::fm::{f_exact, s_t_eval, PrimorialModulus};
use crate::error::{Error, Result};
use crate::ntcore::{exact_mobius_harmonic, SieveTables};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowKind {
    F,
    FPrime,
    /// `s_t` at `m = m_t`.
    St,
    Custom,
}

impl WindowKind {
    pub fn label(self) -> &'static str {
        match self {
            WindowKind::F => "F",
            WindowKind::FPrime => "Fprime",
            WindowKind::St => "S_t",
            WindowKind::Custom => "custom",
        }
    }
}

/// Exact values of one sequence over `n_start..=n_end`.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceWindow {
    pub kind: WindowKind,
    pub m: u64,
    pub n_start: u64,
    pub n_end: u64,
    pub values: Vec<BigRational>,
}

impl SequenceWindow {
    pub fn build(
        kind: WindowKind,
        m: u64,
        range: RangeInclusive<u64>,
        tables: &SieveTables,
    ) -> Result<Self> {
        let (n_start, n_end) = (*range.start(), *range.end());
        if n_start == 0 || n_end < n_start {
            return Err(Error::Parameter(format!(
                "window range {n_start}..={n_end} must be nonempty with n ≥ 1"
            )));
        }
        let values = match kind {
            WindowKind::F => {
                let harmonic = exact_mobius_harmonic(tables, m)?;
                range
                    .map(|n| f_exact(m, n, &harmonic, tables))
                    .collect::<Result<Vec<_>>>()?
            }
            WindowKind::FPrime => {
                let modulus = PrimorialModulus::new(m)?;
                range
                    .map(|n| {
                        modulus
                            .f_prime(n, tables)
                            .map(|v| BigRational::from_integer(BigInt::from(v)))
                    })
                    .collect::<Result<Vec<_>>>()?
            }
            WindowKind::St => {
                let t = PrimorialModulus::new(m)?.t();
                range.map(|n| s_t_eval(t, n)).collect::<Result<Vec<_>>>()?
            }
            WindowKind::Custom => {
                return Err(Error::Parameter(
                    "custom windows are built with SequenceWindow::from_fn".into(),
                ))
            }
        };
        Ok(Self {
            kind,
            m,
            n_start,
            n_end,
            values,
        })
    }

    pub fn from_fn(
        m: u64,
        range: RangeInclusive<u64>,
        f: impl Fn(u64) -> BigRational,
    ) -> Self {
        let (n_start, n_end) = (*range.start(), *range.end());
        Self {
            kind: WindowKind::Custom,
            m,
            n_start,
            n_end,
            values: range.map(f).collect(),
        }
    }

    /// Builds disjoint sub-windows of `chunk` indices concurrently and concatenates them.
    pub fn build_chunked(
        kind: WindowKind,
        m: u64,
        range: RangeInclusive<u64>,
        chunk: u64,
        tables: &SieveTables,
    ) -> Result<Self> {
        let (start, end) = (*range.start(), *range.end());
        let chunk = chunk.max(1);
        let starts: Vec<u64> = (start..=end).step_by(chunk as usize).collect();
        let parts = starts
            .par_iter()
            .map(|&s| Self::build(kind, m, s..=(s + chunk - 1).min(end), tables))
            .collect::<Result<Vec<_>>>()?;
        let mut it = parts.into_iter();
        let mut whole = it.next().expect("nonempty range");
        for part in it {
            whole.values.extend(part.values);
            whole.n_end = part.n_end;
        }
        Ok(whole)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: u64) -> Option<&BigRational> {
        n.checked_sub(self.n_start)
            .and_then(|i| self.values.get(i as usize))
    }

    /// Header row `# kind=…,m=…,range=a..b`, then `n,value_num,value_den`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(
            out,
            "# kind={},m={},range={}..{}",
            self.kind.label(),
            self.m,
            self.n_start,
            self.n_end
        )?;
        writeln!(out, "n,value_num,value_den")?;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(out, "{},{},{}", self.n_start + i as u64, v.numer(), v.denom())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_lengths_and_values() {
        let t = SieveTables::build(500).unwrap();
        let w = SequenceWindow::build(WindowKind::FPrime, 30, 1..=60, &t).unwrap();
        assert_eq!(w.len(), 60);
        assert!(w.values.iter().all(|v| v.is_integer()));
        assert_eq!(w.get(30).unwrap(), &BigRational::from_integer(1.into()));
        assert_eq!(w.get(31), w.get(1));

        let f = SequenceWindow::build(WindowKind::F, 2, 1..=6, &t).unwrap();
        let ints: Vec<i64> = f.values.iter().map(|v| v.to_integer().try_into().unwrap()).collect();
        assert_eq!(ints, vec![0, 1, 0, 1, 0, 1]);

        assert!(SequenceWindow::build(WindowKind::F, 2, 3..=2, &t).is_err());
        assert!(SequenceWindow::build(WindowKind::St, 12, 1..=2, &t).is_err());
    }

    #[test]
    fn chunked_build_is_identical() {
        let t = SieveTables::build(2000).unwrap();
        let whole = SequenceWindow::build(WindowKind::F, 30, 5..=400, &t).unwrap();
        let chunked = SequenceWindow::build_chunked(WindowKind::F, 30, 5..=400, 37, &t).unwrap();
        assert_eq!(whole, chunked);
    }

    #[test]
    fn csv_layout() {
        let t = SieveTables::build(100).unwrap();
        let w = SequenceWindow::build(WindowKind::St, 6, 4..=6, &t).unwrap();
        let mut buf = Vec::new();
        w.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "# kind=S_t,m=6,range=4..6\nn,value_num,value_den\n4,-1,1\n5,-1,1\n6,0,1\n"
        );
    }
}
