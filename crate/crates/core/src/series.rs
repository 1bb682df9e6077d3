//! Sampled counting functions `N(B)` and their CSV form.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::sig15;

/// A sampled counting function: pairs `(B, N(B))` with strictly increasing
/// `B` and nondecreasing `N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountSeries {
    pub samples: Vec<(f64, u64)>,
}

impl CountSeries {
    pub fn new(samples: Vec<(f64, u64)>) -> Result<Self> {
        for w in samples.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::validation("sample bounds must strictly increase".to_string()));
            }
            if w[1].1 < w[0].1 {
                return Err(Error::validation(
                    "counts must be nondecreasing in the bound".to_string(),
                ));
            }
        }
        if samples.iter().any(|&(b, _)| b < 1.0) {
            return Err(Error::validation("sample bounds must be >= 1".to_string()));
        }
        Ok(CountSeries { samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "B,N")?;
        for &(b, n) in &self.samples {
            writeln!(w, "{},{}", format_bound(b), n)?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a vec cannot fail");
        String::from_utf8(buf).expect("csv is ascii")
    }

    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut samples = Vec::new();
        for (i, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if i == 0 {
                if line != "B,N" {
                    return Err(Error::Parse {
                        line: 1,
                        message: format!("expected header \"B,N\", got {line:?}"),
                    });
                }
                continue;
            }
            let (b, n) = line.split_once(',').ok_or(Error::Parse {
                line: i + 1,
                message: "expected two comma-separated fields".to_string(),
            })?;
            let b: f64 = b.trim().parse().map_err(|e| Error::Parse {
                line: i + 1,
                message: format!("bad bound: {e}"),
            })?;
            let n: u64 = n.trim().parse().map_err(|e| Error::Parse {
                line: i + 1,
                message: format!("bad count: {e}"),
            })?;
            samples.push((b, n));
        }
        CountSeries::new(samples)
    }
}

fn format_bound(b: f64) -> String {
    if b.fract() == 0.0 && b.abs() < 1e15 {
        format!("{}", b as i64)
    } else {
        format!("{}", sig15(b))
    }
}

/// Half-decade sample bounds `10, 10^1.5, 100, …` up to and including
/// `bound` (appended if not already a sample point).
pub fn half_decade_samples(bound: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut exp = 1.0f64;
    loop {
        let b = 10f64.powf(exp).round();
        if b > bound {
            break;
        }
        out.push(b);
        exp += 0.5;
    }
    if out.last().is_none_or(|&l| l < bound) {
        out.push(bound);
    }
    out
}

/// Decade sample bounds `10, 100, …` up to and including `bound`.
pub fn decade_samples(bound: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut b = 10.0f64;
    while b <= bound {
        out.push(b);
        b *= 10.0;
    }
    if out.last().is_none_or(|&l| l < bound) {
        out.push(bound);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let s = CountSeries::new(vec![(10.0, 4), (100.0, 40), (1000.0, 400)]).unwrap();
        let text = s.to_csv_string();
        assert!(text.starts_with("B,N\n10,4\n"));
        let back = CountSeries::read_csv(text.as_bytes()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn monotonicity_enforced() {
        assert!(CountSeries::new(vec![(10.0, 5), (20.0, 4)]).is_err());
        assert!(CountSeries::new(vec![(10.0, 5), (10.0, 6)]).is_err());
        assert!(CountSeries::new(vec![(0.5, 0)]).is_err());
    }

    #[test]
    fn sample_grids() {
        assert_eq!(decade_samples(1000.0), vec![10.0, 100.0, 1000.0]);
        assert_eq!(decade_samples(1500.0), vec![10.0, 100.0, 1000.0, 1500.0]);
        let half = half_decade_samples(100.0);
        assert_eq!(half, vec![10.0, 32.0, 100.0]);
    }

    #[test]
    fn bad_header_rejected() {
        let err = CountSeries::read_csv("bound,count\n1,2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }
}
