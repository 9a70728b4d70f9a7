//! Densities sampled on a uniform grid, with a CSV form.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Values on x_i = −L + i·dx, dx = 2L/N, i = 0..N.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub half_width: f64,
    pub x0: f64,
    pub dx: f64,
    pub t: f64,
    pub spec: String,
    pub formula_id: String,
    pub values: Vec<f64>,
}

impl DensityProfile {
    pub fn new(
        half_width: f64,
        n: usize,
        t: f64,
        spec: &str,
        formula_id: &str,
        values: Vec<f64>,
    ) -> Result<Self> {
        if !(half_width > 0.0) || n < 2 || values.len() != n {
            return Err(Error::InvalidParameter(format!(
                "grid needs L > 0 and N >= 2 values, got L = {half_width}, N = {n}, {} values",
                values.len()
            )));
        }
        Ok(Self {
            half_width,
            x0: -half_width,
            dx: 2.0 * half_width / n as f64,
            t,
            spec: spec.to_string(),
            formula_id: formula_id.to_string(),
            values,
        })
    }

    /// Samples `f` at every node.
    pub fn sample<F>(
        half_width: f64,
        n: usize,
        t: f64,
        spec: &str,
        formula_id: &str,
        mut f: F,
    ) -> Result<Self>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let dx = 2.0 * half_width / n as f64;
        let values = (0..n)
            .map(|i| f(-half_width + i as f64 * dx))
            .collect::<Result<Vec<_>>>()?;
        Self::new(half_width, n, t, spec, formula_id, values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(|i| self.x(i))
    }

    /// Index of the node at `x`, if `x` is a node.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let k = (x - self.x0) / self.dx;
        let r = k.round();
        ((k - r).abs() < 1e-9 && r >= 0.0 && (r as usize) < self.values.len()).then_some(r as usize)
    }

    pub fn mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.dx
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
        if self.values.len() != other.values.len() {
            return Err(Error::GridMismatch(format!(
                "N = {} vs {}",
                self.values.len(),
                other.values.len()
            )));
        }
        if !close(self.half_width, other.half_width) {
            return Err(Error::GridMismatch(format!(
                "L = {} vs {}",
                self.half_width, other.half_width
            )));
        }
        if !close(self.t, other.t) {
            return Err(Error::GridMismatch(format!(
                "t = {} vs {}",
                self.t, other.t
            )));
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# spec = {}", self.spec);
        let _ = writeln!(s, "# t = {:.17e}", self.t);
        let _ = writeln!(s, "# grid = {:.17e} {}", self.half_width, self.values.len());
        let _ = writeln!(s, "# formula = {}", self.formula_id);
        s.push_str("x,value\n");
        for (x, v) in self.xs().zip(&self.values) {
            let _ = writeln!(s, "{x:.16e},{v:.16e}");
        }
        s
    }
}

impl FromStr for DensityProfile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut spec = String::new();
        let mut formula = String::new();
        let mut t = None;
        let mut grid = None;
        let mut values = Vec::new();
        let bad = |line: usize, msg: &str| Error::Parse(format!("line {line}: {msg}"));
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            let line = line.trim();
            if line.is_empty() || line == "x,value" {
                continue;
            }
            if let Some(h) = line.strip_prefix('#') {
                let Some((k, v)) = h.split_once('=') else {
                    continue;
                };
                let v = v.trim();
                match k.trim() {
                    "spec" => spec = v.to_string(),
                    "formula" => formula = v.to_string(),
                    "t" => t = Some(v.parse::<f64>().map_err(|_| bad(ln, "bad t"))?),
                    "grid" => {
                        let mut it = v.split_whitespace();
                        let l = it.next().and_then(|a| a.parse::<f64>().ok());
                        let n = it.next().and_then(|a| a.parse::<usize>().ok());
                        match (l, n) {
                            (Some(l), Some(n)) => grid = Some((l, n)),
                            _ => return Err(bad(ln, "grid header needs `L N`")),
                        }
                    }
                    _ => {}
                }
                continue;
            }
            let (_, v) = line
                .split_once(',')
                .ok_or_else(|| bad(ln, "expected `x,value`"))?;
            values.push(v.trim().parse::<f64>().map_err(|_| bad(ln, "bad value"))?);
        }
        let (l, n) = grid.ok_or_else(|| Error::Parse("missing grid header".into()))?;
        let t = t.ok_or_else(|| Error::Parse("missing t header".into()))?;
        if values.len() != n {
            return Err(Error::Parse(format!(
                "grid header says {n} rows, found {}",
                values.len()
            )));
        }
        Self::new(l, n, t, &spec, &formula, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let p = DensityProfile::sample(5.0, 32, 0.75, "{(2,0,1)}", "closed", |x| {
            Ok((-x * x).exp() / 3.0)
        })
        .unwrap();
        let q: DensityProfile = p.to_csv().parse().unwrap();
        assert_eq!(p, q);
        assert_eq!(p.index_of(0.0), Some(16));
    }

    #[test]
    fn csv_errors() {
        assert!("x,value\n0,1\n".parse::<DensityProfile>().is_err());
        let e = "# t = 1\n# grid = 1 2\nx,value\n-1,0\n0,zz\n".parse::<DensityProfile>();
        assert!(matches!(e, Err(Error::Parse(m)) if m.contains("line 5")));
    }
}
