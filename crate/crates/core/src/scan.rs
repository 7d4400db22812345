//! Parameter sweeps and their tabular CSV / JSON form.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::closed_forms::{bell_max_psi_nm, entropy_equal_weight, entropy_psi_nm};
use crate::error::{Error, Result};
use crate::fock::entanglement_entropy;
use crate::states::{build_psi_nm, build_superposition, PsiNmParams, SuperpositionSpec};

/// Agreement required between closed-form and operator entropies in `--verify` sweeps.
pub const VERIFY_TOLERANCE: f64 = 1e-10;

/// Named columns of finite numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl ScanResult {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::InvalidParams(format!(
                "row has {} entries, expected {}",
                row.len(),
                self.columns.len()
            )));
        }
        if let Some(x) = row.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidParams(format!("non-finite value {x} in row")));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    /// Header plus one line per row, comma separated, LF terminated. Numbers
    /// use the shortest representation that parses back to the same `f64`.
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, x) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write!(out, "{x}").expect("writing to a String");
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(text.as_bytes());
        let bad = |e: csv::Error| Error::InvalidParams(format!("csv: {e}"));
        let columns: Vec<String> = reader.headers().map_err(bad)?.iter().map(str::to_owned).collect();
        let mut out = Self::new(columns);
        for record in reader.records() {
            let record = record.map_err(bad)?;
            let row = record
                .iter()
                .map(|f| {
                    f.parse::<f64>()
                        .map_err(|_| Error::InvalidParams(format!("csv: bad number {f:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            out.push(row)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("finite values serialize")
    }
}

/// Inclusive linear grid of `count` points from `start` to `stop`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        if count == 0 || !start.is_finite() || !stop.is_finite() {
            return Err(Error::InvalidParams("grid needs finite bounds and count >= 1".into()));
        }
        Ok(Self { start, stop, count })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.start + step * i as f64).collect()
    }
}

fn check_agreement(what: &str, closed: f64, oracle: f64) -> Result<()> {
    if (closed - oracle).abs() > VERIFY_TOLERANCE {
        return Err(Error::Verification(format!(
            "{what}: closed form {closed} disagrees with operator value {oracle}"
        )));
    }
    Ok(())
}

/// `gamma,entropy,defined` for the basis family. With `verify`, every row is
/// checked against the reduced-density entropy of `|psi_30>`.
pub fn scan_entropy_single(gammas: &[f64], verify: bool) -> Result<ScanResult> {
    let mut out = ScanResult::new(["gamma", "entropy", "defined"]);
    for &g in gammas {
        let e = entropy_psi_nm(g);
        if verify {
            let s = build_psi_nm(&PsiNmParams::new(3, 0, g, 0.0)?)?;
            check_agreement(&format!("gamma = {g}"), e, entanglement_entropy(&s)?)?;
        }
        out.push(vec![g, e, 1.0])?;
    }
    Ok(out)
}

/// `gamma,N,entropy,defined` for the equal-weight superpositions. Points where
/// the state cancels are emitted with `entropy = 0, defined = 0`.
pub fn scan_entropy_equal_weight(gammas: &[f64], ns: &[u32], verify: bool) -> Result<ScanResult> {
    let mut out = ScanResult::new(["gamma", "N", "entropy", "defined"]);
    for &g in gammas {
        for &n in ns {
            match entropy_equal_weight(n, g) {
                Ok(e) => {
                    if verify {
                        let s = build_superposition(&SuperpositionSpec::equal_weight(n, g))?;
                        check_agreement(&format!("N = {n}, gamma = {g}"), e, entanglement_entropy(&s)?)?;
                    }
                    out.push(vec![g, f64::from(n), e, 1.0])?;
                }
                Err(Error::ZeroNorm) => out.push(vec![g, f64::from(n), 0.0, 0.0])?,
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

/// `gamma,theta_m,bell_max` with `bell_max = 2 sqrt(1 + K^2)`.
pub fn scan_bell(gammas: &[f64], thetas: &[f64]) -> ScanResult {
    let mut out = ScanResult::new(["gamma", "theta_m", "bell_max"]);
    for &g in gammas {
        for &t in thetas {
            out.push(vec![g, t, bell_max_psi_nm(t, g)])
                .expect("bell_max is finite for finite angles");
        }
    }
    out
}

/// `theta_b,bell` rows from a slice curve.
pub fn slice_table(curve: &[(f64, f64)]) -> Result<ScanResult> {
    let mut out = ScanResult::new(["theta_b", "bell"]);
    for &(tb, b) in curve {
        out.push(vec![tb, b])?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    #[test]
    fn row_shape_and_finiteness() {
        let mut r = ScanResult::new(["a", "b"]);
        assert!(r.push(vec![1.0]).is_err());
        assert!(r.push(vec![1.0, f64::NAN]).is_err());
        r.push(vec![1.0, 2.5]).unwrap();
        assert_eq!(r.to_csv(), "a,b\n1,2.5\n");
    }

    #[test]
    fn csv_parse_back() {
        let text = "gamma,entropy,defined\n0,0,1\n0.7853981633974483,1,1\n";
        let r = ScanResult::from_csv(text).unwrap();
        assert_eq!(r.rows[1][0], FRAC_PI_4);
        assert_eq!(r.to_csv(), text);
        assert!(ScanResult::from_csv("a\nx\n").is_err());
    }

    #[test]
    fn grid_values() {
        assert_eq!(Grid::new(0.0, 1.0, 3).unwrap().values(), vec![0.0, 0.5, 1.0]);
        assert_eq!(Grid::new(2.0, 5.0, 1).unwrap().values(), vec![2.0]);
        assert!(Grid::new(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn entropy_scans() {
        let r = scan_entropy_single(&[0.0, FRAC_PI_4], true).unwrap();
        assert_eq!(r.columns, ["gamma", "entropy", "defined"]);
        assert!((r.rows[1][1] - 1.0).abs() < 1e-12);

        let r = scan_entropy_equal_weight(&[0.0, 3.0 * FRAC_PI_4], &[1, 4], true).unwrap();
        assert_eq!(r.rows.len(), 4);
        assert!((r.rows[1][2] - 2.321928094887362).abs() < 1e-12);
        assert_eq!(r.rows[2], vec![3.0 * FRAC_PI_4, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn bell_scan_values() {
        let r = scan_bell(&[FRAC_PI_4, PI / 2.0], &[0.0, 1.0]);
        assert!((r.rows[0][2] - 2.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!((r.rows[2][2] - 2.0).abs() < 1e-12);
        assert!((r.rows[3][2] - 2.0).abs() < 1e-12);
    }
}
