//! Run configuration: an optional JSON file merged with command-line flags.
//! Flags win over file values.

use crate::error::CliError;
use lifshitz::matsubara::PlateConfig;
use lifshitz::models::{DielectricModel, Oscillator};
use lifshitz::optics::{read_table_csv, TabulatedPermittivity};
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::str::FromStr;

pub const MIN_TOL: f64 = 1e-12;
pub const MAX_TOL: f64 = 1e-3;
pub const DEFAULT_TOL: f64 = 1e-10;

/// `LO:HI:N`, N ≥ 2 points, HI > LO > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected LO:HI:N, got {s:?}"));
        }
        let lo: f64 = parts[0].trim().parse().map_err(|e| format!("LO in {s:?}: {e}"))?;
        let hi: f64 = parts[1].trim().parse().map_err(|e| format!("HI in {s:?}: {e}"))?;
        let n: usize = parts[2].trim().parse().map_err(|e| format!("N in {s:?}: {e}"))?;
        if n < 2 {
            return Err(format!("a range needs at least 2 points, got {n}"));
        }
        if !(lo > 0.0 && hi > lo && hi.is_finite()) {
            return Err(format!("a range needs 0 < LO < HI, got {lo}:{hi}"));
        }
        Ok(Range { lo, hi, n })
    }
}

impl<'de> Deserialize<'de> for Range {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Range {
    /// Evenly spaced points including both ends.
    pub fn linear(&self) -> Vec<f64> {
        let step = (self.hi - self.lo) / (self.n - 1) as f64;
        (0..self.n).map(|k| if k + 1 == self.n { self.hi } else { self.lo + step * k as f64 }).collect()
    }

    /// Log-spaced points including both ends.
    pub fn logarithmic(&self) -> Vec<f64> {
        let r = (self.hi / self.lo).ln() / (self.n - 1) as f64;
        (0..self.n).map(|k| if k + 1 == self.n { self.hi } else { self.lo * (r * k as f64).exp() }).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// One plate's material.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    Constant { eps0: f64 },
    Dilute { eta: f64 },
    Oscillators { terms: Vec<Oscillator> },
    /// CSV optical table (`omega_rad_s,n1,n2` or `omega_rad_s,im_eps`),
    /// relative paths resolved against the config file's directory.
    Tabulated { table: PathBuf, xi_min: f64 },
}

impl ModelSpec {
    pub fn build(&self, field: &str) -> Result<DielectricModel, CliError> {
        let named = |e: lifshitz::Error| CliError::Config(format!("{field}: {e}"));
        match self {
            ModelSpec::Constant { eps0 } => DielectricModel::constant(*eps0).map_err(named),
            ModelSpec::Dilute { eta } => DielectricModel::dilute(*eta).map_err(named),
            ModelSpec::Oscillators { terms } => DielectricModel::oscillators(terms.clone()).map_err(named),
            ModelSpec::Tabulated { table, xi_min } => {
                let t = read_table(table).map_err(|e| CliError::Config(format!("{field}.table: {e}")))?;
                Ok(DielectricModel::tabulated(TabulatedPermittivity::new(t, *xi_min).map_err(named)?))
            }
        }
    }

    fn resolve(&mut self, base: &Path) {
        if let ModelSpec::Tabulated { table, .. } = self {
            if table.is_relative() {
                *table = base.join(&*table);
            }
        }
    }
}

pub fn read_table(path: &Path) -> Result<lifshitz::optics::OpticalTable, String> {
    let f = File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
    read_table_csv(BufReader::new(f)).map_err(|e| e.to_string())
}

/// Contents of the JSON config file; every field optional.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub plates: Option<[ModelSpec; 2]>,
    pub a: Option<f64>,
    #[serde(rename = "T")]
    pub t: Option<f64>,
    pub a_range: Option<Range>,
    #[serde(rename = "T_range")]
    pub t_range: Option<Range>,
    pub tol: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub table: Option<PathBuf>,
    pub xi_range: Option<Range>,
    pub suite: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let mut cfg: FileConfig =
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        if let Some(plates) = cfg.plates.as_mut() {
            for p in plates.iter_mut() {
                p.resolve(base);
            }
        }
        if let Some(t) = cfg.table.as_mut() {
            if t.is_relative() {
                *t = base.join(&*t);
            }
        }
        Ok(cfg)
    }

    /// Flag values override file values field by field.
    pub fn overlay(mut self, flags: FileConfig) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if flags.$f.is_some() { self.$f = flags.$f; } )* };
        }
        take!(plates, a, t, a_range, t_range, tol, format, out, table, xi_range, suite);
        self
    }

    pub fn tolerance(&self) -> Result<f64, CliError> {
        let tol = self.tol.unwrap_or(DEFAULT_TOL);
        if !(tol >= MIN_TOL && tol <= MAX_TOL) {
            return Err(CliError::Config(format!("tol: must lie in [{MIN_TOL:e}, {MAX_TOL:e}], got {tol:e}")));
        }
        Ok(tol)
    }

    pub fn models(&self) -> Result<(DielectricModel, DielectricModel), CliError> {
        let plates = self.plates.as_ref().ok_or_else(|| CliError::Config("plates: missing (two material entries)".into()))?;
        Ok((plates[0].build("plates[0]")?, plates[1].build("plates[1]")?))
    }

    pub fn separation(&self) -> Result<f64, CliError> {
        self.a.ok_or_else(|| CliError::Config("a: missing separation (m)".into()))
    }

    pub fn temperature(&self) -> Result<f64, CliError> {
        self.t.ok_or_else(|| CliError::Config("T: missing temperature (K)".into()))
    }

    pub fn plate_config(&self) -> Result<PlateConfig, CliError> {
        let (m1, m2) = self.models()?;
        PlateConfig::new(m1, m2, self.separation()?, self.temperature()?).map_err(|e| CliError::Config(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        let r: Range = "10:300:30".parse().unwrap();
        assert_eq!(r.linear().len(), 30);
        assert_eq!(r.linear()[29], 300.0);
        assert!("10:300:1".parse::<Range>().is_err());
        assert!("300:10:5".parse::<Range>().is_err());
        assert!("a:b".parse::<Range>().is_err());
        let g = "1e-7:1e-5:3".parse::<Range>().unwrap().logarithmic();
        assert!((g[1] - 1e-6).abs() < 1e-18);
    }

    #[test]
    fn flags_win() {
        let file = FileConfig { a: Some(1e-6), t: Some(300.0), ..Default::default() };
        let flags = FileConfig { t: Some(10.0), ..Default::default() };
        let merged = file.overlay(flags);
        assert_eq!(merged.a, Some(1e-6));
        assert_eq!(merged.t, Some(10.0));
    }

    #[test]
    fn schema_names_bad_fields() {
        let err = serde_json::from_str::<FileConfig>(r#"{"plates": [{"kind": "constant", "eps": 2}, {"kind": "vacuum"}]}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("eps"), "{err}");
        let ok: FileConfig = serde_json::from_str(
            r#"{"plates": [{"kind": "constant", "eps0": 11.66}, {"kind": "oscillators", "terms": [{"strength": 2.84, "omega": 2e16}]}], "T_range": "10:300:30"}"#,
        )
        .unwrap();
        assert_eq!(ok.t_range.unwrap().n, 30);
    }

    #[test]
    fn tolerance_bounds() {
        let c = FileConfig { tol: Some(1e-13), ..Default::default() };
        assert!(c.tolerance().is_err());
        assert_eq!(FileConfig::default().tolerance().unwrap(), DEFAULT_TOL);
    }
}
