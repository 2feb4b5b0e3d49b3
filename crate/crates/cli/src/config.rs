//! Flat key-value configuration with sections.
//!
//! ```text
//! # comment
//! beta = 1.0            # top-level keys
//! [coeff]
//! a = const:0.05        # becomes coeff.a
//! c = poly:1.0,0.1      # c0 + c1 τ + …
//! b = table:b.csv       # CSV with a `tau` column and a column named b
//! ```
//!
//! Keys may also be written dotted at top level (`coeff.a = …`). Unknown
//! and duplicate keys are errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use quartic_core::oscillator_ode::{Coefficient, CoefficientModel, Spline, DEFAULT_GRID_N};

use crate::error::{CliError, Result};

pub const KNOWN_KEYS: [&str; 14] = [
    "beta",
    "phi0",
    "phiN",
    "mu_max",
    "grid_n",
    "coeff.a",
    "coeff.b",
    "coeff.c",
    "oracle.N_list",
    "oracle.samples",
    "oracle.seed",
    "tol.series",
    "tol.sigma",
    "tol.relative",
];

pub const DEFAULT_MU_MAX: usize = 2;
pub const DEFAULT_SAMPLES: usize = 1_000_000;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_TOL_SERIES: f64 = 1e-8;
pub const DEFAULT_TOL_SIGMA: f64 = 3.0;
pub const DEFAULT_TOL_RELATIVE: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub enum CoeffSpec {
    Const(f64),
    Poly(Vec<f64>),
    Table(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSettings {
    pub n_list: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// tail bound of the exact multi-sum relative to its value
    pub series: f64,
    /// discrepancy limit in units of combined error
    pub sigma: f64,
    /// relative agreement accepted regardless of the error bars
    pub relative: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub path: String,
    pub beta: f64,
    pub phi0: f64,
    pub phi_n: f64,
    pub mu_max: usize,
    pub grid_n: usize,
    pub coeff: [CoeffSpec; 3],
    /// None when `oracle.N_list` is absent
    pub oracle: Option<OracleSettings>,
    pub tol: Tolerances,
}

struct Raw {
    path: String,
    entries: BTreeMap<String, (usize, String)>,
}

impl Raw {
    fn parse(text: &str, path: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        let mut section = String::new();
        for (k, raw_line) in text.lines().enumerate() {
            let line_no = k + 1;
            let err = |msg: String| CliError::Syntax {
                path: path.to_string(),
                line: line_no,
                msg,
            };
            let line = strip_comment(raw_line).trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('[') {
                let name = rest.strip_suffix(']').ok_or_else(|| err("unterminated section header".into()))?.trim();
                if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(err(format!("invalid section name `{name}`")));
                }
                section = name.to_string();
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| err("expected `key = value`".into()))?;
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() {
                return Err(err("empty key".into()));
            }
            let full = if section.is_empty() { key.to_string() } else { format!("{section}.{key}") };
            if !KNOWN_KEYS.contains(&full.as_str()) {
                return Err(err(format!("unknown key `{full}`")));
            }
            if value.is_empty() {
                return Err(err(format!("empty value for `{full}`")));
            }
            if entries.insert(full.clone(), (line_no, value.to_string())).is_some() {
                return Err(err(format!("duplicate key `{full}`")));
            }
        }
        Ok(Raw {
            path: path.to_string(),
            entries,
        })
    }

    fn syntax(&self, key: &str, msg: String) -> CliError {
        CliError::Syntax {
            path: self.path.clone(),
            line: self.entries.get(key).map_or(0, |e| e.0),
            msg,
        }
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|e| e.1.as_str())
    }

    fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| CliError::MissingKey(key.to_string()))
    }

    fn parse_as<T: std::str::FromStr>(&self, key: &str, v: &str, what: &str) -> Result<T> {
        v.parse().map_err(|_| self.syntax(key, format!("`{key}` must be {what}, got `{v}`")))
    }

    fn real(&self, key: &str) -> Result<f64> {
        let v: f64 = self.parse_as(key, self.require(key)?, "a real number")?;
        if !v.is_finite() {
            return Err(self.syntax(key, format!("`{key}` must be finite")));
        }
        Ok(v)
    }

    fn real_or(&self, key: &str, default: f64) -> Result<f64> {
        if self.get(key).is_some() {
            self.real(key)
        } else {
            Ok(default)
        }
    }

    fn int_or<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T> {
        match self.get(key) {
            Some(v) => self.parse_as(key, v, "a non-negative integer"),
            None => Ok(default),
        }
    }

    fn coeff(&self, key: &str, base: &Path) -> Result<CoeffSpec> {
        let v = self.require(key)?;
        let (kind, body) = v
            .split_once(':')
            .ok_or_else(|| self.syntax(key, format!("`{key}` must be const:, poly: or table:, got `{v}`")))?;
        match kind.trim() {
            "const" => Ok(CoeffSpec::Const(self.parse_as(key, body.trim(), "a real number")?)),
            "poly" => {
                let cs = body
                    .split(',')
                    .map(|t| self.parse_as::<f64>(key, t.trim(), "a comma-separated list of reals"))
                    .collect::<Result<Vec<_>>>()?;
                Ok(CoeffSpec::Poly(cs))
            }
            "table" => {
                let p = Path::new(body.trim());
                Ok(CoeffSpec::Table(if p.is_absolute() { p.to_path_buf() } else { base.join(p) }))
            }
            other => Err(self.syntax(key, format!("unknown coefficient kind `{other}`"))),
        }
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

impl Config {
    /// Parses configuration text; `table:` paths resolve against `base`.
    pub fn parse(text: &str, path: &str, base: &Path) -> Result<Self> {
        let raw = Raw::parse(text, path)?;
        let beta = raw.real("beta")?;
        let phi0 = raw.real("phi0")?;
        let phi_n = raw.real("phiN")?;
        let coeff = [raw.coeff("coeff.a", base)?, raw.coeff("coeff.b", base)?, raw.coeff("coeff.c", base)?];
        let mu_max = raw.int_or("mu_max", DEFAULT_MU_MAX)?;
        let grid_n = raw.int_or("grid_n", DEFAULT_GRID_N)?;
        let oracle = match raw.get("oracle.N_list") {
            Some(list) => {
                let n_list = list
                    .split(',')
                    .map(|t| raw.parse_as::<usize>("oracle.N_list", t.trim(), "a comma-separated list of slice counts"))
                    .collect::<Result<Vec<_>>>()?;
                Some(OracleSettings {
                    n_list,
                    samples: raw.int_or("oracle.samples", DEFAULT_SAMPLES)?,
                    seed: raw.int_or("oracle.seed", DEFAULT_SEED)?,
                })
            }
            None => None,
        };
        let tol = Tolerances {
            series: raw.real_or("tol.series", DEFAULT_TOL_SERIES)?,
            sigma: raw.real_or("tol.sigma", DEFAULT_TOL_SIGMA)?,
            relative: raw.real_or("tol.relative", DEFAULT_TOL_RELATIVE)?,
        };
        Ok(Config {
            path: path.to_string(),
            beta,
            phi0,
            phi_n,
            mu_max,
            grid_n,
            coeff,
            oracle,
            tol,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        Config::parse(&text, &path.display().to_string(), base)
    }

    pub fn oracle(&self) -> Result<&OracleSettings> {
        self.oracle.as_ref().ok_or_else(|| CliError::MissingKey("oracle.N_list".into()))
    }

    pub fn model(&self) -> Result<CoefficientModel> {
        let names = ["a", "b", "c"];
        let mut cs = Vec::with_capacity(3);
        for (spec, name) in self.coeff.iter().zip(names) {
            cs.push(match spec {
                CoeffSpec::Const(v) => Coefficient::Constant(*v),
                CoeffSpec::Poly(p) => Coefficient::Polynomial(p.clone()),
                CoeffSpec::Table(path) => Coefficient::Tabulated(read_table(path, name)?),
            });
        }
        let c = cs.pop().unwrap();
        let b = cs.pop().unwrap();
        let a = cs.pop().unwrap();
        Ok(CoefficientModel::new(a, b, c, self.beta)?)
    }
}

/// Reads the `tau` column and the column named `name` (or `value`).
pub fn read_table(path: &Path, name: &str) -> Result<Spline> {
    let bad = |msg: String| CliError::Usage(format!("{}: {msg}", path.display()));
    let mut rdr = csv::Reader::from_path(path).map_err(|e| match e.into_kind() {
        csv::ErrorKind::Io(source) => CliError::Read {
            path: path.to_path_buf(),
            source,
        },
        other => bad(format!("{other:?}")),
    })?;
    let headers = rdr.headers().map_err(|e| bad(e.to_string()))?.clone();
    let col = |h: &str| headers.iter().position(|x| x.trim() == h);
    let t_col = col("tau").ok_or_else(|| bad("missing `tau` column".into()))?;
    let v_col = col(name)
        .or_else(|| col("value"))
        .ok_or_else(|| bad(format!("missing `{name}` column")))?;
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let num = |c: usize| -> Result<f64> {
            rec.get(c)
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| bad(format!("row {}: non-numeric entry", k + 2)))
        };
        xs.push(num(t_col)?);
        ys.push(num(v_col)?);
    }
    Ok(Spline::new(xs, ys)?)
}
