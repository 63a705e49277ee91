//! Flat TOML run configuration, resolved against command-line overrides.
//!
//! ```toml
//! mass = 1.0            # also accepted as `m`
//! omega = 0.0
//! eta = 0.5
//! chi = 0.0
//! lambda = 2.9          # verify only: replaces the constrained coupling
//! n = 1                 # or a list
//! l_min = 0
//! l_max = 0
//! k = 0.0               # or a list
//! grid_points = 4000
//! r_max = 10.0          # optional
//! branch = "minus"
//! chi_values = [0.0, 0.5, 1.0]   # scan
//! oracle_tol = 1e-4
//! quadrature_points = 400
//! out = "out"
//! ```

use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use qes_core::{Branch, Channel, PhysicalConfig};
use serde::Deserialize;

use crate::args::Overrides;
use crate::error::{config, Result};

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(v) => v,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(alias = "m")]
    pub mass: Option<f64>,
    pub omega: Option<f64>,
    pub eta: Option<f64>,
    pub chi: Option<f64>,
    pub lambda: Option<f64>,
    pub n: Option<OneOrMany<u32>>,
    pub l_min: Option<i64>,
    pub l_max: Option<i64>,
    pub k: Option<OneOrMany<f64>>,
    pub grid_points: Option<usize>,
    pub r_max: Option<f64>,
    pub branch: Option<String>,
    pub chi_values: Option<Vec<f64>>,
    pub oracle_tol: Option<f64>,
    pub quadrature_points: Option<usize>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| config(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| config(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> std::result::Result<Self, toml::de::Error> {
        toml::from_str(text)
    }
}

/// Fully resolved settings for one command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// `lambda` is 0 here; every command fixes it per channel.
    pub physical: PhysicalConfig,
    pub lambda_override: Option<f64>,
    /// Ascending, deduplicated.
    pub levels: Vec<u32>,
    pub l_range: RangeInclusive<i64>,
    /// Ascending, deduplicated.
    pub ks: Vec<f64>,
    pub grid_points: usize,
    pub r_max: Option<f64>,
    pub branch: Branch,
    pub chi_values: Vec<f64>,
    pub oracle_tol: f64,
    pub quadrature_points: usize,
    pub out: PathBuf,
}

pub const DEFAULT_GRID_POINTS: usize = 4000;

impl RunConfig {
    /// Defaults are the benchmark channel: m = 1, η = 1/2, ω = 0, χ = 0,
    /// n = 1, l = 0, k = 0.
    pub fn resolve(file: FileConfig, flags: &Overrides, scan: bool) -> Result<Self> {
        let mut chi = file.chi.unwrap_or(0.0);
        let mut chi_values = file.chi_values.unwrap_or_default();
        if scan {
            if !flags.chi.is_empty() {
                chi_values = flags.chi.clone();
            }
            if chi_values.is_empty() {
                chi_values = vec![chi];
            }
        } else {
            match flags.chi.as_slice() {
                [] => {}
                [x] => chi = *x,
                _ => return Err(config("chi: a list of values is only accepted by `scan`")),
            }
        }

        let physical = PhysicalConfig::new(
            file.mass.unwrap_or(1.0),
            file.omega.unwrap_or(0.0),
            0.0,
            file.eta.unwrap_or(0.5),
            chi,
        )?;

        let mut levels = if flags.n.is_empty() {
            file.n.map(OneOrMany::into_vec).unwrap_or_else(|| vec![1])
        } else {
            flags.n.clone()
        };
        levels.sort_unstable();
        levels.dedup();
        if levels.is_empty() {
            return Err(config("n: no levels given"));
        }
        if levels[0] == 0 {
            return Err(config("n: levels start at 1"));
        }

        let l_range = match &flags.l_range {
            Some(s) => parse_l_range(s)?,
            None => file.l_min.unwrap_or(0)..=file.l_max.unwrap_or(file.l_min.unwrap_or(0)),
        };
        if l_range.is_empty() {
            return Err(config(format!(
                "l_range: empty ({} > {})",
                l_range.start(),
                l_range.end()
            )));
        }

        let mut ks = if flags.k.is_empty() {
            file.k.map(OneOrMany::into_vec).unwrap_or_else(|| vec![0.0])
        } else {
            flags.k.clone()
        };
        finite("k", &ks)?;
        finite("chi_values", &chi_values)?;
        ks.sort_by(f64::total_cmp);
        ks.dedup();
        if ks.is_empty() {
            return Err(config("k: no values given"));
        }

        let grid_points = flags.grid_points.or(file.grid_points).unwrap_or(DEFAULT_GRID_POINTS);
        if grid_points == 0 {
            return Err(config("grid_points: must be at least 1"));
        }
        let r_max = flags.r_max.or(file.r_max);
        if let Some(r) = r_max {
            if !(r.is_finite() && r > 0.0) {
                return Err(config(format!("r_max: must be finite and > 0, got {r}")));
            }
        }
        let lambda_override = flags.lambda.or(file.lambda);
        if let Some(l) = lambda_override {
            finite("lambda", &[l])?;
        }
        let branch_label = flags.branch.clone().or(file.branch).unwrap_or_else(|| "minus".into());
        let branch = Branch::from_str(&branch_label).map_err(|e| config(format!("branch: {e}")))?;
        let oracle_tol = file.oracle_tol.unwrap_or(1e-4);
        if !(oracle_tol.is_finite() && oracle_tol > 0.0) {
            return Err(config("oracle_tol: must be finite and > 0"));
        }
        let quadrature_points = file.quadrature_points.unwrap_or(400);
        if quadrature_points == 0 {
            return Err(config("quadrature_points: must be at least 1"));
        }

        Ok(Self {
            physical,
            lambda_override,
            levels,
            l_range,
            ks,
            grid_points,
            r_max,
            branch,
            chi_values,
            oracle_tol,
            quadrature_points,
            out: flags.out.clone().or(file.out).unwrap_or_else(|| PathBuf::from(".")),
        })
    }

    /// Every (n, l, k), ordered by n, then l, then k.
    pub fn channels(&self) -> Result<Vec<Channel>> {
        let mut out = Vec::new();
        for &n in &self.levels {
            for l in self.l_range.clone() {
                for &k in &self.ks {
                    out.push(Channel::new(l, k, n)?);
                }
            }
        }
        Ok(out)
    }
}

fn finite(field: &str, values: &[f64]) -> Result<()> {
    match values.iter().find(|x| !x.is_finite()) {
        Some(x) => Err(config(format!("{field}: must be finite, got {x}"))),
        None => Ok(()),
    }
}

/// `lo:hi`, `lo..hi` (both inclusive) or a single value.
pub fn parse_l_range(s: &str) -> Result<RangeInclusive<i64>> {
    let bad = || config(format!("l_range: cannot parse `{s}` (expected lo:hi or a single integer)"));
    let parts: Vec<&str> = if let Some((a, b)) = s.split_once("..=") {
        vec![a, b]
    } else if let Some((a, b)) = s.split_once("..") {
        vec![a, b]
    } else if let Some((a, b)) = s.split_once(':') {
        vec![a, b]
    } else {
        vec![s, s]
    };
    let lo: i64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: i64 = parts[1].trim().parse().map_err(|_| bad())?;
    Ok(lo..=hi)
}
