//! Flat TOML configuration, e.g.
//!
//! ```toml
//! mode = "sweep"
//! q = [13, 17, 19]
//! density = [0.3, 0.5]
//! seed = [0, 1, 2, 3, 4]
//! budget = 10000000000
//! group = "so"
//! out = "sweep.csv"
//! ```
//!
//! `q`, `density` and `seed` take a single value or a list.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::congruence::{Group, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::field::is_prime;

/// `C` in the density floor `rho >= C / sqrt(q)`.
pub const DENSITY_CONSTANT: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Hinges,
    Triangles,
    Spheres,
    Charsum,
    Counterexample,
    Sweep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
enum GroupName {
    So,
    O,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v],
            OneOrMany::Many(v) => v,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    mode: Mode,
    q: OneOrMany<u64>,
    #[serde(default)]
    density: Option<OneOrMany<f64>>,
    #[serde(default)]
    seed: Option<OneOrMany<u64>>,
    #[serde(default)]
    budget: Option<u64>,
    #[serde(default)]
    group: Option<GroupName>,
    #[serde(default)]
    out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    pub q: Vec<u64>,
    pub density: Vec<f64>,
    pub seed: Vec<u64>,
    pub budget: u128,
    /// Restricts orbit counting to one group when set.
    pub group: Option<Group>,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(mode: Mode, q: Vec<u64>, density: Vec<f64>, seed: Vec<u64>) -> Result<Self> {
        let config = Self {
            mode,
            q,
            density,
            seed,
            budget: DEFAULT_BUDGET,
            group: None,
            out: None,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.message().to_string()))?;
        let config = Self {
            mode: raw.mode,
            q: raw.q.into_vec(),
            density: raw.density.map_or_else(|| vec![1.0], OneOrMany::into_vec),
            seed: raw.seed.map_or_else(|| vec![0], OneOrMany::into_vec),
            budget: raw.budget.map_or(DEFAULT_BUDGET, u128::from),
            group: raw.group.map(|g| match g {
                GroupName::So => Group::Special,
                GroupName::O => Group::Orthogonal,
            }),
            out: raw.out,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.q.is_empty() || self.density.is_empty() || self.seed.is_empty() {
            return Err(Error::Config("q, density and seed must be nonempty".into()));
        }
        if let Some(q) = self.q.iter().find(|&&q| q < 3 || !is_prime(q)) {
            return Err(Error::Config(format!("q = {q} is not an odd prime")));
        }
        if let Some(rho) = self.density.iter().find(|&&r| !(r > 0.0 && r <= 1.0)) {
            return Err(Error::Config(format!("density {rho} is not in (0, 1]")));
        }
        if self.budget == 0 {
            return Err(Error::Config("budget must be positive".into()));
        }
        Ok(())
    }

    /// `(q, rho)` cells below `C / sqrt(q)`; these are reported, not refused.
    pub fn below_density_floor(&self) -> Vec<(u64, f64)> {
        let mut out = Vec::new();
        for &q in &self.q {
            for &rho in &self.density {
                if rho < DENSITY_CONSTANT / (q as f64).sqrt() {
                    out.push((q, rho));
                }
            }
        }
        out
    }
}
