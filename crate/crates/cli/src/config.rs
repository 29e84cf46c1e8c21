//! Suite configuration: defaults, a `key = value` file format and
//! validation.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;

/// Largest harmonic degree accepted on the command line.
pub const MAX_LMAX: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub lmax: usize,
    pub grid_n: usize,
    pub radial_nodes: usize,
    pub samples: usize,
    pub seed: u64,
    pub tol_overrides: BTreeMap<String, f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            lmax: 8,
            grid_n: 1024,
            radial_nodes: 64,
            samples: 200,
            seed: 0,
            tol_overrides: BTreeMap::new(),
        }
    }
}

/// Values that may come from a file or from flags. `None` leaves the
/// current value in place.
#[derive(Debug, Clone, Default)]
pub struct ConfigPatch {
    pub lmax: Option<usize>,
    pub grid_n: Option<usize>,
    pub radial_nodes: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub tol_overrides: Vec<(String, f64)>,
}

impl SuiteConfig {
    pub fn apply(&mut self, patch: &ConfigPatch) {
        if let Some(v) = patch.lmax {
            self.lmax = v;
        }
        if let Some(v) = patch.grid_n {
            self.grid_n = v;
        }
        if let Some(v) = patch.radial_nodes {
            self.radial_nodes = v;
        }
        if let Some(v) = patch.samples {
            self.samples = v;
        }
        if let Some(v) = patch.seed {
            self.seed = v;
        }
        for (k, v) in &patch.tol_overrides {
            self.tol_overrides.insert(k.clone(), *v);
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.lmax == 0 || self.lmax > MAX_LMAX {
            bail!("lmax must be in 1..={MAX_LMAX}, got {}", self.lmax);
        }
        if self.grid_n < 64 || !self.grid_n.is_power_of_two() {
            bail!("grid_n must be a power of two >= 64, got {}", self.grid_n);
        }
        if self.radial_nodes < 16 {
            bail!("radial_nodes must be at least 16, got {}", self.radial_nodes);
        }
        if self.samples == 0 {
            bail!("samples must be positive");
        }
        for (name, tol) in &self.tol_overrides {
            if !(tol.is_finite() && *tol >= 0.0) {
                bail!("tolerance for {name} must be finite and non-negative, got {tol}");
            }
        }
        Ok(())
    }
}

/// Parses `name=value`.
pub fn parse_tol(s: &str) -> Result<(String, f64)> {
    let (name, value) = s.split_once('=').with_context(|| format!("expected name=value, got `{s}`"))?;
    let value: f64 = value.trim().parse().with_context(|| format!("bad tolerance in `{s}`"))?;
    Ok((name.trim().to_string(), value))
}

/// Reads `key = value` lines; `#` starts a comment. Tolerances are given as
/// `tol.<check name> = value`.
pub fn parse_config_text(text: &str) -> Result<ConfigPatch> {
    let mut patch = ConfigPatch::default();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .with_context(|| format!("line {}: expected key = value", no + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let ctx = || format!("line {}: bad value for {key}", no + 1);
        match key {
            "lmax" => patch.lmax = Some(value.parse().with_context(ctx)?),
            "grid_n" => patch.grid_n = Some(value.parse().with_context(ctx)?),
            "radial_nodes" => patch.radial_nodes = Some(value.parse().with_context(ctx)?),
            "samples" => patch.samples = Some(value.parse().with_context(ctx)?),
            "seed" => patch.seed = Some(value.parse().with_context(ctx)?),
            _ => match key.strip_prefix("tol.") {
                Some(name) => patch.tol_overrides.push((name.to_string(), value.parse().with_context(ctx)?)),
                None => bail!("line {}: unknown key `{key}`", no + 1),
            },
        }
    }
    Ok(patch)
}

pub fn read_config_file(path: &Path) -> Result<ConfigPatch> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_config_text(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let file = parse_config_text("# comment\nlmax = 6\nseed=9\ntol.groups.spinor_homomorphism = 1e-3\n").unwrap();
        let flags = ConfigPatch { lmax: Some(4), ..Default::default() };
        let mut cfg = SuiteConfig::default();
        cfg.apply(&file);
        cfg.apply(&flags);
        assert_eq!(cfg.lmax, 4);
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.tol_overrides["groups.spinor_homomorphism"], 1e-3);
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_config_text("nonsense").is_err());
        assert!(parse_config_text("colour = red").is_err());
        assert!(parse_config_text("lmax = many").is_err());
        assert!(parse_tol("x").is_err());
        let cfg = SuiteConfig { lmax: 40, ..Default::default() };
        assert!(cfg.validate().is_err());
        let cfg = SuiteConfig { grid_n: 1000, ..Default::default() };
        assert!(cfg.validate().is_err());
    }
}
