//! Registry of verification checks. Each check returns a residual that is
//! compared against its tolerance; checks draw randomness only from the
//! generator handed to them, which is seeded from the master seed and the
//! check's name.

use anyhow::Result;
use rand_chacha::ChaCha8Rng;

use rp2q::manifold::quadrature::MAX_LMAX;
use rp2q::manifold::{build_quadrature, QuadratureGrid};

use crate::config::SuiteConfig;

mod berry_robbins;
mod bundles;
mod classical;
mod groups;
mod harmonics;
mod heisenberg;
mod manifold;
mod representation;

pub type CheckFn = fn(&SuiteConfig, &mut ChaCha8Rng) -> Result<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Suite {
    Groups,
    Manifold,
    Harmonics,
    Bundles,
    Representation,
    Classical,
    Heisenberg,
    BerryRobbins,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Groups => "groups",
            Suite::Manifold => "manifold",
            Suite::Harmonics => "harmonics",
            Suite::Bundles => "bundles",
            Suite::Representation => "representation",
            Suite::Classical => "classical",
            Suite::Heisenberg => "heisenberg",
            Suite::BerryRobbins => "berry-robbins",
            Suite::All => "all",
        }
    }

    pub fn contains(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Clone, Copy)]
pub struct Check {
    pub name: &'static str,
    pub suite: Suite,
    pub anchor: &'static str,
    pub tolerance: f64,
    pub run: CheckFn,
}

impl std::fmt::Debug for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Check").field("name", &self.name).field("tolerance", &self.tolerance).finish()
    }
}

/// Every check, in report order.
pub fn registry() -> Vec<Check> {
    let mut all = Vec::new();
    all.extend(groups::checks());
    all.extend(manifold::checks());
    all.extend(harmonics::checks());
    all.extend(bundles::checks());
    all.extend(representation::checks());
    all.extend(classical::checks());
    all.extend(heisenberg::checks());
    all.extend(berry_robbins::checks());
    all
}

pub fn checks_for(suite: Suite) -> Vec<Check> {
    registry().into_iter().filter(|c| suite.contains(c.suite)).collect()
}

/// Quadrature grid for sections of degree `cfg.lmax`, with two spare
/// degrees so rotation leakage above `lmax` is visible.
pub(crate) fn sphere_grid(cfg: &SuiteConfig) -> Result<QuadratureGrid<f64>> {
    Ok(build_quadrature((cfg.lmax + 2).min(MAX_LMAX))?)
}

/// Largest of a set of residuals, zero when empty.
pub(crate) fn max_of<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn names_are_unique_and_prefixed() {
        let reg = registry();
        let names: BTreeSet<_> = reg.iter().map(|c| c.name).collect();
        assert_eq!(names.len(), reg.len());
        for c in &reg {
            let prefix = c.suite.name().replace('-', "_");
            assert!(c.name.starts_with(&format!("{prefix}.")), "{}", c.name);
            assert!(!c.anchor.is_empty());
            assert!(c.tolerance >= 0.0);
        }
    }

    #[test]
    fn every_suite_has_checks() {
        use clap::ValueEnum;
        for s in Suite::value_variants() {
            assert!(!checks_for(*s).is_empty(), "{}", s.name());
        }
    }
}
