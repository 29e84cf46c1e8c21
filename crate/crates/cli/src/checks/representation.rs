use anyhow::{bail, Result};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rp2q::bundles::BundleChoice;
use rp2q::finite_diff::DEFAULT_STEP;
use rp2q::harmonics::{rotate_coeffs_raw, rotation_leakage, HarmonicCoeffs, SphereBasis};
use rp2q::manifold::{build_quadrature, WFunctional};
use rp2q::representation::canonical::{
    check_group_law, unitarity_defect, CanonicalElement, CanonicalGrids, FullSection, RadialGrid,
};
use rp2q::representation::{act_u, check_intertwining, closure_residual, exchange_eigenvalue, generator_error, Section};
use rp2q::sampling::{random_coeffs, random_su2, random_w_functional};

use super::{sphere_grid, Check, Suite};
use crate::config::SuiteConfig;

const GENERATORS: &str = "infinitesimal generators of the SU(2) action on sections";
const CANONICAL: &str = "canonical group acting on sections over R3";

pub(super) fn checks() -> Vec<Check> {
    let c = |name, anchor, tolerance, run| Check { name, suite: Suite::Representation, anchor, tolerance, run };
    vec![
        c("representation.generator_matches_l", GENERATORS, 1e-8, generator_matches_l),
        c("representation.intertwining", GENERATORS, 1e-7, intertwining),
        c("representation.su2_closure", GENERATORS, 1e-6, su2_closure),
        c("representation.exchange_statistics", "exchange symmetry of the two bundles", 1e-10, exchange_statistics),
        c("representation.canonical_unitarity", CANONICAL, 1e-6, canonical_unitarity),
        c("representation.canonical_group_law", CANONICAL, 1e-6, canonical_group_law),
    ]
}

fn random_section(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, bundle: BundleChoice) -> Result<Section<f64>> {
    let a: HarmonicCoeffs<f64> = random_coeffs(rng, cfg.lmax, bundle.sector());
    Ok(Section::new(a, bundle)?)
}

fn both_bundles(k: usize) -> BundleChoice {
    if k.is_multiple_of(2) {
        BundleChoice::LMinus
    } else {
        BundleChoice::LPlus
    }
}

/// Finite-difference generators against exact `L_i` on random odd sections.
fn generator_matches_l(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let grid = sphere_grid(cfg)?;
    let mut worst = 0.0f64;
    for _ in 0..(cfg.samples / 4).max(5) {
        let s = random_section(cfg, rng, BundleChoice::LMinus)?;
        for i in 1..=3 {
            worst = worst.max(generator_error(i, &s, &grid, DEFAULT_STEP)?);
        }
    }
    Ok(worst)
}

fn intertwining(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let grid = sphere_grid(cfg)?;
    let mut worst = 0.0f64;
    for k in 0..(cfg.samples / 10).max(4) {
        let s = random_section(cfg, rng, both_bundles(k))?;
        for i in 1..=3 {
            worst = worst.max(check_intertwining(i, &s, &grid, DEFAULT_STEP)?);
        }
    }
    Ok(worst)
}

fn su2_closure(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let grid = sphere_grid(cfg)?;
    let mut worst = 0.0f64;
    for k in 0..(cfg.samples / 20).max(4) {
        let s = random_section(cfg, rng, both_bundles(k))?;
        worst = worst.max(closure_residual(&s, &grid, DEFAULT_STEP)?);
    }
    Ok(worst)
}

/// Exchange eigenvalue `+1` on `ℒ₊` and `−1` on `ℒ₋`, before and after a
/// random rotation, together with the rotation's leakage into the wrong
/// parity or above `lmax`.
fn exchange_statistics(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let grid = sphere_grid(cfg)?;
    let mut worst = 0.0f64;
    for k in 0..cfg.samples {
        let bundle = both_bundles(k);
        let s = random_section(cfg, rng, bundle)?;
        let want = bundle.exchange_sign() as f64;
        let g = random_su2(rng);
        let raw = rotate_coeffs_raw(&g, s.coeffs(), &grid)?;
        let moved = act_u(&g, &s, &grid)?;
        worst = worst
            .max((exchange_eigenvalue(&s, &grid) - want).norm())
            .max((exchange_eigenvalue(&moved, &grid) - want).norm())
            .max(rotation_leakage(s.coeffs(), &raw));
    }
    Ok(worst)
}

/// Angular degree of the test sections for the canonical operators; the
/// phase `e^{−irw}` is resolved on a finer grid.
const CANONICAL_SECTION_LMAX: usize = 3;
const CANONICAL_GRID_LMAX: usize = 16;
const DILATION_BASE: f64 = 1.5;

/// Radial grid centred on `r = 1`, spanning at least `ln r ∈ [−5, 5]`, on which powers of the returned ratio
/// are exact dilations, and a Gaussian-in-`ln r` odd section on it.
fn canonical_setup(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<(CanonicalGrids<f64>, FullSection<f64>)> {
    let n = cfg.radial_nodes;
    // Rounding down keeps the span at least 10 in `ln r`.
    let k = (DILATION_BASE.ln() * (n - 1) as f64 / 10.0).floor().max(1.0) as usize;
    let half_span = DILATION_BASE.ln() / k as f64 * (n - 1) as f64 / 2.0;
    let radial = RadialGrid::aligned((-half_span).exp(), n, DILATION_BASE, k)?;
    let sphere = SphereBasis::new(build_quadrature(CANONICAL_GRID_LMAX)?);
    let a = random_coeffs(rng, CANONICAL_SECTION_LMAX.min(cfg.lmax), BundleChoice::LMinus.sector());
    let profile = |r: f64| (-(r.ln() * r.ln()) / 0.5).exp();
    let fs = FullSection::product(radial.clone(), profile, &a);
    Ok((CanonicalGrids { sphere, radial }, fs))
}

/// Small random element with an aligned dilation `ρ^j`, `|j| ≤ 3`.
fn random_element(grids: &CanonicalGrids<f64>, rng: &mut ChaCha8Rng) -> Result<CanonicalElement<f64>> {
    let w: WFunctional<f64> = random_w_functional(rng);
    let size = rp2q::linalg::frobenius_norm(w.coefficients());
    let w = w.scale(0.05 / size.max(1e-12));
    let j: i32 = rng.random_range(-3..=3);
    Ok(CanonicalElement::new(w, random_su2(rng), grids.radial.ratio().powi(j))?)
}

fn canonical_unitarity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let (grids, fs) = canonical_setup(cfg, rng)?;
    let mut worst = 0.0f64;
    for _ in 0..(cfg.samples / 50).max(3) {
        let e = random_element(&grids, rng)?;
        worst = worst.max(unitarity_defect(&e, &fs, &grids)?);
    }
    Ok(worst)
}

fn canonical_group_law(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let (grids, fs) = canonical_setup(cfg, rng)?;
    let mut worst = 0.0f64;
    for _ in 0..(cfg.samples / 50).max(3) {
        let (e1, e2) = (random_element(&grids, rng)?, random_element(&grids, rng)?);
        let r = check_group_law(&e1, &e2, &fs, &grids)?;
        if !r.is_finite() {
            bail!("group law residual is not finite");
        }
        worst = worst.max(r);
    }
    Ok(worst)
}
