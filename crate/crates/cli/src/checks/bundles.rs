use anyhow::Result;
use num_complex::Complex;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rp2q::bundles::{iso_phi, iso_phi_inverse, kappa, lift_tau, module_iso_forward, module_iso_inverse, natural_lift, AssocElement};
use rp2q::harmonics::{HarmonicCoeffs, Sector};
use rp2q::sampling::{random_coeffs, random_h, random_su2};

use super::{max_of, sphere_grid, Check, Suite};
use crate::config::SuiteConfig;

const ASSOC: &str = "associated bundle SU(2) x_kappa C and its isomorphism with L-";

pub(super) fn checks() -> Vec<Check> {
    let c = |name, anchor, tolerance, run| Check { name, suite: Suite::Bundles, anchor, tolerance, run };
    vec![
        c("bundles.phi_intertwines_lifts", ASSOC, 1e-10, phi_intertwines_lifts),
        c("bundles.assoc_iso_round_trip", ASSOC, 1e-10, assoc_iso_round_trip),
        c("bundles.module_round_trip", "odd functions as a module of sections of L-", 1e-9, module_round_trip),
        c("bundles.kappa_reexpression", "character kappa of H", 1e-12, kappa_reexpression),
    ]
}

fn random_assoc(rng: &mut ChaCha8Rng) -> AssocElement<f64> {
    let v = Complex::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
    AssocElement::new(random_su2(rng), v)
}

/// `Φ ∘ l↑_g = τ_g ∘ Φ`.
fn phi_intertwines_lifts(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    Ok(max_of((0..5 * cfg.samples).map(|_| {
        let e = random_assoc(rng);
        let g = random_su2(rng);
        iso_phi(&natural_lift(&g, &e)).distance(&lift_tau(&g, &iso_phi(&e)))
    })))
}

/// `Φ⁻¹Φ` is the identity on classes and `Φ` ignores the representative.
fn assoc_iso_round_trip(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    Ok(max_of((0..5 * cfg.samples).map(|_| {
        let e = random_assoc(rng);
        let h = random_h(rng);
        let back = iso_phi_inverse(&iso_phi(&e)).canonical_distance(&e);
        back.max(iso_phi(&e.reexpress(&h)).distance(&iso_phi(&e)))
    })))
}

/// Odd `a` to the even triple `(a x₁, a x₂, a x₃)` and back.
fn module_round_trip(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let grid = sphere_grid(cfg)?;
    let mut worst = 0.0f64;
    for _ in 0..(cfg.samples / 20).max(3) {
        let a: HarmonicCoeffs<f64> = random_coeffs(rng, cfg.lmax, Sector::Odd);
        let back = module_iso_inverse(&module_iso_forward(&a, &grid)?, &grid)?;
        worst = worst.max(back.resized(a.lmax()).distance(&a)).max(back.norm_above(a.lmax()));
    }
    Ok(worst)
}

/// `κ` is a homomorphism onto `{±1}` and re-expression is a right action.
fn kappa_reexpression(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..5 * cfg.samples {
        let (h1, h2) = (random_h(rng), random_h(rng));
        if kappa(&h1.compose(&h2)) != kappa(&h1) * kappa(&h2) {
            worst = worst.max(1.0);
        }
        let e = random_assoc(rng);
        let twice = e.reexpress(&h1).reexpress(&h2);
        let once = e.reexpress(&h1.compose(&h2));
        worst = worst.max(twice.g().distance(once.g())).max((twice.v() - once.v()).norm());
    }
    Ok(worst)
}
