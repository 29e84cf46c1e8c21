use anyhow::Result;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rp2q::heisenberg::{
    ccr_residual, check_rep_homomorphism, check_weyl_relation, gvh_discrepancy, halfline_breakdown_demo,
    rep_heisenberg, weyl_u, weyl_v, GridWavefunction, HeisenbergElement,
};

use super::{Check, Suite};
use crate::config::SuiteConfig;

/// Half-width of the periodic box `[−L, L)`.
pub const HALF_WIDTH: f64 = 20.0;

const WEYL: &str = "Weyl form of the canonical commutation relations";
const GVH: &str = "Groenewold-van Hove obstruction for (pq)^2";

pub(super) fn checks() -> Vec<Check> {
    let c = |name, anchor, tolerance, run| Check { name, suite: Suite::Heisenberg, anchor, tolerance, run };
    vec![
        c("heisenberg.ccr", "canonical commutation relation [q, p] = i hbar", 1e-8, ccr),
        c("heisenberg.weyl_relation", WEYL, 1e-9, weyl_relation),
        c("heisenberg.rep_homomorphism", "Schroedinger representation of the Heisenberg group", 1e-9, rep_homomorphism),
        c("heisenberg.unitarity", WEYL, 1e-10, unitarity),
        c("heisenberg.product_associativity", "Heisenberg group law", 1e-12, product_associativity),
        c("heisenberg.gvh_constant", GVH, 1e-7, gvh_constant),
        c("heisenberg.gvh_grid_doubling", GVH, 1e-9, gvh_grid_doubling),
        c("heisenberg.halfline_escape", "translations on the half-line", 1e-3, halfline_escape),
    ]
}

fn rounds(cfg: &SuiteConfig) -> usize {
    (cfg.samples / 10).max(4)
}

/// Packet with random `ħ`, centre, width and momentum. Combined with shifts
/// `|ħa| ≤ 3` it stays more than seven widths inside `|x| < L/2`.
fn packet(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<GridWavefunction<f64>> {
    let hbar = rng.random_range(0.5..1.5);
    let x0 = rng.random_range(-1.0..1.0);
    let sigma = rng.random_range(0.6..0.8);
    let k0 = rng.random_range(-1.0..1.0);
    Ok(GridWavefunction::gaussian(cfg.grid_n, HALF_WIDTH, hbar, x0, sigma, k0)?)
}

fn ccr(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..rounds(cfg) {
        worst = worst.max(ccr_residual(&packet(cfg, rng)?)?);
    }
    Ok(worst)
}

/// `U(a)V(b) = e^{−iμab} V(b)U(a)` with `μ = −ħ`.
fn weyl_relation(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..rounds(cfg) {
        let psi = packet(cfg, rng)?;
        let (a, b) = (rng.random_range(-2.0..2.0), rng.random_range(-3.0..3.0));
        worst = worst.max(check_weyl_relation(a, b, &psi)?);
    }
    Ok(worst)
}

fn random_element(rng: &mut ChaCha8Rng) -> HeisenbergElement<f64> {
    HeisenbergElement::scalar(rng.random_range(-1.0..1.0), rng.random_range(-2.0..2.0), rng.random_range(-5.0..5.0))
}

fn rep_homomorphism(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..rounds(cfg) {
        let psi = packet(cfg, rng)?;
        let (e1, e2) = (random_element(rng), random_element(rng));
        worst = worst.max(check_rep_homomorphism(&e1, &e2, &psi)?);
    }
    Ok(worst)
}

fn unitarity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..rounds(cfg) {
        let psi = packet(cfg, rng)?;
        let n = psi.norm();
        let (a, b) = (rng.random_range(-2.0..2.0), rng.random_range(-3.0..3.0));
        for out in [weyl_u(a, &psi)?, weyl_v(b, &psi)?, rep_heisenberg(&random_element(rng), &psi)?] {
            worst = worst.max((out.norm() - n).abs() / n);
        }
    }
    Ok(worst)
}

/// Associativity and inverses in three dimensions, relative to `1 + |r|`.
fn product_associativity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let el = |rng: &mut ChaCha8Rng| {
        let v = |rng: &mut ChaCha8Rng| (0..3).map(|_| rng.random_range(-10.0..10.0)).collect::<Vec<f64>>();
        let (a, b) = (v(rng), v(rng));
        HeisenbergElement::new(a, b, rng.random_range(-10.0..10.0))
    };
    let mut worst = 0.0f64;
    for _ in 0..5 * cfg.samples {
        let (x, y, z) = (el(rng)?, el(rng)?, el(rng)?);
        let lhs = x.product(&y)?.product(&z)?;
        let rhs = x.product(&y.product(&z)?)?;
        worst = worst.max(lhs.distance(&rhs) / (1.0 + lhs.r.abs()));
        let id = x.product(&x.inverse())?;
        worst = worst.max(id.distance(&HeisenbergElement::identity(3)));
    }
    Ok(worst)
}

/// The two orderings of `(pq)²` differ by `(3/4)ħ²` times the identity.
fn gvh_constant(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..rounds(cfg) {
        let psi = packet(cfg, rng)?;
        let want = 0.75 * psi.hbar() * psi.hbar();
        let rep = gvh_discrepancy(&psi)?;
        worst = worst
            .max((rep.constant - want).abs() / want)
            .max(1.0 - rep.correlation)
            .max(rep.expansion_residual);
    }
    Ok(worst)
}

/// The constant does not move when the grid is refined.
fn gvh_grid_doubling(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..(rounds(cfg) / 4).max(2) {
        let (hbar, x0, sigma, k0) =
            (rng.random_range(0.5..1.5), rng.random_range(-1.0..1.0), rng.random_range(0.6..0.8), rng.random_range(-1.0..1.0));
        let c = |n| -> Result<f64> {
            Ok(gvh_discrepancy(&GridWavefunction::gaussian(n, HALF_WIDTH, hbar, x0, sigma, k0)?)?.constant)
        };
        worst = worst.max((c(cfg.grid_n)? - c(2 * cfg.grid_n)?).abs() / (0.75 * hbar * hbar));
    }
    Ok(worst)
}

/// A packet on `x > 0` pushed by `ħa = −(x₀ + 10σ)` lands almost entirely on
/// `x < 0`, while a small push keeps it on the half-line. Residual is the
/// larger of the mass left behind and the mass lost to the small push.
fn halfline_escape(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..2 {
        let hbar = rng.random_range(0.5..1.5);
        let (x0, sigma) = (rng.random_range(4.5..5.5), 0.5);
        let psi = GridWavefunction::gaussian(cfg.grid_n, HALF_WIDTH, hbar, x0, sigma, 0.0)?;
        let far = halfline_breakdown_demo(-(x0 + 10.0 * sigma) / hbar, &psi)?;
        let near = halfline_breakdown_demo(-0.5 / hbar, &psi)?;
        worst = worst.max(1.0 - far.escaped_mass).max(near.escaped_mass);
    }
    Ok(worst)
}
