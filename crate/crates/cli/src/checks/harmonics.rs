use anyhow::{ensure, Result};
use num_complex::Complex;
use rand_chacha::ChaCha8Rng;
use rp2q::harmonics::wigner::{wigner_d, MAX_TWO_J};
use rp2q::harmonics::{apply_l, evaluate, parity_decompose, HarmonicCoeffs, RotationBlocks, Sector, SphereBasis};
use rp2q::linalg::{cmatmul, cmax_abs};
use rp2q::sampling::{random_coeffs, random_sphere_point, random_su2};

use super::{max_of, sphere_grid, Check, Suite};
use crate::config::SuiteConfig;

const ROTATION: &str = "rotation of spherical harmonics";

pub(super) fn checks() -> Vec<Check> {
    let c = |name, anchor, tolerance, run| Check { name, suite: Suite::Harmonics, anchor, tolerance, run };
    vec![
        c("harmonics.rotation_vs_wigner", ROTATION, 1e-11, rotation_vs_wigner),
        c("harmonics.parity", "parity of harmonics under the antipodal map", 1e-12, parity),
        c("harmonics.ladder_algebra", "orbital angular momentum ladder operators", 1e-10, ladder_algebra),
        c("harmonics.round_trip", "harmonic analysis and synthesis", 1e-12, round_trip),
    ]
}

/// Per-degree rotation blocks against closed-form Wigner matrices where
/// those exist, and the homomorphism `B(g₁g₂) = B(g₁)B(g₂)` for all degrees.
fn rotation_vs_wigner(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let grid = sphere_grid(cfg)?;
    let lmax = cfg.lmax;
    let mut worst = 0.0f64;
    for _ in 0..(cfg.samples / 20).max(3) {
        let (g1, g2) = (random_su2::<f64, _>(rng), random_su2(rng));
        let b1 = RotationBlocks::by_quadrature(&g1, lmax, &grid)?;
        let b2 = RotationBlocks::by_quadrature(&g2, lmax, &grid)?;
        let b12 = RotationBlocks::by_quadrature(&(g1 * g2), lmax, &grid)?;
        for l in 0..=lmax {
            let prod = cmatmul(b1.block(l), b2.block(l));
            worst = worst.max(cmax_abs(&(b12.block(l) - &prod)));
            if 2 * l as u32 > MAX_TWO_J {
                continue;
            }
            let d = wigner_d(2 * l as u32, &g1)?;
            let li = l as i32;
            for m in -li..=li {
                for mp in -li..=li {
                    let b = b1.block(l)[[(mp + li) as usize, (m + li) as usize]];
                    worst = worst.max((b - d.entry(2 * mp, 2 * m)).norm());
                }
            }
        }
    }
    Ok(worst)
}

fn parity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..(cfg.samples / 10).max(4) {
        let a: HarmonicCoeffs<f64> = random_coeffs(rng, cfg.lmax, Sector::Full);
        let (e, o) = parity_decompose(&a);
        ensure!(e.add(&o).distance(&a) == 0.0, "parity parts do not sum to the input");
        for _ in 0..10 {
            let x = random_sphere_point(rng);
            let y = x.antipode();
            worst = worst.max((evaluate(&e, &y) - evaluate(&e, &x)).norm());
            worst = worst.max((evaluate(&o, &y) + evaluate(&o, &x)).norm());
        }
    }
    Ok(worst)
}

/// `[L₁, L₂] = iL₃` cyclically and `L² = ℓ(ℓ+1)` on each degree, relative
/// to `ℓmax²`.
fn ladder_algebra(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let i = Complex::new(0.0, 1.0);
    let scale = ((cfg.lmax * cfg.lmax) as f64).max(1.0);
    let mut worst = 0.0f64;
    for _ in 0..(cfg.samples / 10).max(4) {
        let a: HarmonicCoeffs<f64> = random_coeffs(rng, cfg.lmax, Sector::Full);
        for (p, q, r) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
            let lhs = apply_l(p, &apply_l(q, &a)).sub(&apply_l(q, &apply_l(p, &a)));
            worst = worst.max(lhs.distance(&apply_l(r, &a).scaled_complex(i)) / scale);
        }
        let casimir = (1..=3).fold(HarmonicCoeffs::zeros(a.lmax(), a.sector()), |s, k| {
            s.add(&apply_l(k, &apply_l(k, &a)))
        });
        let mut want = a.clone();
        for l in 0..=a.lmax() {
            let ll = (l * (l + 1)) as f64;
            want.block_mut(l).iter_mut().for_each(|c| *c *= ll);
        }
        worst = worst.max(casimir.distance(&want) / scale);
    }
    Ok(worst)
}

fn round_trip(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let basis = SphereBasis::new(sphere_grid(cfg)?);
    Ok(max_of(
        (0..(cfg.samples / 10).max(4))
            .map(|_| {
                let a: HarmonicCoeffs<f64> = random_coeffs(rng, cfg.lmax, Sector::Full);
                Ok(basis.analyze(&basis.synthesize(&a)?, cfg.lmax)?.distance(&a))
            })
            .collect::<Result<Vec<f64>>>()?,
    ))
}
