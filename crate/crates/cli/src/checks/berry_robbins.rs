use anyhow::Result;
use num_complex::Complex;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rp2q::berry_robbins::{
    br_lift, default_transport, fixed_basis_generator, recover_spin_generator, total_angular_momentum,
    transported_spin, BRState, SpinorField, TransportFrame, FRAME_MAX_TWO_J,
};
use rp2q::finite_diff::DEFAULT_STEP;
use rp2q::groups::{spinor_map, SpherePoint};
use rp2q::harmonics::Sector;
use rp2q::linalg::{adjoint, ccommutator, cidentity, cmax_abs, hermitian_eigenvalues};
use rp2q::sampling::{random_coeffs, random_sphere_point, random_su2};

use super::{Check, Suite};
use crate::config::SuiteConfig;

const TRANSPORT: &str = "spin transported along the sphere";

pub(super) fn checks() -> Vec<Check> {
    let c = |name, anchor, tolerance, run| Check { name, suite: Suite::BerryRobbins, anchor, tolerance, run };
    vec![
        c("berry_robbins.frame_unitarity", TRANSPORT, 1e-12, frame_unitarity),
        c("berry_robbins.composition", "lift of SU(2) to the transported bundle", 1e-10, composition),
        c("berry_robbins.spectrum", TRANSPORT, 1e-12, spectrum),
        c("berry_robbins.su2_algebra", TRANSPORT, 1e-12, su2_algebra),
        c("berry_robbins.generator_recovery", TRANSPORT, 1e-7, generator_recovery),
        c("berry_robbins.spin_zero_reduction", "spin zero recovers the scalar action", 0.0, spin_zero_reduction),
        c("berry_robbins.fixed_basis_generator", "total angular momentum L + S", 1e-7, fixed_basis_generator_check),
    ]
}

fn rounds(cfg: &SuiteConfig) -> usize {
    (cfg.samples / 10).max(4)
}

/// Points at a safe distance from the excluded south pole.
fn away_from_south(rng: &mut ChaCha8Rng) -> SpherePoint<f64> {
    loop {
        let p = random_sphere_point(rng);
        if p.coords()[2] > -0.95 {
            return p;
        }
    }
}

fn frames() -> Result<Vec<TransportFrame<f64>>> {
    Ok((0..=FRAME_MAX_TWO_J).map(default_transport).collect::<rp2q::Result<Vec<_>>>()?)
}

fn random_state(frame: &TransportFrame<f64>, rng: &mut ChaCha8Rng) -> BRState<f64> {
    let lam = (0..frame.dim()).map(|_| Complex::new(rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5))).collect();
    BRState::new(away_from_south(rng), lam)
}

fn frame_unitarity(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for f in frames()? {
        let id = cidentity::<f64>(f.dim());
        worst = worst.max(cmax_abs(&(f.u(&SpherePoint::north())? - &id)));
        for _ in 0..rounds(cfg) {
            let u = f.u(&away_from_south(rng))?;
            worst = worst.max(cmax_abs(&(u.dot(&adjoint(&u)) - &id)));
        }
    }
    Ok(worst)
}

/// `l(g₁)l(g₂) = l(g₁g₂)` on states, skipping draws whose intermediate
/// point falls in the excluded set.
fn composition(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for f in frames()? {
        let mut done = 0;
        let mut attempts = 0;
        while done < rounds(cfg) && attempts < 100 * rounds(cfg) {
            attempts += 1;
            let (g1, g2) = (random_su2(rng), random_su2(rng));
            let st = random_state(&f, rng);
            let (Ok(inner), Ok(both)) = (br_lift(&g2, &st, &f), br_lift(&(g1 * g2), &st, &f)) else { continue };
            let Ok(outer) = br_lift(&g1, &inner, &f) else { continue };
            worst = worst.max(outer.distance(&both)).max((inner.norm() - st.norm()).abs());
            done += 1;
        }
        anyhow::ensure!(done > 0, "every sampled lift hit the excluded set");
    }
    Ok(worst)
}

/// Transported `S₃` keeps the spectrum `j, j−1, …, −j`.
fn spectrum(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for f in frames()? {
        for _ in 0..rounds(cfg) {
            let s = transported_spin(3, &away_from_south(rng), &f)?;
            for (k, e) in hermitian_eigenvalues(&s).iter().enumerate() {
                worst = worst.max((e - (f.two_j() as f64 / 2.0 - k as f64)).abs());
            }
        }
    }
    Ok(worst)
}

fn su2_algebra(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let i = Complex::new(0.0, 1.0);
    let mut worst = 0.0f64;
    for f in frames()? {
        for _ in 0..rounds(cfg) {
            let r = away_from_south(rng);
            let s = (1..=3).map(|k| transported_spin(k, &r, &f)).collect::<rp2q::Result<Vec<_>>>()?;
            for (p, q, t) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
                worst = worst.max(cmax_abs(&(ccommutator(&s[p], &s[q]) - s[t].mapv(|z| z * i))));
            }
        }
    }
    Ok(worst)
}

/// Spin generators read off the lift once the transport term is removed.
fn generator_recovery(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for f in frames()? {
        for _ in 0..(rounds(cfg) / 2).max(2) {
            let r = away_from_south(rng);
            for i in 1..=3 {
                let got = recover_spin_generator(i, &r, &f, DEFAULT_STEP)?;
                worst = worst.max(cmax_abs(&(got - transported_spin(i, &r, &f)?)));
            }
        }
    }
    Ok(worst)
}

/// With `2j = 0` the lift moves the base point exactly as the scalar action
/// does and leaves the amplitude untouched, bit for bit.
fn spin_zero_reduction(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let f = default_transport::<f64>(0)?;
    let mut worst = 0.0f64;
    for _ in 0..rounds(cfg) {
        let g = random_su2(rng);
        let st = random_state(&f, rng);
        let Ok(out) = br_lift(&g, &st, &f) else { continue };
        worst = worst.max((out.lam[0] - st.lam[0]).norm());
        worst = worst.max(out.r.distance(&st.r.rotated(&spinor_map(&g))));
    }
    Ok(worst)
}

/// Finite-difference generator of the fixed-basis lift against `L_i + S_i`,
/// relative to the field norm.
fn fixed_basis_generator_check(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let grid = super::sphere_grid(cfg)?;
    let lmax = cfg.lmax.min(4);
    let mut worst = 0.0f64;
    for two_j in [1u32, 2] {
        let comps = (0..=two_j).map(|_| random_coeffs(rng, lmax, Sector::Full)).collect();
        let field = SpinorField::new(two_j, comps)?;
        for i in 1..=3 {
            let fd = fixed_basis_generator(i, &field, &grid, DEFAULT_STEP)?;
            let exact = total_angular_momentum(i, &field)?;
            worst = worst.max(fd.distance(&exact) / field.norm());
        }
    }
    Ok(worst)
}
