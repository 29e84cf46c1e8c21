use anyhow::Result;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rp2q::groups::{
    h_orbit_action, quotient_to_rp2, rotation_from_axis_angle, spinor_map, su2_from_axis_angle, SO3Matrix,
    SU2Element,
};
use rp2q::linalg;
use rp2q::sampling::{random_angle, random_h, random_sphere_point, random_su2};

use super::{max_of, Check, Suite};
use crate::config::SuiteConfig;

const SPINOR: &str = "spinor map SU(2) -> SO(3)";
const H_SUBGROUP: &str = "H subgroup and the quotient SU(2)/H = RP2";

pub(super) fn checks() -> Vec<Check> {
    let c = |name, anchor, tolerance, run| Check { name, suite: Suite::Groups, anchor, tolerance, run };
    vec![
        c("groups.spinor_homomorphism", SPINOR, 1e-12, spinor_homomorphism),
        c("groups.double_cover_kernel", SPINOR, 1e-12, double_cover_kernel),
        c("groups.axis_angle_formula", "rotation R(psi, n) in axis-angle form", 1e-12, axis_angle_formula),
        c("groups.rotation_orthogonality", SPINOR, 1e-12, rotation_orthogonality),
        c("groups.h_orbit_quotient", H_SUBGROUP, 1e-12, h_orbit_quotient),
    ]
}

fn spinor_homomorphism(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    Ok(max_of((0..5 * cfg.samples).map(|_| {
        let (a, b): (SU2Element<f64>, SU2Element<f64>) = (random_su2(rng), random_su2(rng));
        spinor_map(&(a * b)).distance(&spinor_map(&a).compose(&spinor_map(&b)))
    })))
}

/// `Spin(−g) = Spin(g)` while `−g ≠ g`, and the full turn maps to `−1`.
fn double_cover_kernel(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = max_of((0..5 * cfg.samples).map(|_| {
        let g: SU2Element<f64> = random_su2(rng);
        let same = spinor_map(&g.negate()).distance(&spinor_map(&g));
        // −g and g are distinct: the full distance in C² is exactly 2.
        let n = g.negate();
        let gap = ((n.z0() - g.z0()).norm_sqr() + (n.z1() - g.z1()).norm_sqr()).sqrt();
        let apart = (gap - 2.0).abs();
        same.max(apart)
    }));
    let full_turn = su2_from_axis_angle(std::f64::consts::TAU, [0.0, 0.0, 1.0])?;
    worst = worst.max(full_turn.distance(&SU2Element::identity().negate()));
    worst = worst.max(spinor_map(&full_turn).distance(&SO3Matrix::identity()));
    Ok(worst)
}

fn axis_angle_formula(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..5 * cfg.samples {
        let n = *random_sphere_point::<f64, _>(rng).coords();
        let psi: f64 = random_angle::<f64, _>(rng) * if rng.random::<bool>() { 2.0 } else { 1.0 };
        let direct = rotation_from_axis_angle(psi, n)?;
        let via_spinor = spinor_map(&su2_from_axis_angle(psi, n)?);
        worst = worst.max(direct.distance(&via_spinor));
    }
    Ok(worst)
}

fn rotation_orthogonality(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    Ok(max_of((0..cfg.samples).map(|_| {
        let r = spinor_map(&random_su2::<f64, _>(rng));
        let m = r.matrix();
        let rrt = linalg::mat_mul(m, &linalg::transpose(m));
        let dev = linalg::frobenius_norm(&linalg::mat_sub(&rrt, &linalg::mat_identity()));
        dev.max((linalg::det(m) - 1.0).abs())
    })))
}

fn h_orbit_quotient(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    Ok(max_of((0..5 * cfg.samples).map(|_| {
        let g: SU2Element<f64> = random_su2(rng);
        let h = random_h(rng);
        quotient_to_rp2(&h_orbit_action(&g, &h)).class_distance(&quotient_to_rp2(&g))
    })))
}
