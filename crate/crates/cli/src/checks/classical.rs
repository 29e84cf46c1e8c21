use anyhow::Result;
use rand_chacha::ChaCha8Rng;
use rp2q::classical::{
    act_phase, check_homomorphism, jacobi_residual, poisson_bracket, poisson_bracket_fd, P_observable, PhasePoint,
    SemidirectGroupElement, SemidirectLieElement, FD_STEP,
};
use rp2q::sampling::{random_moment_point, random_su2, random_vec3, random_w_functional};

use super::{max_of, Check, Suite};
use crate::config::SuiteConfig;

const MOMENTUM_MAP: &str = "classical momentum map for W* x| SU(2) on W x W*";

pub(super) fn checks() -> Vec<Check> {
    let c = |name, anchor, tolerance, run| Check { name, suite: Suite::Classical, anchor, tolerance, run };
    vec![
        c("classical.homomorphism", MOMENTUM_MAP, 1e-9, homomorphism),
        c("classical.jacobi", "Poisson bracket on W x W*", 1e-8, jacobi),
        c("classical.bracket_fd", "Poisson bracket on W x W*", 1e-7, bracket_fd),
        c("classical.phase_action", "semidirect product acting on phase space", 1e-12, phase_action),
    ]
}

fn random_point(rng: &mut ChaCha8Rng) -> PhasePoint<f64> {
    PhasePoint::new(random_moment_point(rng), random_w_functional(rng))
}

fn random_element(rng: &mut ChaCha8Rng) -> SemidirectLieElement<f64> {
    SemidirectLieElement::new(random_w_functional(rng), random_vec3(rng))
}

/// `{P(e₁), P(e₂)} = P([e₁, e₂])` with no central term.
fn homomorphism(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let points: Vec<_> = (0..100).map(|_| random_point(rng)).collect();
    Ok(max_of((0..5 * cfg.samples).map(|_| {
        let (e1, e2) = (random_element(rng), random_element(rng));
        check_homomorphism(&e1, &e2, &points)
    })))
}

fn jacobi(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    Ok(max_of((0..(cfg.samples / 10).max(4)).map(|_| {
        let (a, b, c) = (random_element(rng), random_element(rng), random_element(rng));
        jacobi_residual([&a, &b, &c], &random_point(rng), 1e-3)
    })))
}

/// Analytic bracket against the canonical bracket by central differences.
fn bracket_fd(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    Ok(max_of((0..(cfg.samples / 4).max(4)).map(|_| {
        let (e1, e2) = (random_element(rng), random_element(rng));
        let pt = random_point(rng);
        let fd = poisson_bracket_fd(|p| P_observable(&e1, p), |p| P_observable(&e2, p), &pt, FD_STEP);
        (fd - poisson_bracket(&e1, &e2, &pt)).abs()
    })))
}

fn phase_action(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    Ok(max_of((0..5 * cfg.samples).map(|_| {
        let mut el = || SemidirectGroupElement { phi_w: random_w_functional(rng), g: random_su2(rng) };
        let (e1, e2) = (el(), el());
        let pt = random_point(rng);
        let lhs = act_phase(&e1, &act_phase(&e2, &pt));
        let rhs = act_phase(&e1.compose(&e2), &pt);
        lhs.u.distance(&rhs.u).max(lhs.psi.distance(&rhs.psi))
    })))
}
