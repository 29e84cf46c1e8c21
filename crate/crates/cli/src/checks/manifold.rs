use anyhow::Result;
use num_complex::Complex;
use rand_chacha::ChaCha8Rng;
use rp2q::groups::{spinor_map, RP2Point};
use rp2q::harmonics::{HarmonicCoeffs, Sector, SphereBasis};
use rp2q::manifold::{
    build_quadrature, eval_w_sphere, f_embedding, moment_embedding, transition_function, w_action, ChartIndex,
};
use rp2q::sampling::{random_coeffs, random_rp2, random_sphere_point, random_su2, random_w_functional};

use super::{max_of, Check, Suite};
use crate::config::SuiteConfig;

const CHARTS: &str = "affine charts and transition functions of RP2";
const MOMENT: &str = "moment embedding of RP2 into W";

pub(super) fn checks() -> Vec<Check> {
    let c = |name, anchor, tolerance, run| Check { name, suite: Suite::Manifold, anchor, tolerance, run };
    vec![
        c("manifold.transition_cocycle", CHARTS, 0.0, transition_cocycle),
        c("manifold.moment_equivariance", MOMENT, 1e-12, moment_equivariance),
        c("manifold.embedding_separation", "embedding F of RP2 into R4", 1e3, embedding_separation),
        c("manifold.quadrature_exactness", "band-limited quadrature on the sphere", 1e-12, quadrature_exactness),
        c("manifold.w_pairing", MOMENT, 1e-12, w_pairing),
    ]
}

/// Number of sampled points where the cocycle condition or the
/// representative independence of `g_{αβ}` fails.
fn transition_cocycle(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut failures = 0usize;
    for _ in 0..5 * cfg.samples {
        let p: RP2Point<f64> = random_rp2(rng);
        let flipped = RP2Point::from_sphere(&p.rep().antipode());
        for a in ChartIndex::ALL {
            for b in ChartIndex::ALL {
                let Ok(gab) = transition_function(a, b, &p) else { continue };
                if transition_function(a, b, &flipped)? != gab {
                    failures += 1;
                }
                if a == b && gab != 1 {
                    failures += 1;
                }
                for c in ChartIndex::ALL {
                    let (Ok(gbc), Ok(gac)) = (transition_function(b, c, &p), transition_function(a, c, &p)) else {
                        continue;
                    };
                    if gab * gbc != gac {
                        failures += 1;
                    }
                }
            }
        }
    }
    Ok(failures as f64)
}

fn moment_equivariance(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    Ok(max_of((0..5 * cfg.samples).map(|_| {
        let r = spinor_map(&random_su2::<f64, _>(rng));
        let x = random_sphere_point(rng);
        let lhs = moment_embedding(&x.rotated(&r));
        let rhs = w_action(&r, &moment_embedding(&x));
        // M only sees the class of x.
        lhs.distance(&rhs).max(moment_embedding(&x.antipode()).distance(&moment_embedding(&x)))
    })))
}

/// Largest `d([x], [y]) / |F(x) − F(y)|` over sampled pairs. A finite value
/// means no two sampled classes collide; the bound catches near-collisions.
fn embedding_separation(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let mut worst = 0.0f64;
    for k in 0..10 * cfg.samples {
        let p: RP2Point<f64> = random_rp2(rng);
        // Half the pairs are close, to probe the immersion as well.
        let q = if k % 2 == 0 {
            random_rp2(rng)
        } else {
            let v = random_sphere_point::<f64, _>(rng);
            let x = p.rep().coords();
            let y: [f64; 3] = std::array::from_fn(|i| x[i] + 1e-4 * v.coords()[i]);
            RP2Point::new(rp2q::linalg::scale(&y, 1.0 / rp2q::linalg::norm(&y)))?
        };
        let d = p.class_distance(&q);
        if d < 1e-12 {
            continue;
        }
        let (fp, fq) = (f_embedding(&p), f_embedding(&q));
        let gap = fp.iter().zip(&fq).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        worst = worst.max(if gap > 0.0 { d / gap } else { f64::INFINITY });
    }
    Ok(worst)
}

/// Quadrature inner products of random band-limited functions against the
/// coefficient inner product.
fn quadrature_exactness(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    let basis = SphereBasis::new(build_quadrature::<f64>(cfg.lmax)?);
    let pairs = (cfg.samples / 10).max(4);
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let a: HarmonicCoeffs<f64> = random_coeffs(rng, cfg.lmax, Sector::Full);
        let b = random_coeffs(rng, cfg.lmax, Sector::Full);
        let quad = basis.inner_values(&basis.synthesize(&a)?, &basis.synthesize(&b)?);
        let exact: Complex<f64> = a.inner(&b);
        worst = worst.max((quad - exact).norm());
    }
    Ok(worst)
}

/// `w` is even on the sphere and `(R·w)(R x) = w(x)`.
fn w_pairing(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
    Ok(max_of((0..5 * cfg.samples).map(|_| {
        let w = random_w_functional::<f64, _>(rng);
        let r = spinor_map(&random_su2(rng));
        let x = random_sphere_point(rng);
        let v = eval_w_sphere(&w, &x);
        let even = (eval_w_sphere(&w, &x.antipode()) - v).abs();
        let moved = (eval_w_sphere(&w.rotated(&r), &x.rotated(&r)) - v).abs();
        even.max(moved)
    })))
}
