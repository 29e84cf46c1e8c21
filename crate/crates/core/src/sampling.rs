//! Random inputs for property checks. All samplers take an explicit RNG so
//! callers control seeding.

use num_complex::Complex;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::groups::{HElement, HKind, RP2Point, SU2Element, SpherePoint};
use crate::harmonics::{HarmonicCoeffs, Sector};
use crate::linalg::{Mat3, Vec3};
use crate::manifold::{MomentPoint, WFunctional};
use crate::scalar::Real;

fn normal<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    let x: f64 = StandardNormal.sample(rng);
    T::lit(x)
}

/// Standard Gaussian vector.
pub fn random_vec3<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Vec3<T> {
    [normal(rng), normal(rng), normal(rng)]
}

/// Haar-distributed element (uniform on the 3-sphere).
pub fn random_su2<T: Real, R: Rng + ?Sized>(rng: &mut R) -> SU2Element<T> {
    loop {
        let z0 = Complex::new(normal::<T, R>(rng), normal(rng));
        let z1 = Complex::new(normal::<T, R>(rng), normal(rng));
        let n = (z0.norm_sqr() + z1.norm_sqr()).sqrt();
        if n > T::lit(1e-6) {
            return SU2Element::new(z0 / n, z1 / n).expect("normalized sample");
        }
    }
}

/// Uniform point of the sphere.
pub fn random_sphere_point<T: Real, R: Rng + ?Sized>(rng: &mut R) -> SpherePoint<T> {
    loop {
        if let Ok(p) = SpherePoint::from_direction(random_vec3(rng)) {
            return p;
        }
    }
}

pub fn random_rp2<T: Real, R: Rng + ?Sized>(rng: &mut R) -> RP2Point<T> {
    RP2Point::from_sphere(&random_sphere_point(rng))
}

/// Uniform angle in `[0, 2π)`.
pub fn random_angle<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    T::lit(rng.random::<f64>() * std::f64::consts::TAU)
}

/// Element of `H`, either component with equal probability.
pub fn random_h<T: Real, R: Rng + ?Sized>(rng: &mut R) -> HElement<T> {
    let theta = random_angle::<T, R>(rng);
    let kind = if rng.random::<bool>() { HKind::Diagonal } else { HKind::Antidiagonal };
    HElement::new(kind, Complex::from_polar(T::one(), theta)).expect("unit phase")
}

/// Gaussian coefficients in the given sector, normalized to unit norm.
pub fn random_coeffs<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    lmax: usize,
    sector: Sector,
) -> HarmonicCoeffs<T> {
    let mut a = HarmonicCoeffs::zeros(lmax, sector);
    for l in 0..=lmax {
        if !sector.allows(l) {
            continue;
        }
        let li = l as i64;
        for m in -li..=li {
            a.set(l, m, Complex::new(normal(rng), normal(rng)));
        }
    }
    let n = a.norm();
    a.scaled(T::one() / n)
}

/// Gaussian symmetric traceless matrix.
pub fn random_w_matrix<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Mat3<T> {
    let mut m = [[T::zero(); 3]; 3];
    for row in m.iter_mut() {
        for x in row.iter_mut() {
            *x = normal(rng);
        }
    }
    *MomentPoint::project(&m).matrix()
}

pub fn random_moment_point<T: Real, R: Rng + ?Sized>(rng: &mut R) -> MomentPoint<T> {
    MomentPoint::new(random_w_matrix(rng)).expect("projected sample")
}

/// Linear functional (zero offset) with Gaussian coefficients.
pub fn random_w_functional<T: Real, R: Rng + ?Sized>(rng: &mut R) -> WFunctional<T> {
    WFunctional::linear(random_w_matrix(rng)).expect("projected sample")
}
