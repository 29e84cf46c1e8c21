//! Product quadrature on the sphere: Gauss–Legendre in `cos θ` times a
//! uniform azimuthal rule.

use std::io::Write;

use crate::error::{Error, Result};
use crate::groups::SpherePoint;
use crate::scalar::Real;

pub const MIN_LMAX: usize = 1;
pub const MAX_LMAX: usize = 32;

/// Nodes and positive weights integrating band-limited functions exactly.
///
/// Nodes are stored polar-major: node `i * n_phi + k` sits at the `i`-th
/// Legendre root and the `k`-th azimuth.
#[derive(Debug, Clone)]
pub struct QuadratureGrid<T> {
    nodes: Vec<SpherePoint<T>>,
    weights: Vec<T>,
    lmax_exact: usize,
    n_theta: usize,
    n_phi: usize,
}

impl<T: Real> QuadratureGrid<T> {
    pub fn nodes(&self) -> &[SpherePoint<T>] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Largest `ℓ` such that products of two harmonics of degree `≤ ℓ`
    /// integrate exactly.
    pub fn lmax_exact(&self) -> usize {
        self.lmax_exact
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    /// `Σ w_k f(x_k)` in node order.
    pub fn integrate<F: FnMut(&SpherePoint<T>) -> T>(&self, mut f: F) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |s, (x, w)| s + *w * f(x))
    }

    /// Fails unless the grid resolves products up to degree `lmax`.
    pub fn require(&self, lmax: usize) -> Result<()> {
        if self.lmax_exact < lmax {
            return Err(Error::InsufficientGrid { required: lmax, available: self.lmax_exact });
        }
        Ok(())
    }

    /// Writes `x,y,z,weight` rows with 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "x,y,z,weight")?;
        for (p, w) in self.nodes.iter().zip(&self.weights) {
            let [x, y, z] = *p.coords();
            writeln!(out, "{:.16e},{:.16e},{:.16e},{:.16e}", x, y, z, w)?;
        }
        Ok(())
    }
}

/// Gauss–Legendre nodes and weights on `[−1, 1]`, nodes ascending.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    let mut x = vec![T::zero(); n];
    let mut w = vec![T::zero(); n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                let (_, d) = legendre_with_derivative(n, z);
                dp = d;
                break;
            }
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = T::lit(-z);
        x[n - 1 - i] = T::lit(z);
        w[i] = T::lit(wi);
        w[n - 1 - i] = T::lit(wi);
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Grid with `lmax + 1` Legendre nodes and `2 lmax + 2` azimuths.
pub fn build_quadrature<T: Real>(lmax: usize) -> Result<QuadratureGrid<T>> {
    if !(MIN_LMAX..=MAX_LMAX).contains(&lmax) {
        return Err(Error::LmaxOutOfRange { lmax, min: MIN_LMAX, max: MAX_LMAX });
    }
    let n_theta = lmax + 1;
    let n_phi = 2 * lmax + 2;
    let (ct, wt) = gauss_legendre::<f64>(n_theta);
    let dphi = std::f64::consts::TAU / n_phi as f64;
    let mut nodes = Vec::with_capacity(n_theta * n_phi);
    let mut weights = Vec::with_capacity(n_theta * n_phi);
    for (c, w) in ct.iter().zip(&wt) {
        let s = (1.0 - c * c).sqrt();
        for k in 0..n_phi {
            let (sp, cp) = (k as f64 * dphi).sin_cos();
            let p = SpherePoint::new([T::lit(s * cp), T::lit(s * sp), T::lit(*c)])
                .expect("node on the sphere");
            nodes.push(p);
            weights.push(T::lit(w * dphi));
        }
    }
    Ok(QuadratureGrid { nodes, weights, lmax_exact: lmax, n_theta, n_phi })
}
