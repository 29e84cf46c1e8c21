//! Charts on ℝP², the equivariant embedding into the space `W` of symmetric
//! traceless 3x3 matrices, and linear functionals on `W`.

pub mod quadrature;

pub use quadrature::{build_quadrature, gauss_legendre, QuadratureGrid};

use crate::error::{Error, Result};
use crate::groups::{RP2Point, SO3Matrix, SpherePoint};
use crate::linalg::{self, Mat3};
use crate::scalar::Real;

/// A point whose chart coordinate is smaller than this is outside the chart.
pub const CHART_TOL: f64 = 1e-9;

/// Tolerance on symmetry and trace for elements of `W` and `W*`.
pub const W_TOL: f64 = 1e-12;

/// One of the three affine charts `{x_α ≠ 0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChartIndex(usize);

impl ChartIndex {
    pub const ALL: [ChartIndex; 3] = [ChartIndex(1), ChartIndex(2), ChartIndex(3)];

    /// `alpha` counts from 1.
    pub fn new(alpha: usize) -> Result<Self> {
        if (1..=3).contains(&alpha) {
            Ok(Self(alpha))
        } else {
            Err(Error::ChartIndex(alpha))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }

    fn zero_based(self) -> usize {
        self.0 - 1
    }
}

fn chart_coordinate<T: Real>(p: &RP2Point<T>, alpha: ChartIndex) -> Result<T> {
    let xa = p.rep().coords()[alpha.zero_based()];
    if xa.abs() <= T::tol(CHART_TOL) {
        return Err(Error::PointNotInChart { chart: alpha.get(), coordinate: xa.to_f64_lossy() });
    }
    Ok(xa)
}

/// Affine coordinates `(x_i/x_α, x_j/x_α)` with `i < j` the other indices.
pub fn chart_coords<T: Real>(p: &RP2Point<T>, alpha: ChartIndex) -> Result<(T, T)> {
    let xa = chart_coordinate(p, alpha)?;
    let x = p.rep().coords();
    let mut others = (0..3).filter(|&k| k != alpha.zero_based());
    let i = others.next().expect("two remaining indices");
    let j = others.next().expect("two remaining indices");
    Ok((x[i] / xa, x[j] / xa))
}

/// `g_{αβ}([x]) = sign(x_α x_β)`.
pub fn transition_function<T: Real>(alpha: ChartIndex, beta: ChartIndex, p: &RP2Point<T>) -> Result<i8> {
    let xa = chart_coordinate(p, alpha)?;
    let xb = chart_coordinate(p, beta)?;
    Ok(if (xa * xb) > T::zero() { 1 } else { -1 })
}

/// `F([x:y:z]) = (yz, xz, xy, y² − z²)`.
pub fn f_embedding<T: Real>(p: &RP2Point<T>) -> [T; 4] {
    let [x, y, z] = *p.rep().coords();
    [y * z, x * z, x * y, y * y - z * z]
}

fn check_symmetric_traceless<T: Real>(m: &Mat3<T>) -> Result<()> {
    let tol = T::tol(W_TOL);
    let asym = linalg::frobenius_norm(&linalg::mat_sub(m, &linalg::transpose(m)));
    let tr = linalg::trace(m);
    if asym > tol || tr.abs() > tol {
        return Err(Error::NotRotation(format!(
            "expected symmetric traceless matrix (asymmetry {asym}, trace {tr})"
        )));
    }
    Ok(())
}

/// Element of `W`: a real symmetric traceless 3x3 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentPoint<T> {
    m: Mat3<T>,
}

impl<T: Real> MomentPoint<T> {
    pub fn new(m: Mat3<T>) -> Result<Self> {
        check_symmetric_traceless(&m)?;
        Ok(Self { m })
    }

    /// Symmetric traceless part of an arbitrary matrix.
    pub fn project(m: &Mat3<T>) -> Self {
        let sym = linalg::mat_scale(&linalg::mat_add(m, &linalg::transpose(m)), T::lit(0.5));
        let shift = linalg::trace(&sym) / T::lit(3.0);
        let m = linalg::mat_sub(&sym, &linalg::mat_scale(&linalg::mat_identity(), shift));
        Self { m }
    }

    pub fn zero() -> Self {
        Self { m: linalg::mat_zero() }
    }

    pub fn matrix(&self) -> &Mat3<T> {
        &self.m
    }

    pub fn distance(&self, other: &Self) -> T {
        linalg::frobenius_norm(&linalg::mat_sub(&self.m, &other.m))
    }
}

/// Element of `W*` paired with `W` by `tr(c·m)`, plus a constant offset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WFunctional<T> {
    c: Mat3<T>,
    c0: T,
}

impl<T: Real> WFunctional<T> {
    pub fn new(c: Mat3<T>, c0: T) -> Result<Self> {
        check_symmetric_traceless(&c)?;
        Ok(Self { c, c0 })
    }

    pub fn linear(c: Mat3<T>) -> Result<Self> {
        Self::new(c, T::zero())
    }

    pub fn zero() -> Self {
        Self { c: linalg::mat_zero(), c0: T::zero() }
    }

    pub fn constant(c0: T) -> Self {
        Self { c: linalg::mat_zero(), c0 }
    }

    /// The functional reading off the `(i, j)` entry of a symmetric matrix,
    /// indices from 1 with `i ≠ j`.
    pub fn off_diagonal_entry(i: usize, j: usize) -> Self {
        assert!(i != j && (1..=3).contains(&i) && (1..=3).contains(&j));
        let mut c = linalg::mat_zero();
        c[i - 1][j - 1] = T::lit(0.5);
        c[j - 1][i - 1] = T::lit(0.5);
        Self { c, c0: T::zero() }
    }

    pub fn coefficients(&self) -> &Mat3<T> {
        &self.c
    }

    pub fn offset(&self) -> T {
        self.c0
    }

    /// `tr(c·m)`, ignoring the offset.
    pub fn pair(&self, m: &Mat3<T>) -> T {
        linalg::frobenius_dot(&self.c, m)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { c: linalg::mat_add(&self.c, &other.c), c0: self.c0 + other.c0 }
    }

    pub fn scale(&self, s: T) -> Self {
        Self { c: linalg::mat_scale(&self.c, s), c0: self.c0 * s }
    }

    /// `w ∘ R⁻¹`, i.e. coefficients `R c Rᵀ`; the offset is invariant.
    pub fn rotated(&self, r: &SO3Matrix<T>) -> Self {
        let rm = r.matrix();
        let c = linalg::mat_mul(&linalg::mat_mul(rm, &self.c), &linalg::transpose(rm));
        Self { c, c0: self.c0 }
    }

    pub fn distance(&self, other: &Self) -> T {
        linalg::frobenius_norm(&linalg::mat_sub(&self.c, &other.c)) + (self.c0 - other.c0).abs()
    }
}

/// `M(x) = x xᵀ − Id/3`.
pub fn moment_embedding<T: Real>(x: &SpherePoint<T>) -> MomentPoint<T> {
    let v = x.coords();
    let third = T::one() / T::lit(3.0);
    let m = linalg::mat_sub(&linalg::outer(v, v), &linalg::mat_scale(&linalg::mat_identity(), third));
    MomentPoint { m }
}

/// `R m Rᵀ`.
pub fn w_action<T: Real>(r: &SO3Matrix<T>, m: &MomentPoint<T>) -> MomentPoint<T> {
    let rm = r.matrix();
    MomentPoint { m: linalg::mat_mul(&linalg::mat_mul(rm, &m.m), &linalg::transpose(rm)) }
}

/// `tr(c·M(x)) + c0`.
pub fn eval_w<T: Real>(w: &WFunctional<T>, p: &RP2Point<T>) -> T {
    eval_w_sphere(w, p.rep())
}

/// [`eval_w`] at a sphere point; even in `x`.
pub fn eval_w_sphere<T: Real>(w: &WFunctional<T>, x: &SpherePoint<T>) -> T {
    w.pair(&moment_embedding(x).m) + w.c0
}
