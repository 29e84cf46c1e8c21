//! The induced representation `U(g)` on sections of `ℒ±`, its
//! finite-difference generators, and the intertwining of those generators
//! with the orbital angular momentum through the bundle isomorphism.

pub mod canonical;

use num_complex::Complex;

use crate::bundles::{self, BundleChoice};
use crate::error::{Error, Result};
use crate::finite_diff::{check_step, richardson_vec};
use crate::groups::{spinor_map, SU2Element, SpherePoint};
use crate::harmonics::{self, HarmonicCoeffs, Sector};
use crate::manifold::QuadratureGrid;
use crate::scalar::{imag_unit, Real};

/// Tolerance used to read off the exchange eigenvalue.
pub const EXCHANGE_TOL: f64 = 1e-10;

/// Section of `ℒ₋` (odd coefficients) or `ℒ₊` (even coefficients).
#[derive(Debug, Clone, PartialEq)]
pub struct Section<T> {
    a: HarmonicCoeffs<T>,
    bundle: BundleChoice,
}

impl<T: Real> Section<T> {
    /// Accepts coefficients tagged with the bundle's sector, or `Full`
    /// coefficients that already satisfy it.
    pub fn new(a: HarmonicCoeffs<T>, bundle: BundleChoice) -> Result<Self> {
        let want = bundle.sector();
        let a = match a.sector() {
            s if s == want => a,
            Sector::Full => a
                .into_sector(want, T::tol(harmonics::SECTOR_TOL))
                .map_err(|e| Error::BundleMismatch(e.to_string()))?,
            other => {
                return Err(Error::BundleMismatch(format!(
                    "{} coefficients cannot describe a section of {:?}",
                    other.name(),
                    bundle
                )))
            }
        };
        Ok(Self { a, bundle })
    }

    pub fn coeffs(&self) -> &HarmonicCoeffs<T> {
        &self.a
    }

    pub fn bundle(&self) -> BundleChoice {
        self.bundle
    }

    pub fn norm(&self) -> T {
        self.a.norm()
    }

    /// Fiber value at `x`: `a(x) φ(x)` for `ℒ₋`, the scalar `a(x)` for `ℒ₊`.
    pub fn fiber_at(&self, x: &SpherePoint<T>) -> Vec<Complex<T>> {
        fiber_of(self.bundle, harmonics::evaluate(&self.a, x), x)
    }
}

fn fiber_of<T: Real>(bundle: BundleChoice, value: Complex<T>, x: &SpherePoint<T>) -> Vec<Complex<T>> {
    match bundle {
        BundleChoice::LMinus => bundles::LMinusElement::from_scalar(x, value).fiber().to_vec(),
        BundleChoice::LPlus => vec![value],
    }
}

/// `(U(g)Ψ)([x]) = τ_g Ψ([g⁻¹ x])`, realized on coefficients as
/// `a ↦ a ∘ Spin(g)⁻¹`.
pub fn act_u<T: Real>(g: &SU2Element<T>, s: &Section<T>, grid: &QuadratureGrid<T>) -> Result<Section<T>> {
    Ok(Section { a: harmonics::rotate_coeffs(g, &s.a, grid)?, bundle: s.bundle })
}

/// `J_i s = i d/dt|₀ U(exp(−i t σ_i/2)) s`, by Richardson-extrapolated
/// central differences with steps `h` and `h/2`.
pub fn generator_j<T: Real>(
    i: usize,
    s: &Section<T>,
    grid: &QuadratureGrid<T>,
    h: f64,
) -> Result<Section<T>> {
    check_step(h)?;
    assert!((1..=3).contains(&i), "generator index {i} not in 1..=3");
    grid.require(s.a.lmax())?;
    let mut failure = None;
    let d = richardson_vec(T::lit(h), |t| {
        match harmonics::rotate_coeffs(&SU2Element::exp_pauli(i - 1, t), &s.a, grid) {
            Ok(b) => b.as_slice().to_vec(),
            Err(e) => {
                failure.get_or_insert(e);
                vec![Complex::new(T::zero(), T::zero()); s.a.as_slice().len()]
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let iu = imag_unit::<T>();
    let c = d.into_iter().map(|z| z * iu).collect();
    let a = HarmonicCoeffs::from_vec(s.a.lmax(), Sector::Full, c)?.project(s.a.sector());
    Ok(Section { a, bundle: s.bundle })
}

/// `‖J_i s − L_i a‖ / ‖a‖`.
pub fn generator_error<T: Real>(
    i: usize,
    s: &Section<T>,
    grid: &QuadratureGrid<T>,
    h: f64,
) -> Result<T> {
    let j = generator_j(i, s, grid, h)?;
    let l = harmonics::apply_l(i, &s.a);
    Ok(j.a.distance(&l) / s.norm().max(T::min_positive_value()))
}

/// Fibers of `U(exp(−i t σ_i/2))Ψ` at the grid nodes, computed through the
/// bundle lift: the section is sampled at `g⁻¹x` and carried back with `τ_g`.
fn lifted_fibers<T: Real>(
    g: &SU2Element<T>,
    s: &Section<T>,
    grid: &QuadratureGrid<T>,
) -> Vec<Complex<T>> {
    let rinv = spinor_map(g).transpose();
    let mut out = Vec::with_capacity(grid.len() * 3);
    for x in grid.nodes() {
        let y = x.rotated(&rinv);
        let value = harmonics::evaluate(&s.a, &y);
        match s.bundle {
            BundleChoice::LMinus => {
                let lifted = bundles::lift_tau(g, &bundles::LMinusElement::from_scalar(&y, value));
                // Express the lifted fiber at the node itself; its base is [x].
                out.extend_from_slice(lifted.fiber());
            }
            BundleChoice::LPlus => out.push(value),
        }
    }
    out
}

/// `‖J_i Φ(a) − Φ(L_i a)‖ / ‖a‖`, with the left side differentiated at the
/// bundle level and both sides compared fiberwise in the quadrature norm.
pub fn check_intertwining<T: Real>(
    i: usize,
    s: &Section<T>,
    grid: &QuadratureGrid<T>,
    h: f64,
) -> Result<T> {
    check_step(h)?;
    assert!((1..=3).contains(&i), "generator index {i} not in 1..=3");
    grid.require(s.a.lmax())?;
    let d = richardson_vec(T::lit(h), |t| lifted_fibers(&SU2Element::exp_pauli(i - 1, t), s, grid));
    let iu = imag_unit::<T>();
    let la = harmonics::apply_l(i, &s.a);
    let width = match s.bundle {
        BundleChoice::LMinus => 3,
        BundleChoice::LPlus => 1,
    };
    let mut acc = T::zero();
    for (k, (x, w)) in grid.nodes().iter().zip(grid.weights()).enumerate() {
        let want = fiber_of(s.bundle, harmonics::evaluate(&la, x), x);
        let got = &d[k * width..(k + 1) * width];
        let diff = got.iter().zip(&want).fold(T::zero(), |m, (g, w)| m + (*g * iu - *w).norm_sqr());
        acc += *w * diff;
    }
    Ok(acc.sqrt() / s.norm().max(T::min_positive_value()))
}

/// `‖[J₁, J₂]s − i J₃ s‖ / ‖s‖` with every generator taken by finite
/// differences.
pub fn closure_residual<T: Real>(s: &Section<T>, grid: &QuadratureGrid<T>, h: f64) -> Result<T> {
    let j1 = |x: &Section<T>| generator_j(1, x, grid, h);
    let j2 = |x: &Section<T>| generator_j(2, x, grid, h);
    let comm = j1(&j2(s)?)?.a.sub(&j2(&j1(s)?)?.a);
    let rhs = generator_j(3, s, grid, h)?.a.scaled_complex(imag_unit());
    Ok(comm.distance(&rhs) / s.norm().max(T::min_positive_value()))
}

/// Numerical exchange eigenvalue `Σ w conj(a(x)) a(−x) / Σ w |a(x)|²`.
pub fn exchange_eigenvalue<T: Real>(s: &Section<T>, grid: &QuadratureGrid<T>) -> Complex<T> {
    let mut num = Complex::new(T::zero(), T::zero());
    let mut den = T::zero();
    for (x, w) in grid.nodes().iter().zip(grid.weights()) {
        let v = harmonics::evaluate(&s.a, x);
        let u = harmonics::evaluate(&s.a, &x.antipode());
        num += v.conj() * u * *w;
        den += v.norm_sqr() * *w;
    }
    if den == T::zero() {
        return Complex::new(T::lit(s.bundle.exchange_sign() as f64), T::zero());
    }
    num / den
}

/// `+1` for `ℒ₊` sections, `−1` for `ℒ₋`, read off numerically and checked
/// against [`EXCHANGE_TOL`].
pub fn exchange_parity<T: Real>(s: &Section<T>, grid: &QuadratureGrid<T>) -> Result<i8> {
    let e = exchange_eigenvalue(s, grid);
    let sign: i8 = if e.re >= T::zero() { 1 } else { -1 };
    let dev = (e - Complex::new(T::lit(sign as f64), T::zero())).norm();
    if dev > T::tol(EXCHANGE_TOL) {
        return Err(Error::SectorViolation { sector: "exchange", stray: dev.to_f64_lossy() });
    }
    Ok(sign)
}
