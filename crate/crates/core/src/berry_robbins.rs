//! Transported spin frames on the sphere and the lift built from them.
//!
//! A frame is a position dependent unitary `U(r)` with `U(ẑ) = Id`; the
//! transported basis is `|j, m(r)⟩ = U(r)|j, m⟩` and the transported spin
//! operators are `S_i(r) = U(r) S_i U(r)†`. States store the coefficients
//! `λ` in the transported basis. The lift moves `(r, λ)` to
//! `(Spin(g) r, λ′)` where the ambient vector is carried by
//! `U(g·r) D^j(g) U(r)†`.
//!
//! The frame used here is geodesic transport `U(r) = exp(−iθ m̂·S)`, with
//! `(θ, m̂)` the rotation about `ẑ × r` taking `ẑ` to `r`. It is undefined
//! at the south pole.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::finite_diff::{check_step, richardson_mat, richardson_vec};
use crate::groups::{geodesic_lift, spinor_map, SU2Element, SpherePoint};
use crate::harmonics::wigner::{wigner_d, SpinMatrices};
use crate::harmonics::{self, HarmonicCoeffs, Sector};
use crate::linalg::{self, CMatrix};
use crate::manifold::QuadratureGrid;
use crate::scalar::{imag_unit, Real};

/// Largest `2j` for which frames are built.
pub const FRAME_MAX_TWO_J: u32 = 4;

/// Points with `1 + r₃` below this are treated as the south pole.
pub const EXCLUDED_TOL: f64 = 1e-10;

/// Geodesic spin frame for a fixed `j`.
#[derive(Debug, Clone)]
pub struct TransportFrame<T> {
    two_j: u32,
    spins: SpinMatrices<T>,
}

impl<T: Real> TransportFrame<T> {
    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }

    pub fn spins(&self) -> &SpinMatrices<T> {
        &self.spins
    }

    /// Whether `r` lies in the excluded set (the south pole).
    pub fn is_excluded(&self, r: &SpherePoint<T>) -> bool {
        geodesic_lift(r, T::tol(EXCLUDED_TOL)).is_none()
    }

    /// `U(r) = D^j(geodesic lift of r)`.
    pub fn u(&self, r: &SpherePoint<T>) -> Result<CMatrix<T>> {
        let g = geodesic_lift(r, T::tol(EXCLUDED_TOL)).ok_or(Error::ExcludedPoint)?;
        Ok(wigner_d(self.two_j, &g)?.into_matrix())
    }
}

pub fn default_transport<T: Real>(two_j: u32) -> Result<TransportFrame<T>> {
    if two_j > FRAME_MAX_TWO_J {
        return Err(Error::SpinOutOfRange(two_j));
    }
    Ok(TransportFrame { two_j, spins: SpinMatrices::new(two_j)? })
}

/// `S_i(r) = U(r) S_i U(r)†`.
pub fn transported_spin<T: Real>(i: usize, r: &SpherePoint<T>, frame: &TransportFrame<T>) -> Result<CMatrix<T>> {
    let u = frame.u(r)?;
    Ok(u.dot(frame.spins.get(i)).dot(&linalg::adjoint(&u)))
}

/// Point of the sphere with coefficients in the transported basis there.
#[derive(Debug, Clone, PartialEq)]
pub struct BRState<T> {
    pub r: SpherePoint<T>,
    pub lam: Vec<Complex<T>>,
}

impl<T: Real> BRState<T> {
    pub fn new(r: SpherePoint<T>, lam: Vec<Complex<T>>) -> Self {
        Self { r, lam }
    }

    pub fn norm(&self) -> T {
        linalg::cvec_norm(&self.lam)
    }

    /// Ambient vector `U(r) λ`.
    pub fn ambient(&self, frame: &TransportFrame<T>) -> Result<Vec<Complex<T>>> {
        Ok(matvec(&frame.u(&self.r)?, &self.lam))
    }

    pub fn distance(&self, other: &Self) -> T {
        self.r.distance(&other.r) + linalg::cvec_distance(&self.lam, &other.lam)
    }
}

fn matvec<T: Real>(m: &CMatrix<T>, v: &[Complex<T>]) -> Vec<Complex<T>> {
    m.rows()
        .into_iter()
        .map(|row| row.iter().zip(v).fold(Complex::new(T::zero(), T::zero()), |s, (a, b)| s + *a * *b))
        .collect()
}

/// `(r, λ) ↦ (Spin(g) r, U(r′)† [U(r′) D^j(g) U(r)†] U(r) λ)`, evaluated
/// factor by factor rather than simplified.
pub fn br_lift<T: Real>(g: &SU2Element<T>, st: &BRState<T>, frame: &TransportFrame<T>) -> Result<BRState<T>> {
    if st.lam.len() != frame.dim() {
        return Err(Error::DimensionMismatch { expected: frame.dim(), got: st.lam.len() });
    }
    let r2 = st.r.rotated(&spinor_map(g));
    let u1 = frame.u(&st.r)?;
    let u2 = frame.u(&r2)?;
    let d = wigner_d(frame.two_j, g)?.into_matrix();
    let carrier = u2.dot(&d).dot(&linalg::adjoint(&u1));
    let ambient = matvec(&carrier, &matvec(&u1, &st.lam));
    Ok(BRState { r: r2, lam: matvec(&linalg::adjoint(&u2), &ambient) })
}

/// `i d/dt [U(g_t r) D^j(g_t) U(r)†] − i d/dt [U(g_t r) U(r)†]` at `t = 0`
/// with `g_t = exp(−itσ_i/2)`. The remainder is `S_i(r)`.
pub fn recover_spin_generator<T: Real>(
    i: usize,
    r: &SpherePoint<T>,
    frame: &TransportFrame<T>,
    h: f64,
) -> Result<CMatrix<T>> {
    check_step(h)?;
    assert!((1..=3).contains(&i), "generator index {i} not in 1..=3");
    let u_dag = linalg::adjoint(&frame.u(r)?);
    let n = frame.dim();
    let mut failure = None;
    let mut path = |t: T, with_d: bool| -> CMatrix<T> {
        let g = SU2Element::exp_pauli(i - 1, t);
        let moved = r.rotated(&spinor_map(&g));
        let result = frame.u(&moved).and_then(|u| {
            if with_d {
                Ok(u.dot(&wigner_d(frame.two_j, &g)?.into_matrix()).dot(&u_dag))
            } else {
                Ok(u.dot(&u_dag))
            }
        });
        result.unwrap_or_else(|e| {
            failure.get_or_insert(e);
            CMatrix::zeros((n, n))
        })
    };
    let full = richardson_mat(T::lit(h), |t| path(t, true));
    let transport = richardson_mat(T::lit(h), |t| path(t, false));
    if let Some(e) = failure {
        return Err(e);
    }
    let iu = imag_unit::<T>();
    Ok((full - transport).mapv(|z| z * iu))
}

/// Spin-`j` wave function on the sphere in a fixed spin basis: one
/// coefficient table per `m = j, …, −j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField<T> {
    pub two_j: u32,
    pub components: Vec<HarmonicCoeffs<T>>,
}

impl<T: Real> SpinorField<T> {
    pub fn new(two_j: u32, components: Vec<HarmonicCoeffs<T>>) -> Result<Self> {
        let n = two_j as usize + 1;
        if components.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: components.len() });
        }
        Ok(Self { two_j, components })
    }

    /// `a ⊗ |j, m⟩` with `m = j − index`.
    pub fn product(two_j: u32, a: &HarmonicCoeffs<T>, index: usize) -> Result<Self> {
        let n = two_j as usize + 1;
        if index >= n {
            return Err(Error::DimensionMismatch { expected: n, got: index + 1 });
        }
        let zero = HarmonicCoeffs::zeros(a.lmax(), a.sector());
        let components = (0..n).map(|k| if k == index { a.clone() } else { zero.clone() }).collect();
        Ok(Self { two_j, components })
    }

    pub fn norm(&self) -> T {
        self.components.iter().fold(T::zero(), |s, c| s + c.norm() * c.norm()).sqrt()
    }

    pub fn distance(&self, other: &Self) -> T {
        self.components
            .iter()
            .zip(&other.components)
            .fold(T::zero(), |s, (a, b)| s + a.distance(b) * a.distance(b))
            .sqrt()
    }

    /// `Σ_{m′} M_{m m′} a_{m′}`.
    fn mix(&self, m: &CMatrix<T>) -> Self {
        let components = (0..self.components.len())
            .map(|row| {
                self.components.iter().enumerate().fold(
                    HarmonicCoeffs::zeros(self.components[0].lmax(), self.components[0].sector()),
                    |acc, (col, c)| acc.add(&c.scaled_complex(m[[row, col]])),
                )
            })
            .collect();
        Self { two_j: self.two_j, components }
    }
}

/// Untransported lift `(r, v) ↦ (g·r, D^j(g)v)`: rotate each component and
/// mix them with the constant `D^j(g)`.
pub fn fixed_basis_lift<T: Real>(
    g: &SU2Element<T>,
    field: &SpinorField<T>,
    grid: &QuadratureGrid<T>,
) -> Result<SpinorField<T>> {
    let rotated = field
        .components
        .iter()
        .map(|c| harmonics::rotate_coeffs(g, c, grid))
        .collect::<Result<Vec<_>>>()?;
    let d = wigner_d(field.two_j, g)?.into_matrix();
    Ok(SpinorField { two_j: field.two_j, components: rotated }.mix(&d))
}

/// `J_i = i d/dt` of [`fixed_basis_lift`] along `exp(−itσ_i/2)`.
pub fn fixed_basis_generator<T: Real>(
    i: usize,
    field: &SpinorField<T>,
    grid: &QuadratureGrid<T>,
    h: f64,
) -> Result<SpinorField<T>> {
    check_step(h)?;
    assert!((1..=3).contains(&i), "generator index {i} not in 1..=3");
    let lmax = field.components[0].lmax();
    let sector = field.components[0].sector();
    let mut failure = None;
    let flat = richardson_vec(T::lit(h), |t| match fixed_basis_lift(&SU2Element::exp_pauli(i - 1, t), field, grid) {
        Ok(f) => f.components.iter().flat_map(|c| c.as_slice().to_vec()).collect(),
        Err(e) => {
            failure.get_or_insert(e);
            vec![Complex::new(T::zero(), T::zero()); field.components.len() * field.components[0].as_slice().len()]
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let iu = imag_unit::<T>();
    let block = field.components[0].as_slice().len();
    let components = flat
        .chunks(block)
        .map(|c| {
            let v = c.iter().map(|z| *z * iu).collect();
            Ok(HarmonicCoeffs::from_vec(lmax, Sector::Full, v)?.project(sector))
        })
        .collect::<Result<Vec<_>>>()?;
    SpinorField::new(field.two_j, components)
}

/// `(L_i ⊗ Id + Id ⊗ S_i)` applied to the field.
pub fn total_angular_momentum<T: Real>(i: usize, field: &SpinorField<T>) -> Result<SpinorField<T>> {
    let spins = SpinMatrices::new(field.two_j)?;
    let orbital = SpinorField {
        two_j: field.two_j,
        components: field.components.iter().map(|c| harmonics::apply_l(i, c)).collect(),
    };
    let spin = field.mix(spins.get(i));
    let components = orbital.components.iter().zip(&spin.components).map(|(a, b)| a.add(b)).collect();
    SpinorField::new(field.two_j, components)
}
