//! Classical side of the canonical group `W* ⋊ SU(2)`: the phase space
//! `W × W*`, the momentum map
//!
//! `P(φ, A)(u, ψ) = ψ([Â, u]) + φ(u)`,
//!
//! and the canonical Poisson bracket with `{u_a, ψ_b} = δ_ab` in an
//! orthonormal basis of `W`. Functionals are stored as symmetric traceless
//! matrices paired by the trace, so `W*` and `W` share a representation.
//!
//! With that bracket sign the Lie bracket that makes `P` a homomorphism is
//! `[(φ₁, A₁), (φ₂, A₂)] = (φ₁∘R(A₂) − φ₂∘R(A₁), A₁ × A₂)`, where
//! `(φ∘R(A))(u) = φ([Â, u])`. The opposite sign on the `W*` part fails by
//! an `O(1)` residual (see the tests).

use crate::finite_diff;
use crate::groups::{spinor_map, SU2Element};
use crate::linalg::{self, Mat3, Vec3};
use crate::manifold::{MomentPoint, WFunctional};
use crate::scalar::Real;

/// Step used by the finite-difference bracket.
pub const FD_STEP: f64 = 1e-5;

/// Point `(u, ψ)` of `T*W ≅ W × W*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint<T> {
    pub u: MomentPoint<T>,
    pub psi: WFunctional<T>,
}

impl<T: Real> PhasePoint<T> {
    /// Drops any offset carried by `psi`; covectors have none.
    pub fn new(u: MomentPoint<T>, psi: WFunctional<T>) -> Self {
        let psi = WFunctional::linear(*psi.coefficients()).expect("already symmetric traceless");
        Self { u, psi }
    }

    /// Coordinates `(u_1..u_5, ψ_1..ψ_5)` in the basis of [`w_basis`].
    pub fn coords(&self) -> [T; 10] {
        let b = w_basis::<T>();
        let mut out = [T::zero(); 10];
        for a in 0..5 {
            out[a] = linalg::frobenius_dot(&b[a], self.u.matrix());
            out[5 + a] = linalg::frobenius_dot(&b[a], self.psi.coefficients());
        }
        out
    }

    pub fn from_coords(x: &[T; 10]) -> Self {
        let u = combine(&x[..5]);
        let psi = combine(&x[5..]);
        Self {
            u: MomentPoint::new(u).expect("basis combination"),
            psi: WFunctional::linear(psi).expect("basis combination"),
        }
    }
}

/// Element `(φ, A)` of the Lie algebra `W* ⋊ su(2)`, with `A` the rotation
/// rate vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemidirectLieElement<T> {
    pub phi_w: WFunctional<T>,
    pub a: Vec3<T>,
}

impl<T: Real> SemidirectLieElement<T> {
    pub fn new(phi_w: WFunctional<T>, a: Vec3<T>) -> Self {
        Self { phi_w, a }
    }

    pub fn rotation(a: Vec3<T>) -> Self {
        Self { phi_w: WFunctional::zero(), a }
    }

    pub fn translation(phi_w: WFunctional<T>) -> Self {
        Self { phi_w, a: [T::zero(); 3] }
    }

    pub fn add(&self, other: &Self) -> Self {
        let a = [self.a[0] + other.a[0], self.a[1] + other.a[1], self.a[2] + other.a[2]];
        Self { phi_w: self.phi_w.add(&other.phi_w), a }
    }

    pub fn scale(&self, s: T) -> Self {
        Self { phi_w: self.phi_w.scale(s), a: linalg::scale(&self.a, s) }
    }
}

/// Group element `(φ', g)` acting on phase space by
/// `(u, φ) ↦ (R(g)u, R*(g⁻¹)φ − φ')`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SemidirectGroupElement<T> {
    pub phi_w: WFunctional<T>,
    pub g: SU2Element<T>,
}

impl<T: Real> SemidirectGroupElement<T> {
    /// `(φ₁ + R*(g₁⁻¹)φ₂, g₁g₂)`, the law that makes [`act_phase`] an action.
    pub fn compose(&self, other: &Self) -> Self {
        let moved = other.phi_w.rotated(&spinor_map(&self.g));
        Self { phi_w: self.phi_w.add(&moved), g: self.g * other.g }
    }
}

pub fn act_phase<T: Real>(e: &SemidirectGroupElement<T>, pt: &PhasePoint<T>) -> PhasePoint<T> {
    let r = spinor_map(&e.g);
    let rm = r.matrix();
    let u = linalg::mat_mul(&linalg::mat_mul(rm, pt.u.matrix()), &linalg::transpose(rm));
    let psi = pt.psi.rotated(&r).add(&e.phi_w.scale(-T::one()));
    PhasePoint::new(MomentPoint::project(&u), psi)
}

/// Orthonormal basis of `W` under `tr(aᵀb)`.
pub fn w_basis<T: Real>() -> [Mat3<T>; 5] {
    let z = T::zero();
    let h = T::one() / T::lit(2.0).sqrt();
    let d1 = T::one() / T::lit(6.0).sqrt();
    [
        [[h, z, z], [z, -h, z], [z, z, z]],
        [[d1, z, z], [z, d1, z], [z, z, -d1 - d1]],
        [[z, h, z], [h, z, z], [z, z, z]],
        [[z, z, h], [z, z, z], [h, z, z]],
        [[z, z, z], [z, z, h], [z, h, z]],
    ]
}

fn combine<T: Real>(x: &[T]) -> Mat3<T> {
    w_basis::<T>()
        .iter()
        .zip(x)
        .fold(linalg::mat_zero(), |m, (b, c)| linalg::mat_add(&m, &linalg::mat_scale(b, *c)))
}

/// Infinitesimal action `R(A)u = [Â, u]`.
pub fn infinitesimal_action<T: Real>(a: &Vec3<T>, u: &Mat3<T>) -> Mat3<T> {
    linalg::commutator(&linalg::skew(a), u)
}

/// `P(e)(pt) = tr(ψ [Â, u]) + tr(φ u)`.
#[allow(non_snake_case)]
pub fn P_observable<T: Real>(e: &SemidirectLieElement<T>, pt: &PhasePoint<T>) -> T {
    pt.psi.pair(&infinitesimal_action(&e.a, pt.u.matrix())) + e.phi_w.pair(pt.u.matrix())
}

/// `(∂P/∂u, ∂P/∂ψ)` as matrices in `W`.
fn gradients<T: Real>(e: &SemidirectLieElement<T>, pt: &PhasePoint<T>) -> (Mat3<T>, Mat3<T>) {
    let ahat = linalg::skew(&e.a);
    let du = linalg::mat_add(&linalg::commutator(pt.psi.coefficients(), &ahat), e.phi_w.coefficients());
    let dpsi = linalg::commutator(&ahat, pt.u.matrix());
    (du, dpsi)
}

/// `{P(e₁), P(e₂)}(pt) = ⟨∂_u P₁, ∂_ψ P₂⟩ − ⟨∂_ψ P₁, ∂_u P₂⟩`.
pub fn poisson_bracket<T: Real>(
    e1: &SemidirectLieElement<T>,
    e2: &SemidirectLieElement<T>,
    pt: &PhasePoint<T>,
) -> T {
    let (du1, dp1) = gradients(e1, pt);
    let (du2, dp2) = gradients(e2, pt);
    linalg::frobenius_dot(&du1, &dp2) - linalg::frobenius_dot(&dp1, &du2)
}

/// Canonical bracket of two arbitrary phase-space functions by central
/// differences in the coordinates of [`PhasePoint::coords`].
pub fn poisson_bracket_fd<T, F, G>(f: F, g: G, pt: &PhasePoint<T>, h: T) -> T
where
    T: Real,
    F: Fn(&PhasePoint<T>) -> T,
    G: Fn(&PhasePoint<T>) -> T,
{
    let x = pt.coords();
    let partial = |fun: &dyn Fn(&PhasePoint<T>) -> T, k: usize| {
        finite_diff::richardson_real(h, |s| {
            let mut y = x;
            y[k] += s;
            fun(&PhasePoint::from_coords(&y))
        })
    };
    (0..5).fold(T::zero(), |acc, a| {
        acc + partial(&f, a) * partial(&g, 5 + a) - partial(&f, 5 + a) * partial(&g, a)
    })
}

/// `[(φ₁, A₁), (φ₂, A₂)] = ([φ₁, Â₂] − [φ₂, Â₁], A₁ × A₂)`; the matrix
/// `[φ, Â]` represents `φ∘R(A)`.
pub fn lie_bracket<T: Real>(
    e1: &SemidirectLieElement<T>,
    e2: &SemidirectLieElement<T>,
) -> SemidirectLieElement<T> {
    let t1 = linalg::commutator(e1.phi_w.coefficients(), &linalg::skew(&e2.a));
    let t2 = linalg::commutator(e2.phi_w.coefficients(), &linalg::skew(&e1.a));
    let phi = MomentPoint::project(&linalg::mat_sub(&t1, &t2));
    SemidirectLieElement {
        phi_w: WFunctional::linear(*phi.matrix()).expect("projected"),
        a: linalg::cross(&e1.a, &e2.a),
    }
}

/// `max |{P(e₁), P(e₂)}(pt) − P([e₁, e₂])(pt)|` over the sample points.
pub fn check_homomorphism<T: Real>(
    e1: &SemidirectLieElement<T>,
    e2: &SemidirectLieElement<T>,
    points: &[PhasePoint<T>],
) -> T {
    let br = lie_bracket(e1, e2);
    points.iter().fold(T::zero(), |m, pt| {
        m.max((poisson_bracket(e1, e2, pt) - P_observable(&br, pt)).abs())
    })
}

/// `{P₁, {P₂, P₃}} + cyclic` at `pt`; the outer brackets are taken by
/// finite differences of the analytic inner bracket.
pub fn jacobi_residual<T: Real>(
    e: [&SemidirectLieElement<T>; 3],
    pt: &PhasePoint<T>,
    h: T,
) -> T {
    let mut total = T::zero();
    for k in 0..3 {
        let (a, b, c) = (e[k], e[(k + 1) % 3], e[(k + 2) % 3]);
        total += poisson_bracket_fd(|p| P_observable(a, p), |p| poisson_bracket(b, c, p), pt, h);
    }
    total.abs()
}
