//! SU(2), its image SO(3) under the spinor map, the disconnected subgroup
//! `H = U(1) ∪ U(1)·J`, and the quotient maps `SU(2) → S² → ℝP²`.
//!
//! Conventions:
//! * an element `(z0, z1)` stands for the matrix `((z0, z̄1), (−z1, z̄0))`;
//! * `Spin(exp(−iψ n̂·σ/2)) = R(ψ, n̂)`, the active right-handed rotation;
//! * the base point of `SU(2)/U(1) ≅ S²` is the north pole `e₃`.

use std::ops::Mul;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat3, Vec3};
use crate::scalar::{cr, Real};

/// Accepted deviation from unit norm for user-supplied vectors and pairs.
pub const UNIT_TOL: f64 = 1e-9;

/// Coordinates below this magnitude count as zero when picking the
/// representative of a point of ℝP².
pub const RP2_ZERO_TOL: f64 = 1e-12;

/// Entry magnitude below which `h_membership` treats a matrix entry as zero.
pub const H_MEMBERSHIP_TOL: f64 = 1e-10;

/// Element of SU(2) stored as the unit pair `(z0, z1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SU2Element<T> {
    z0: Complex<T>,
    z1: Complex<T>,
}

impl<T: Real> SU2Element<T> {
    /// Validates `|z0|² + |z1|² = 1` to [`UNIT_TOL`] and renormalizes.
    pub fn new(z0: Complex<T>, z1: Complex<T>) -> Result<Self> {
        let n2 = z0.norm_sqr() + z1.norm_sqr();
        if (n2 - T::one()).abs() > T::tol(UNIT_TOL) {
            return Err(Error::NotUnit { norm: n2.sqrt().to_f64_lossy() });
        }
        Ok(Self::normalized(z0, z1))
    }

    fn normalized(z0: Complex<T>, z1: Complex<T>) -> Self {
        let n = (z0.norm_sqr() + z1.norm_sqr()).sqrt();
        Self { z0: z0 / n, z1: z1 / n }
    }

    pub fn identity() -> Self {
        Self { z0: cr(T::one()), z1: cr(T::zero()) }
    }

    pub fn z0(&self) -> Complex<T> {
        self.z0
    }

    pub fn z1(&self) -> Complex<T> {
        self.z1
    }

    /// The 2x2 matrix `((z0, z̄1), (−z1, z̄0))`.
    pub fn matrix(&self) -> [[Complex<T>; 2]; 2] {
        [[self.z0, self.z1.conj()], [-self.z1, self.z0.conj()]]
    }

    pub fn inverse(&self) -> Self {
        Self { z0: self.z0.conj(), z1: -self.z1 }
    }

    /// `−g`, the other preimage of `Spin(g)`.
    pub fn negate(&self) -> Self {
        Self { z0: -self.z0, z1: -self.z1 }
    }

    /// Group product, renormalized against drift.
    pub fn compose(&self, other: &Self) -> Self {
        let (a0, a1) = (self.z0, self.z1);
        let (b0, b1) = (other.z0, other.z1);
        Self::normalized(a0 * b0 - a1.conj() * b1, a1 * b0 + a0.conj() * b1)
    }

    /// `exp(−i t σ_axis / 2)` for a coordinate axis `0, 1, 2`.
    pub fn exp_pauli(axis: usize, t: T) -> Self {
        let mut n = [T::zero(); 3];
        n[axis] = T::one();
        axis_angle_unchecked(t, &n)
    }

    /// Largest entry difference of the underlying matrices.
    pub fn distance(&self, other: &Self) -> T {
        (self.z0 - other.z0).norm().max((self.z1 - other.z1).norm())
    }

    /// Unit quaternion `(q0, q1, q2, q3)` with `g = q0 − i q·σ`.
    pub fn quaternion(&self) -> [T; 4] {
        [self.z0.re, self.z1.im, -self.z1.re, -self.z0.im]
    }
}

impl<T: Real> Mul for SU2Element<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.compose(&rhs)
    }
}

impl<T: Real> Mul for &SU2Element<T> {
    type Output = SU2Element<T>;
    fn mul(self, rhs: Self) -> SU2Element<T> {
        self.compose(rhs)
    }
}

/// Rotation matrix in SO(3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SO3Matrix<T> {
    m: Mat3<T>,
}

impl<T: Real> SO3Matrix<T> {
    /// Validates orthogonality and unit determinant to [`UNIT_TOL`].
    pub fn new(m: Mat3<T>) -> Result<Self> {
        let gram = linalg::mat_mul(&linalg::transpose(&m), &m);
        let dev = linalg::frobenius_norm(&linalg::mat_sub(&gram, &linalg::mat_identity()));
        if dev > T::tol(UNIT_TOL) {
            return Err(Error::NotRotation(format!("|mᵀm − I| = {dev}")));
        }
        let d = linalg::det(&m);
        if (d - T::one()).abs() > T::tol(UNIT_TOL) {
            return Err(Error::NotRotation(format!("det = {d}")));
        }
        Ok(Self { m })
    }

    pub fn identity() -> Self {
        Self { m: linalg::mat_identity() }
    }

    pub fn matrix(&self) -> &Mat3<T> {
        &self.m
    }

    pub fn apply(&self, x: &Vec3<T>) -> Vec3<T> {
        linalg::mat_vec(&self.m, x)
    }

    pub fn transpose(&self) -> Self {
        Self { m: linalg::transpose(&self.m) }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self { m: linalg::mat_mul(&self.m, &other.m) }
    }

    /// Frobenius norm of the difference.
    pub fn distance(&self, other: &Self) -> T {
        linalg::frobenius_norm(&linalg::mat_sub(&self.m, &other.m))
    }
}

/// Rotation axis and angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngle<T> {
    n_hat: Vec3<T>,
    psi: T,
}

impl<T: Real> AxisAngle<T> {
    pub fn new(psi: T, n_hat: Vec3<T>) -> Result<Self> {
        Ok(Self { n_hat: unit_vector(n_hat)?, psi })
    }

    pub fn axis(&self) -> Vec3<T> {
        self.n_hat
    }

    pub fn angle(&self) -> T {
        self.psi
    }

    pub fn to_su2(&self) -> SU2Element<T> {
        axis_angle_unchecked(self.psi, &self.n_hat)
    }

    pub fn to_rotation(&self) -> SO3Matrix<T> {
        rodrigues(self.psi, &self.n_hat)
    }
}

/// Which connected component of `H` an element lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HKind {
    /// `diag(λ, λ̄)`.
    Diagonal,
    /// `((0, λ̄), (−λ, 0))`.
    Antidiagonal,
}

/// Element of the stabilizer subgroup `H ⊂ SU(2)` of a point of ℝP².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HElement<T> {
    kind: HKind,
    lambda: Complex<T>,
}

impl<T: Real> HElement<T> {
    pub fn new(kind: HKind, lambda: Complex<T>) -> Result<Self> {
        let n = lambda.norm();
        if (n - T::one()).abs() > T::tol(UNIT_TOL) {
            return Err(Error::NotUnit { norm: n.to_f64_lossy() });
        }
        Ok(Self { kind, lambda: lambda / n })
    }

    pub fn diagonal_angle(theta: T) -> Self {
        Self { kind: HKind::Diagonal, lambda: Complex::from_polar(T::one(), theta) }
    }

    pub fn antidiagonal_angle(theta: T) -> Self {
        Self { kind: HKind::Antidiagonal, lambda: Complex::from_polar(T::one(), theta) }
    }

    pub fn kind(&self) -> HKind {
        self.kind
    }

    pub fn lambda(&self) -> Complex<T> {
        self.lambda
    }

    /// Embedding into SU(2).
    pub fn to_su2(&self) -> SU2Element<T> {
        match self.kind {
            HKind::Diagonal => SU2Element::normalized(self.lambda, cr(T::zero())),
            HKind::Antidiagonal => SU2Element::normalized(cr(T::zero()), self.lambda),
        }
    }

    pub fn inverse(&self) -> Self {
        match self.kind {
            HKind::Diagonal => Self { kind: HKind::Diagonal, lambda: self.lambda.conj() },
            // ((0, λ̄), (−λ, 0))⁻¹ = ((0, −λ̄), (λ, 0)), i.e. λ ↦ −λ.
            HKind::Antidiagonal => Self { kind: HKind::Antidiagonal, lambda: -self.lambda },
        }
    }

    /// Group product inside `H`.
    pub fn compose(&self, other: &Self) -> Self {
        h_membership(&(self.to_su2() * other.to_su2()))
            .expect("H is closed under products")
    }
}

/// Point of the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint<T> {
    x: Vec3<T>,
}

impl<T: Real> SpherePoint<T> {
    /// Validates `|x| = 1` to [`UNIT_TOL`] and renormalizes.
    pub fn new(x: Vec3<T>) -> Result<Self> {
        Ok(Self { x: unit_vector(x)? })
    }

    /// Normalizes any nonzero vector.
    pub fn from_direction(x: Vec3<T>) -> Result<Self> {
        let n = linalg::norm(&x);
        if !(n > T::zero()) || !n.is_finite() {
            return Err(Error::NotUnit { norm: n.to_f64_lossy() });
        }
        Ok(Self { x: linalg::scale(&x, T::one() / n) })
    }

    pub(crate) fn renormalize(x: Vec3<T>) -> Self {
        Self { x: linalg::scale(&x, T::one() / linalg::norm(&x)) }
    }

    pub fn north() -> Self {
        Self { x: [T::zero(), T::zero(), T::one()] }
    }

    pub fn coords(&self) -> &Vec3<T> {
        &self.x
    }

    pub fn antipode(&self) -> Self {
        Self { x: [-self.x[0], -self.x[1], -self.x[2]] }
    }

    pub fn rotated(&self, r: &SO3Matrix<T>) -> Self {
        Self::renormalize(r.apply(&self.x))
    }

    pub fn distance(&self, other: &Self) -> T {
        linalg::max_abs_diff(&self.x, &other.x)
    }
}

/// Point of ℝP² held by its canonical representative on the sphere.
///
/// The representative has its last coordinate that is not negligible
/// (scanning `x₃, x₂, x₁`) positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RP2Point<T> {
    rep: SpherePoint<T>,
}

impl<T: Real> RP2Point<T> {
    pub fn from_sphere(p: &SpherePoint<T>) -> Self {
        let x = p.coords();
        let zero = T::tol(RP2_ZERO_TOL);
        let flip = [2usize, 1, 0]
            .into_iter()
            .find(|&i| x[i].abs() >= zero)
            .map(|i| x[i] < T::zero())
            .unwrap_or(false);
        Self { rep: if flip { p.antipode() } else { *p } }
    }

    pub fn new(x: Vec3<T>) -> Result<Self> {
        Ok(Self::from_sphere(&SpherePoint::new(x)?))
    }

    pub fn rep(&self) -> &SpherePoint<T> {
        &self.rep
    }

    /// Distance between canonical representatives.
    pub fn distance(&self, other: &Self) -> T {
        self.rep.distance(&other.rep)
    }

    /// Representative-free distance `min(|x − y|, |x + y|)`.
    pub fn class_distance(&self, other: &Self) -> T {
        let d1 = self.rep.distance(&other.rep);
        let d2 = self.rep.distance(&other.rep.antipode());
        d1.min(d2)
    }
}

fn unit_vector<T: Real>(x: Vec3<T>) -> Result<Vec3<T>> {
    let n = linalg::norm(&x);
    if !n.is_finite() || (n - T::one()).abs() > T::tol(UNIT_TOL) {
        return Err(Error::NotUnit { norm: n.to_f64_lossy() });
    }
    Ok(linalg::scale(&x, T::one() / n))
}

fn axis_angle_unchecked<T: Real>(psi: T, n: &Vec3<T>) -> SU2Element<T> {
    let half = psi / T::lit(2.0);
    let (s, c) = half.sin_cos();
    // cos(ψ/2) Id − i sin(ψ/2) n̂·σ
    let z0 = Complex::new(c, -s * n[2]);
    let z1 = Complex::new(-s * n[1], s * n[0]);
    SU2Element::normalized(z0, z1)
}

fn rodrigues<T: Real>(psi: T, n: &Vec3<T>) -> SO3Matrix<T> {
    let big_n = linalg::skew(n);
    let n2 = linalg::mat_mul(&big_n, &big_n);
    let (s, c) = psi.sin_cos();
    let m = linalg::mat_add(
        &linalg::mat_add(&linalg::mat_identity(), &linalg::mat_scale(&big_n, s)),
        &linalg::mat_scale(&n2, T::one() - c),
    );
    SO3Matrix { m }
}

/// `cos(ψ/2) Id − i sin(ψ/2) n̂·σ`.
pub fn su2_from_axis_angle<T: Real>(psi: T, n_hat: Vec3<T>) -> Result<SU2Element<T>> {
    Ok(AxisAngle::new(psi, n_hat)?.to_su2())
}

/// `Id + sin ψ N + (1 − cos ψ) N²` with `N` the skew matrix of `n̂`.
pub fn rotation_from_axis_angle<T: Real>(psi: T, n_hat: Vec3<T>) -> Result<SO3Matrix<T>> {
    Ok(AxisAngle::new(psi, n_hat)?.to_rotation())
}

/// The double cover `SU(2) → SO(3)`, characterized by
/// `g (x·σ) g† = (R x)·σ`.
pub fn spinor_map<T: Real>(g: &SU2Element<T>) -> SO3Matrix<T> {
    let [q0, q1, q2, q3] = g.quaternion();
    let two = T::lit(2.0);
    let one = T::one();
    let m = [
        [
            one - two * (q2 * q2 + q3 * q3),
            two * (q1 * q2 - q0 * q3),
            two * (q1 * q3 + q0 * q2),
        ],
        [
            two * (q1 * q2 + q0 * q3),
            one - two * (q1 * q1 + q3 * q3),
            two * (q2 * q3 - q0 * q1),
        ],
        [
            two * (q1 * q3 - q0 * q2),
            two * (q2 * q3 + q0 * q1),
            one - two * (q1 * q1 + q2 * q2),
        ],
    ];
    SO3Matrix { m }
}

/// Classifies `g` as a diagonal or antidiagonal element of `H`, or neither.
pub fn h_membership<T: Real>(g: &SU2Element<T>) -> Option<HElement<T>> {
    let tol = T::tol(H_MEMBERSHIP_TOL);
    if g.z1.norm() <= tol {
        Some(HElement { kind: HKind::Diagonal, lambda: g.z0 / g.z0.norm() })
    } else if g.z0.norm() <= tol {
        Some(HElement { kind: HKind::Antidiagonal, lambda: g.z1 / g.z1.norm() })
    } else {
        None
    }
}

/// Right action of `H` on SU(2): `g ↦ g·h`.
pub fn h_orbit_action<T: Real>(g: &SU2Element<T>, h: &HElement<T>) -> SU2Element<T> {
    let (a, b) = (g.z0, g.z1);
    let l = h.lambda;
    match h.kind {
        HKind::Diagonal => SU2Element::normalized(a * l, b * l),
        HKind::Antidiagonal => SU2Element::normalized(-b.conj() * l, a.conj() * l),
    }
}

/// `x(g) = Spin(g)·e₃`.
pub fn quotient_to_sphere<T: Real>(g: &SU2Element<T>) -> SpherePoint<T> {
    let r = spinor_map(g);
    SpherePoint::renormalize([r.m[0][2], r.m[1][2], r.m[2][2]])
}

/// Class of `x(g)` in `S²/ℤ₂ ≅ SU(2)/H`.
pub fn quotient_to_rp2<T: Real>(g: &SU2Element<T>) -> RP2Point<T> {
    RP2Point::from_sphere(&quotient_to_sphere(g))
}

/// Geodesic section of `SU(2) → S²`: the rotation about `ẑ × y` carrying
/// `ẑ` to `y`. Singular only at the south pole, where it returns `None`.
pub fn geodesic_lift<T: Real>(y: &SpherePoint<T>, excluded_tol: T) -> Option<SU2Element<T>> {
    let [y1, y2, y3] = *y.coords();
    let one_plus = T::one() + y3;
    if one_plus <= excluded_tol {
        return None;
    }
    // cos(θ/2) = sqrt((1 + y₃)/2); sin(θ/2) m̂ = (−y₂, y₁, 0) / (2 cos(θ/2)).
    let c = (one_plus / T::lit(2.0)).sqrt();
    let denom = T::lit(2.0) * c;
    let z1 = Complex::new(-y1 / denom, -y2 / denom);
    Some(SU2Element::normalized(cr(c), z1))
}

/// Geodesic section extended to the south pole by the half turn about `x̂`.
pub fn section_of_sphere<T: Real>(y: &SpherePoint<T>) -> SU2Element<T> {
    geodesic_lift(y, T::tol(1e-12)).unwrap_or_else(|| {
        axis_angle_unchecked(T::PI(), &[T::one(), T::zero(), T::zero()])
    })
}
