//! The two line bundles over ℝP².
//!
//! `ℒ₋` is realized twice: as the sub-bundle of `ℝP² × ℂ³` whose fiber over
//! `[x]` is `ℂ·φ(x)` with `φ(x) = x`, and as the associated bundle
//! `SU(2) ×_κ ℂ`. [`iso_phi`] identifies the two. Sections of `ℒ₋` are odd
//! functions on the sphere; sections of `ℒ₊` are even ones.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::groups::{
    quotient_to_rp2, quotient_to_sphere, section_of_sphere, spinor_map, HElement, HKind, RP2Point,
    SU2Element, SpherePoint,
};
use crate::harmonics::{self, HarmonicCoeffs, Sector};
use crate::linalg::{CMatrix, Vec3};
use crate::manifold::{ChartIndex, QuadratureGrid};
use crate::scalar::{cr, Real};

/// Allowed distance of an `ℒ₋` fiber vector from the line `ℂ·φ(x)`.
pub const FIBER_TOL: f64 = 1e-10;

/// Allowed violation of `p·f = f` by a triple handed to
/// [`module_iso_inverse`].
pub const PROJECTOR_TOL: f64 = 1e-8;

pub type C3<T> = [Complex<T>; 3];

fn c3_dot<T: Real>(a: &C3<T>, b: &C3<T>) -> Complex<T> {
    a[0].conj() * b[0] + a[1].conj() * b[1] + a[2].conj() * b[2]
}

fn c3_norm<T: Real>(a: &C3<T>) -> T {
    c3_dot(a, a).re.sqrt()
}

fn c3_scale<T: Real>(a: &C3<T>, s: Complex<T>) -> C3<T> {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn c3_sub<T: Real>(a: &C3<T>, b: &C3<T>) -> C3<T> {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// `φ(x) = (x₁, x₂, x₃)`: unit length, odd, smooth.
pub fn phi<T: Real>(x: &SpherePoint<T>) -> C3<T> {
    let v = x.coords();
    [cr(v[0]), cr(v[1]), cr(v[2])]
}

/// The nontrivial character of `H`.
pub fn kappa<T: Real>(h: &HElement<T>) -> i8 {
    match h.kind() {
        HKind::Diagonal => 1,
        HKind::Antidiagonal => -1,
    }
}

/// Which of the two line bundles a section lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BundleChoice {
    /// Trivial bundle; even functions; bosons.
    LPlus,
    /// Nontrivial bundle; odd functions; fermions.
    LMinus,
}

impl BundleChoice {
    pub fn sector(self) -> Sector {
        match self {
            BundleChoice::LPlus => Sector::Even,
            BundleChoice::LMinus => Sector::Odd,
        }
    }

    /// Eigenvalue of the exchange map on sections.
    pub fn exchange_sign(self) -> i8 {
        match self {
            BundleChoice::LPlus => 1,
            BundleChoice::LMinus => -1,
        }
    }
}

/// A representative `(g, v)` of a point `[(g, v)]` of `SU(2) ×_κ ℂ`.
///
/// Two representatives are equivalent when `(g', v') = (g h, κ(h⁻¹) v)` for
/// some `h ∈ H`; compare with [`AssocElement::equivalent`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssocElement<T> {
    g: SU2Element<T>,
    v: Complex<T>,
}

impl<T: Real> AssocElement<T> {
    pub fn new(g: SU2Element<T>, v: Complex<T>) -> Self {
        Self { g, v }
    }

    pub fn g(&self) -> &SU2Element<T> {
        &self.g
    }

    pub fn v(&self) -> Complex<T> {
        self.v
    }

    /// `(g h, κ(h⁻¹) v)`.
    pub fn reexpress(&self, h: &HElement<T>) -> Self {
        let k = T::lit(kappa(&h.inverse()) as f64);
        Self { g: self.g * h.to_su2(), v: self.v * k }
    }

    /// Canonical representative: `g` is the geodesic section at the
    /// canonical point `y` of the class `[x(g)]`, and `v` absorbs `κ`.
    pub fn canonical(&self) -> Self {
        let x = quotient_to_sphere(&self.g);
        let y = RP2Point::from_sphere(&x);
        let g = section_of_sphere(y.rep());
        // g_canonical = g h with h diagonal when x(g) = y, antidiagonal when x(g) = −y.
        let flipped = x.distance(y.rep()) > T::lit(0.5);
        let v = if flipped { -self.v } else { self.v };
        Self { g, v }
    }

    /// Distance between canonical forms.
    pub fn canonical_distance(&self, other: &Self) -> T {
        let (a, b) = (self.canonical(), other.canonical());
        a.g.distance(&b.g).max((a.v - b.v).norm())
    }

    pub fn equivalent(&self, other: &Self, tol: T) -> bool {
        self.canonical_distance(other) <= tol
    }
}

/// Point `([x], λ φ(x))` of `ℒ₋ ⊂ ℝP² × ℂ³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LMinusElement<T> {
    base: RP2Point<T>,
    fiber: C3<T>,
}

impl<T: Real> LMinusElement<T> {
    /// Checks that `fiber` lies on the line `ℂ·φ(x)`.
    pub fn new(base: RP2Point<T>, fiber: C3<T>) -> Result<Self> {
        let p = phi(base.rep());
        let along = c3_scale(&p, c3_dot(&p, &fiber));
        let residual = c3_norm(&c3_sub(&fiber, &along));
        let scale = c3_norm(&fiber).max(T::one());
        if residual > T::tol(FIBER_TOL) * scale {
            return Err(Error::FiberNotInLine { residual: residual.to_f64_lossy() });
        }
        Ok(Self { base, fiber: along })
    }

    /// `([x], λ φ(x))` for a sphere point `x`; both `x` and `−x` give the
    /// same element when `λ` changes sign.
    pub fn from_scalar(x: &SpherePoint<T>, lambda: Complex<T>) -> Self {
        Self { base: RP2Point::from_sphere(x), fiber: c3_scale(&phi(x), lambda) }
    }

    pub fn base(&self) -> &RP2Point<T> {
        &self.base
    }

    pub fn fiber(&self) -> &C3<T> {
        &self.fiber
    }

    /// `λ` with `fiber = λ φ(x)` for the given representative `x` of the base.
    pub fn scalar_at(&self, x: &SpherePoint<T>) -> Complex<T> {
        c3_dot(&phi(x), &self.fiber)
    }

    /// `λ` relative to the canonical representative.
    pub fn lambda(&self) -> Complex<T> {
        self.scalar_at(self.base.rep())
    }

    /// Base distance (representative-free) plus fiber distance.
    pub fn distance(&self, other: &Self) -> T {
        self.base.class_distance(&other.base) + c3_norm(&c3_sub(&self.fiber, &other.fiber))
    }
}

/// `π_κ([(g, v)]) = [x(g)]`.
pub fn assoc_project<T: Real>(e: &AssocElement<T>) -> RP2Point<T> {
    quotient_to_rp2(&e.g)
}

/// `Φ[(g, v)] = ([x(g)], v φ(x(g)))`.
pub fn iso_phi<T: Real>(e: &AssocElement<T>) -> LMinusElement<T> {
    LMinusElement::from_scalar(&quotient_to_sphere(&e.g), e.v)
}

/// Inverse of [`iso_phi`], returning the canonical representative.
pub fn iso_phi_inverse<T: Real>(e: &LMinusElement<T>) -> AssocElement<T> {
    let y = e.base.rep();
    AssocElement { g: section_of_sphere(y), v: e.scalar_at(y) }
}

/// Chart trivialization `([x], λ φ(x)) ↦ ([x], sign(x_α) λ)`.
pub fn local_trivialization<T: Real>(
    alpha: ChartIndex,
    e: &LMinusElement<T>,
) -> Result<(RP2Point<T>, Complex<T>)> {
    let x = e.base.rep();
    let xa = x.coords()[alpha.get() - 1];
    if xa.abs() <= T::tol(crate::manifold::CHART_TOL) {
        return Err(Error::PointNotInChart { chart: alpha.get(), coordinate: xa.to_f64_lossy() });
    }
    let s = if xa > T::zero() { T::one() } else { -T::one() };
    Ok((e.base, e.scalar_at(x) * s))
}

/// `l↑_g[(p, v)] = [(g p, v)]`.
pub fn natural_lift<T: Real>(g: &SU2Element<T>, e: &AssocElement<T>) -> AssocElement<T> {
    AssocElement { g: *g * e.g, v: e.v }
}

/// `τ_g = Φ ∘ l↑_g ∘ Φ⁻¹`: `λ φ(x)` over `[x]` goes to `λ φ(R x)` over
/// `[R x]`. Since `φ` is linear this is `R` applied to the fiber vector.
pub fn lift_tau<T: Real>(g: &SU2Element<T>, e: &LMinusElement<T>) -> LMinusElement<T> {
    let r = spinor_map(g);
    let x = e.base.rep();
    let lambda = e.scalar_at(x);
    LMinusElement::from_scalar(&x.rotated(&r), lambda)
}

/// `p(x) = |φ(x)⟩⟨φ(x)|`.
pub fn projector<T: Real>(x: &SpherePoint<T>) -> CMatrix<T> {
    let p = phi(x);
    CMatrix::from_shape_fn((3, 3), |(i, j)| p[i] * p[j].conj())
}

/// Value `Ψ_a([x]) = ([x], a(x) φ(x))` of the `ℒ₋` section of an odd `a`.
pub fn section_value<T: Real>(a: &HarmonicCoeffs<T>, x: &SpherePoint<T>) -> LMinusElement<T> {
    LMinusElement::from_scalar(x, harmonics::evaluate(a, x))
}

/// `a ↦ (f₁, f₂, f₃)` with `f_i = a·x_i`, each even, of degree `lmax + 1`.
pub fn module_iso_forward<T: Real>(
    a: &HarmonicCoeffs<T>,
    grid: &QuadratureGrid<T>,
) -> Result<[HarmonicCoeffs<T>; 3]> {
    if a.sector() != Sector::Odd {
        return Err(Error::BundleMismatch(format!("expected odd coefficients, got {}", a.sector().name())));
    }
    let l = a.lmax() + 1;
    grid.require(l)?;
    let tol = T::tol(1e-10) * a.norm().max(T::one());
    let f = |i: usize| -> Result<HarmonicCoeffs<T>> {
        harmonics::analyze(|x| harmonics::evaluate(a, x) * x.coords()[i], l, grid)?
            .into_sector(Sector::Even, tol)
    };
    Ok([f(0)?, f(1)?, f(2)?])
}

fn triple_at<T: Real>(f: &[HarmonicCoeffs<T>; 3], x: &SpherePoint<T>) -> C3<T> {
    [harmonics::evaluate(&f[0], x), harmonics::evaluate(&f[1], x), harmonics::evaluate(&f[2], x)]
}

/// `max_k ‖f(x_k) − p(x_k) f(x_k)‖` over grid nodes.
pub fn projector_residual<T: Real>(f: &[HarmonicCoeffs<T>; 3], grid: &QuadratureGrid<T>) -> T {
    grid.nodes().iter().fold(T::zero(), |m, x| {
        let v = triple_at(f, x);
        let p = phi(x);
        let pv = c3_scale(&p, c3_dot(&p, &v));
        m.max(c3_norm(&c3_sub(&v, &pv)))
    })
}

/// `(f₁, f₂, f₃) ↦ Σ f_i x_i`, returned as odd coefficients of degree
/// `max lmax + 1`. Rejects triples that are not fixed by the projector.
pub fn module_iso_inverse<T: Real>(
    f: &[HarmonicCoeffs<T>; 3],
    grid: &QuadratureGrid<T>,
) -> Result<HarmonicCoeffs<T>> {
    let l = f.iter().map(|c| c.lmax()).max().unwrap_or(0) + 1;
    grid.require(l)?;
    let scale = f.iter().fold(T::zero(), |m, c| m.max(c.norm())).max(T::one());
    let residual = projector_residual(f, grid);
    if residual > T::tol(PROJECTOR_TOL) * scale {
        return Err(Error::ProjectorConstraintViolated { residual: residual.to_f64_lossy() });
    }
    let a = harmonics::analyze(
        |x| {
            let v = triple_at(f, x);
            c3_dot(&phi(x), &v)
        },
        l,
        grid,
    )?;
    a.into_sector(Sector::Odd, T::tol(1e-10) * scale)
}

/// Coordinates of a sphere point as a plain vector, re-exported for tests
/// that build fibers by hand.
pub fn fiber_from_vector<T: Real>(v: &Vec3<T>, lambda: Complex<T>) -> C3<T> {
    [cr(v[0]) * lambda, cr(v[1]) * lambda, cr(v[2]) * lambda]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::manifold::{build_quadrature, transition_function};
    use crate::sampling;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type G = SU2Element<f64>;
    type A = AssocElement<f64>;

    fn cz(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn random_assoc(r: &mut ChaCha8Rng) -> A {
        let g = sampling::random_su2(r);
        let v = cz(sampling::random_vec3::<f64, _>(r)[0], sampling::random_vec3::<f64, _>(r)[1]);
        A::new(g, v)
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&SpherePoint::<f64>::north()), [cz(0.0, 0.0), cz(0.0, 0.0), cz(1.0, 0.0)]);
        let mut r = rng(41);
        for _ in 0..100 {
            let x: SpherePoint<f64> = sampling::random_sphere_point(&mut r);
            let (p, q) = (phi(&x), phi(&x.antipode()));
            for i in 0..3 {
                assert_eq!(p[i], -q[i]);
            }
            assert!((c3_norm(&p) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn kappa_is_a_character() {
        assert_eq!(kappa(&HElement::<f64>::diagonal_angle(0.3)), 1);
        assert_eq!(kappa(&HElement::<f64>::antidiagonal_angle(0.3)), -1);
        let mut r = rng(42);
        for _ in 0..100 {
            let h1 = sampling::random_h::<f64, _>(&mut r);
            let h2 = sampling::random_h::<f64, _>(&mut r);
            assert_eq!(kappa(&h1.compose(&h2)), kappa(&h1) * kappa(&h2));
        }
        let a = HElement::<f64>::antidiagonal_angle(1.1).compose(&HElement::antidiagonal_angle(-0.4));
        assert_eq!(a.kind(), HKind::Diagonal);
        assert_eq!(kappa(&a), 1);
    }

    #[test]
    fn projection_ignores_representative_and_fiber() {
        let e = A::new(G::identity(), cz(3.0, -1.0));
        assert_eq!(assoc_project(&e), RP2Point::new([0.0, 0.0, 1.0]).unwrap());
        let mut r = rng(43);
        for _ in 0..100 {
            let e = random_assoc(&mut r);
            let h = sampling::random_h(&mut r);
            assert!(assoc_project(&e).distance(&assoc_project(&e.reexpress(&h))) < 1e-12);
            let f = A::new(*e.g(), cz(0.0, 0.0));
            assert_eq!(assoc_project(&e), assoc_project(&f));
        }
    }

    #[test]
    fn iso_phi_examples() {
        let e = iso_phi(&A::new(G::identity(), cz(1.0, 0.0)));
        assert_eq!(*e.base(), RP2Point::new([0.0, 0.0, 1.0]).unwrap());
        assert_eq!(*e.fiber(), [cz(0.0, 0.0), cz(0.0, 0.0), cz(1.0, 0.0)]);
        let mut r = rng(44);
        for _ in 0..100 {
            let e = random_assoc(&mut r);
            let th = sampling::random_angle(&mut r);
            let flipped = A::new(*e.g() * HElement::antidiagonal_angle(th).to_su2(), -e.v());
            assert!(iso_phi(&e).distance(&iso_phi(&flipped)) < 1e-12);
            let h = sampling::random_h(&mut r);
            assert!(iso_phi(&e).distance(&iso_phi(&e.reexpress(&h))) < 1e-12);
            let zero = iso_phi(&A::new(*e.g(), cz(0.0, 0.0)));
            assert_eq!(c3_norm(zero.fiber()), 0.0);
            assert!(zero.base().distance(&assoc_project(&e)) < 1e-15);
        }
    }

    #[test]
    fn iso_phi_inverse_round_trips() {
        let mut r = rng(45);
        for _ in 0..100 {
            let x: SpherePoint<f64> = sampling::random_sphere_point(&mut r);
            let lam = cz(sampling::random_vec3::<f64, _>(&mut r)[0], 0.7);
            let e = LMinusElement::from_scalar(&x, lam);
            let back = iso_phi(&iso_phi_inverse(&e));
            assert!(back.distance(&e) < 1e-10);
            let a = random_assoc(&mut r);
            assert!(iso_phi_inverse(&iso_phi(&a)).equivalent(&a, 1e-10));
        }
        let zero = LMinusElement::from_scalar(&SpherePoint::<f64>::north(), cz(0.0, 0.0));
        assert_eq!(iso_phi_inverse(&zero).v(), cz(0.0, 0.0));
        let base = RP2Point::new([0.0, 0.0, 1.0]).unwrap();
        let e = LMinusElement::new(base, [cz(0.0, 0.0), cz(0.0, 0.0), cz(0.0, 2.0)]).unwrap();
        let inv = iso_phi_inverse(&e);
        assert!((inv.v() - cz(0.0, 2.0)).norm() < 1e-15);
        // The other representative over the same point carries −v.
        let other = inv.reexpress(&HElement::antidiagonal_angle(0.0));
        assert!((other.v() - cz(0.0, -2.0)).norm() < 1e-15);
        assert!(iso_phi(&other).distance(&e) < 1e-15);
    }

    #[test]
    fn fiber_must_lie_on_the_line() {
        let base = RP2Point::new([0.0, 0.0, 1.0]).unwrap();
        let bad = LMinusElement::new(base, [cz(1.0, 0.0), cz(0.0, 0.0), cz(0.0, 0.0)]);
        assert!(matches!(bad, Err(Error::FiberNotInLine { .. })));
    }

    #[test]
    fn local_trivialization_examples() {
        let e = LMinusElement::from_scalar(&SpherePoint::<f64>::north(), cz(1.0, 0.0));
        let a3 = ChartIndex::new(3).unwrap();
        let (b, c) = local_trivialization(a3, &e).unwrap();
        assert_eq!(b, *e.base());
        assert_eq!(c, cz(1.0, 0.0));
        let e = LMinusElement::from_scalar(&SpherePoint::new([1.0, 0.0, 0.0]).unwrap(), cz(1.0, 0.0));
        assert!(matches!(local_trivialization(a3, &e), Err(Error::PointNotInChart { .. })));
    }

    #[test]
    fn trivializations_reproduce_transition_functions() {
        let mut r = rng(46);
        for _ in 0..1000 {
            let x: SpherePoint<f64> = sampling::random_sphere_point(&mut r);
            let e = LMinusElement::from_scalar(&x, cz(0.3, -1.2));
            let p = RP2Point::from_sphere(&x);
            for a in ChartIndex::ALL {
                for b in ChartIndex::ALL {
                    let (_, ca) = local_trivialization(a, &e).unwrap();
                    let (_, cb) = local_trivialization(b, &e).unwrap();
                    let g = transition_function(b, a, &p).unwrap() as f64;
                    assert_eq!(cb, ca * g);
                }
            }
        }
    }

    #[test]
    fn natural_lift_properties() {
        let mut r = rng(47);
        for _ in 0..100 {
            let e = random_assoc(&mut r);
            assert!(natural_lift(&G::identity(), &e).canonical_distance(&e) < 1e-15);
            let g1: G = sampling::random_su2(&mut r);
            let g2: G = sampling::random_su2(&mut r);
            let twice = natural_lift(&g1, &natural_lift(&g2, &e));
            let once = natural_lift(&(g1 * g2), &e);
            assert!(twice.canonical_distance(&once) < 1e-12);
            let moved = assoc_project(&natural_lift(&g1, &e));
            let want = RP2Point::from_sphere(&assoc_project(&e).rep().rotated(&spinor_map(&g1)));
            assert!(moved.class_distance(&want) < 1e-12);
        }
    }

    #[test]
    fn tau_is_the_conjugated_natural_lift() {
        let mut r = rng(48);
        for _ in 0..200 {
            let g: G = sampling::random_su2(&mut r);
            let x: SpherePoint<f64> = sampling::random_sphere_point(&mut r);
            let e = LMinusElement::from_scalar(&x, cz(0.4, 0.9));
            assert!(lift_tau(&G::identity(), &e).distance(&e) < 1e-15);
            let direct = lift_tau(&g, &e);
            let via = iso_phi(&natural_lift(&g, &iso_phi_inverse(&e)));
            assert!(direct.distance(&via) < 1e-10);
            let moved = RP2Point::from_sphere(&x.rotated(&spinor_map(&g)));
            assert!(direct.base().class_distance(&moved) < 1e-12);
            let g2: G = sampling::random_su2(&mut r);
            let comp = lift_tau(&g, &lift_tau(&g2, &e));
            assert!(comp.distance(&lift_tau(&(g * g2), &e)) < 1e-12);
            // Φ ∘ l↑_g = τ_g ∘ Φ on the associated side.
            let a = A::new(sampling::random_su2(&mut r), cz(-0.2, 1.5));
            assert!(iso_phi(&natural_lift(&g, &a)).distance(&lift_tau(&g, &iso_phi(&a))) < 1e-10);
        }
    }

    #[test]
    fn projector_properties() {
        let p = projector(&SpherePoint::<f64>::north());
        let mut want = CMatrix::<f64>::zeros((3, 3));
        want[[2, 2]] = cz(1.0, 0.0);
        assert_eq!(p, want);
        let mut r = rng(49);
        for _ in 0..100 {
            let x: SpherePoint<f64> = sampling::random_sphere_point(&mut r);
            let p = projector(&x);
            assert!(linalg::cmax_abs(&(p.dot(&p) - &p)) < 1e-13);
            assert!(linalg::cmax_abs(&(linalg::adjoint(&p) - &p)) < 1e-15);
            assert_eq!(projector(&x.antipode()), p);
            let g: G = sampling::random_su2(&mut r);
            let rot = spinor_map(&g);
            let rm = CMatrix::from_shape_fn((3, 3), |(i, j)| cz(rot.matrix()[i][j], 0.0));
            let lhs = projector(&x.rotated(&rot));
            let rhs = rm.dot(&p).dot(&rm.t());
            assert!(linalg::cmax_abs(&(lhs - rhs)) < 1e-12);
        }
    }

    #[test]
    fn sections_are_well_defined_on_rp2() {
        let mut r = rng(50);
        let a: HarmonicCoeffs<f64> = sampling::random_coeffs(&mut r, 7, Sector::Odd);
        for _ in 0..100 {
            let x: SpherePoint<f64> = sampling::random_sphere_point(&mut r);
            let e1 = section_value(&a, &x);
            let e2 = section_value(&a, &x.antipode());
            assert!(e1.distance(&e2) < 1e-12);
        }
    }

    #[test]
    fn module_iso_examples() {
        let grid = build_quadrature::<f64>(10).unwrap();
        let y10 = HarmonicCoeffs::basis(1, Sector::Odd, 1, 0).unwrap();
        let f = module_iso_forward(&y10, &grid).unwrap();
        // x₃·Y₁₀ = √(3/4π) z² only has ℓ = 0 and ℓ = 2, m = 0 content.
        for l in 0..=2usize {
            for m in -(l as i64)..=(l as i64) {
                let v = f[2].get(l, m);
                if m != 0 || l == 1 {
                    assert!(v.norm() < 1e-12);
                }
            }
        }
        let k = (3.0 / (4.0 * std::f64::consts::PI)).sqrt();
        // z² = 1/3 + (2/3)·P₂(z); ⟨Y₀₀, z²⟩ = √(4π)/3.
        assert!((f[2].get(0, 0) - cz(k * (4.0 * std::f64::consts::PI).sqrt() / 3.0, 0.0)).norm() < 1e-12);
        // x₁·Y₁₀ and x₂·Y₁₀ are ∝ x z, y z: pure ℓ = 2, m = ±1.
        for i in 0..2 {
            assert!(f[i].get(0, 0).norm() < 1e-12);
            assert!(f[i].get(2, 0).norm() < 1e-12 && f[i].get(2, 2).norm() < 1e-12);
            assert!(f[i].get(2, 1).norm() > 0.1);
        }
        let zero = module_iso_forward(&HarmonicCoeffs::zeros(3, Sector::Odd), &grid).unwrap();
        assert!(zero.iter().all(|c| c.norm() == 0.0));
        let back = module_iso_inverse(&zero, &grid).unwrap();
        assert_eq!(back.norm(), 0.0);
    }

    #[test]
    fn module_iso_round_trip() {
        let grid = build_quadrature::<f64>(10).unwrap();
        let mut r = rng(51);
        for lmax in [1, 3, 5, 8] {
            let a: HarmonicCoeffs<f64> = sampling::random_coeffs(&mut r, lmax, Sector::Odd);
            let f = module_iso_forward(&a, &grid).unwrap();
            assert!(projector_residual(&f, &grid) < 1e-9);
            for x in grid.nodes() {
                let v = triple_at(&f, x);
                let recon = v[0] * x.coords()[0] + v[1] * x.coords()[1] + v[2] * x.coords()[2];
                assert!((recon - harmonics::evaluate(&a, x)).norm() < 1e-9);
            }
            if lmax + 2 <= 10 {
                let back = module_iso_inverse(&f, &grid).unwrap();
                assert!(back.distance(&a) < 1e-9);
            }
        }
    }

    #[test]
    fn module_iso_rejects_non_projected_triples() {
        let grid = build_quadrature::<f64>(6).unwrap();
        let one = HarmonicCoeffs::basis(2, Sector::Even, 0, 0).unwrap().scaled(3.0);
        let f = [one.clone(), HarmonicCoeffs::zeros(2, Sector::Even), HarmonicCoeffs::zeros(2, Sector::Even)];
        assert!(matches!(module_iso_inverse(&f, &grid), Err(Error::ProjectorConstraintViolated { .. })));
        let even = HarmonicCoeffs::basis(2, Sector::Even, 2, 0).unwrap();
        assert!(matches!(module_iso_forward(&even, &grid), Err(Error::BundleMismatch(_))));
    }
}
