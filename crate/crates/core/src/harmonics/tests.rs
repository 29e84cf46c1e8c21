use super::wigner::wigner_d;
use super::*;
use crate::groups::{su2_from_axis_angle, SU2Element};
use crate::manifold::build_quadrature;
use crate::sampling;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

type C = HarmonicCoeffs<f64>;

fn cz(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

/// Closed forms for low degrees, written out independently of the recurrence.
fn ylm_closed_form(l: usize, m: i64, x: &[f64; 3]) -> Complex<f64> {
    let (x1, x2, z) = (x[0], x[1], x[2]);
    let u = cz(x1, x2);
    let ub = u.conj();
    let k = |v: f64| v.sqrt();
    match (l, m) {
        (0, 0) => cz(0.5 * k(1.0 / PI), 0.0),
        (1, 0) => cz(0.5 * k(3.0 / PI) * z, 0.0),
        (1, 1) => u * (-0.5 * k(3.0 / (2.0 * PI))),
        (1, -1) => ub * (0.5 * k(3.0 / (2.0 * PI))),
        (2, 0) => cz(0.25 * k(5.0 / PI) * (3.0 * z * z - 1.0), 0.0),
        (2, 1) => u * (-0.5 * k(15.0 / (2.0 * PI)) * z),
        (2, -1) => ub * (0.5 * k(15.0 / (2.0 * PI)) * z),
        (2, 2) => u * u * (0.25 * k(15.0 / (2.0 * PI))),
        (2, -2) => ub * ub * (0.25 * k(15.0 / (2.0 * PI))),
        (3, 0) => cz(0.25 * k(7.0 / PI) * (5.0 * z * z * z - 3.0 * z), 0.0),
        (3, 1) => u * (-0.125 * k(21.0 / PI) * (5.0 * z * z - 1.0)),
        (3, 2) => u * u * (0.25 * k(105.0 / (2.0 * PI)) * z),
        (3, 3) => u * u * u * (-0.125 * k(35.0 / PI)),
        _ => unreachable!(),
    }
}

#[test]
fn recurrence_matches_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..50 {
        let x: SpherePoint<f64> = sampling::random_sphere_point(&mut rng);
        let y = ylm_all(3, x.coords());
        for (l, m) in [(0, 0), (1, 0), (1, 1), (1, -1), (2, 0), (2, 1), (2, -1), (2, 2), (2, -2), (3, 0), (3, 1), (3, 2), (3, 3)] {
            let want = ylm_closed_form(l, m, x.coords());
            assert!((y[index(l, m)] - want).norm() < 1e-14, "l={l} m={m}");
        }
    }
}

#[test]
fn evaluate_examples() {
    let a = C::basis(4, Sector::Full, 0, 0).unwrap();
    let x = SpherePoint::from_direction([0.2, -0.7, 0.1]).unwrap();
    assert!((evaluate(&a, &x) - cz(1.0 / (4.0 * PI).sqrt(), 0.0)).norm() < 1e-15);
    let a = C::basis(4, Sector::Odd, 1, 0).unwrap();
    let v = evaluate(&a, &SpherePoint::north());
    assert!((v - cz((3.0 / (4.0 * PI)).sqrt(), 0.0)).norm() < 1e-15);
    assert_eq!(evaluate(&C::zeros(5, Sector::Full), &x), cz(0.0, 0.0));
}

#[test]
fn quadrature_orthonormality() {
    let grid = build_quadrature::<f64>(8).unwrap();
    let basis = SphereBasis::new(grid);
    let n = (basis.lmax() + 1).pow(2);
    for p in 0..n {
        for q in 0..n {
            let s = basis.table.iter().zip(basis.grid().weights()).fold(cz(0.0, 0.0), |s, (y, w)| s + y[p] * y[q].conj() * *w);
            let want = if p == q { 1.0 } else { 0.0 };
            assert!((s - cz(want, 0.0)).norm() < 1e-12, "{p} {q}");
        }
    }
    // Named instances.
    let g = basis.grid();
    let y10 = g.integrate(|x| ylm(1, 0, x).norm_sqr());
    assert!((y10 - 1.0).abs() < 1e-10);
    let cross: Complex<f64> = g
        .nodes()
        .iter()
        .zip(g.weights())
        .fold(cz(0.0, 0.0), |s, (x, w)| s + ylm(2, 1, x) * ylm(3, 1, x).conj() * *w);
    assert!(cross.norm() < 1e-10);
}

#[test]
fn analyze_examples() {
    let grid = build_quadrature::<f64>(10).unwrap();
    let a = analyze(|_| cz(1.0, 0.0), 10, &grid).unwrap();
    assert!((a.get(0, 0) - cz((4.0 * PI).sqrt(), 0.0)).norm() < 1e-12);
    assert!(a.sub(&C::basis(10, Sector::Full, 0, 0).unwrap().scaled((4.0 * PI).sqrt())).max_abs() < 1e-12);
    let a = analyze(|x| cz(x.coords()[2], 0.0), 10, &grid).unwrap();
    let want = C::basis(10, Sector::Full, 1, 0).unwrap().scaled((4.0 * PI / 3.0).sqrt());
    assert!(a.sub(&want).max_abs() < 1e-12);
    assert!(matches!(analyze(|_| cz(1.0, 0.0), 11, &grid), Err(Error::InsufficientGrid { .. })));
}

#[test]
fn analyze_evaluate_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for lmax in 1..=12 {
        let grid = build_quadrature::<f64>(lmax).unwrap();
        let a: C = sampling::random_coeffs(&mut rng, lmax, Sector::Full);
        let b = analyze(|x| evaluate(&a, x), lmax, &grid).unwrap();
        assert!(a.distance(&b) / a.norm() < 1e-10, "lmax {lmax}");
        let basis = SphereBasis::new(grid);
        let c = basis.analyze(&basis.synthesize(&a).unwrap(), lmax).unwrap();
        assert!(a.distance(&c) / a.norm() < 1e-10);
    }
}

#[test]
fn parity_examples() {
    let y21 = C::basis(4, Sector::Full, 2, 1).unwrap();
    let (e, o) = parity_decompose(&y21);
    assert_eq!(e.as_slice(), y21.as_slice());
    assert_eq!(o.norm(), 0.0);
    let y10 = C::basis(4, Sector::Full, 1, 0).unwrap();
    let (e, o) = parity_decompose(&y10);
    assert_eq!(e.norm(), 0.0);
    assert_eq!(o.as_slice(), y10.as_slice());
}

#[test]
fn harmonics_have_degree_parity_under_antipode() {
    let grid = build_quadrature::<f64>(9).unwrap();
    for x in grid.nodes() {
        let p = ylm_all(9, x.coords());
        let q = ylm_all(9, x.antipode().coords());
        for l in 0..=9usize {
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            for m in -(l as i64)..=(l as i64) {
                assert!((q[index(l, m)] - p[index(l, m)] * sign).norm() < 1e-10);
            }
        }
    }
}

#[test]
fn parity_parts_are_even_and_odd() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let a: C = sampling::random_coeffs(&mut rng, 7, Sector::Full);
    let (e, o) = parity_decompose(&a);
    assert_eq!(e.add(&o).as_slice(), a.as_slice());
    for _ in 0..50 {
        let x: SpherePoint<f64> = sampling::random_sphere_point(&mut rng);
        assert!((evaluate(&e, &x) - evaluate(&e, &x.antipode())).norm() < 1e-10);
        assert!((evaluate(&o, &x) + evaluate(&o, &x.antipode())).norm() < 1e-10);
    }
}

#[test]
fn sector_constraint_is_enforced() {
    let mut c = vec![cz(0.0, 0.0); 9];
    c[index(1, 0)] = cz(1.0, 0.0);
    assert!(matches!(C::from_vec(2, Sector::Even, c.clone()), Err(Error::SectorViolation { .. })));
    c[index(1, 0)] = cz(1e-16, 0.0);
    let a = C::from_vec(2, Sector::Even, c).unwrap();
    assert_eq!(a.get(1, 0), cz(0.0, 0.0));
    assert!(C::basis(3, Sector::Odd, 2, 0).is_err());
}

#[test]
fn ladder_examples() {
    let y11 = C::basis(3, Sector::Odd, 1, 1).unwrap();
    assert_eq!(apply_l(3, &y11).as_slice(), y11.as_slice());
    let y10 = C::basis(3, Sector::Odd, 1, 0).unwrap();
    let up = apply_l_plus(&y10);
    let want = C::basis(3, Sector::Odd, 1, 1).unwrap().scaled(2f64.sqrt());
    assert!(up.distance(&want) < 1e-15);
    assert!(apply_l_plus(&y11).norm() < 1e-15);
}

#[test]
fn ladder_preserves_sector_and_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for sector in [Sector::Even, Sector::Odd] {
        let a: C = sampling::random_coeffs(&mut rng, 8, sector);
        for i in 1..=3 {
            let b = apply_l(i, &a);
            assert_eq!(b.sector(), sector);
            assert_eq!(b.lmax(), 8);
            assert_eq!(b.stray(sector), 0.0);
        }
    }
}

#[test]
fn orbital_commutators() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    let i = imag_unit::<f64>();
    for _ in 0..20 {
        let a: C = sampling::random_coeffs(&mut rng, 8, Sector::Full);
        for (p, q, r) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
            let lhs = apply_l(p, &apply_l(q, &a)).sub(&apply_l(q, &apply_l(p, &a)));
            let rhs = apply_l(r, &a).scaled_complex(i);
            assert!(lhs.distance(&rhs) < 1e-12);
        }
    }
}

#[test]
fn ladder_matches_differential_operator() {
    // L = −i x × ∇ applied to the polynomial extension of a, by finite
    // differences along rotation curves x(t) = exp(t n̂×) x.
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    let a: C = sampling::random_coeffs(&mut rng, 5, Sector::Full);
    for _ in 0..10 {
        let x: SpherePoint<f64> = sampling::random_sphere_point(&mut rng);
        for k in 1..=3usize {
            let mut n = [0.0; 3];
            n[k - 1] = 1.0;
            // (n·L) f(x) = −i d/dt f(R(t, n) x)|₀ ... with the active rotation R,
            // d/dt R x = n × x, and (x × ∇)_k f = d/dt f(x + t e_k × x).
            let d = crate::finite_diff::richardson_vec(1e-3, |t| {
                let r = crate::groups::rotation_from_axis_angle(t, n).unwrap();
                vec![evaluate_at(&a, &r.apply(x.coords()))]
            })[0];
            let want = d * (-i_unit());
            let got = evaluate(&apply_l(k, &a), &x);
            assert!((got - want).norm() < 1e-8, "k={k}: {got} vs {want}");
        }
    }
}

fn i_unit() -> Complex<f64> {
    cz(0.0, 1.0)
}

#[test]
fn rotation_examples() {
    let grid = build_quadrature::<f64>(10).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let a: C = sampling::random_coeffs(&mut rng, 5, Sector::Odd);
    let same = rotate_coeffs(&SU2Element::identity(), &a, &grid).unwrap();
    assert!(same.distance(&a) < 1e-12);
    for _ in 0..20 {
        let g = sampling::random_su2(&mut rng);
        let b = rotate_coeffs(&g, &a, &grid).unwrap();
        assert_eq!(b.sector(), Sector::Odd);
        assert!((b.norm() - a.norm()).abs() < 1e-10);
        let raw = rotate_coeffs_raw(&g, &a, &grid).unwrap();
        assert!(rotation_leakage(&a, &raw) < 1e-10);
        // Pointwise: b(x) = a(R⁻¹x).
        let x: SpherePoint<f64> = sampling::random_sphere_point(&mut rng);
        let rinv = spinor_map(&g).transpose();
        let want = evaluate_at(&a, &rinv.apply(x.coords()));
        assert!((evaluate(&b, &x) - want).norm() < 1e-10);
    }
    assert!(matches!(rotate_coeffs(&SU2Element::identity(), &C::zeros(11, Sector::Full), &grid), Err(Error::InsufficientGrid { .. })));
}

#[test]
fn degree_one_block_is_the_spin_one_matrix() {
    let grid = build_quadrature::<f64>(4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(38);
    for _ in 0..20 {
        let g = sampling::random_su2(&mut rng);
        let d = wigner_d(2, &g).unwrap();
        for m in -1i64..=1 {
            let b = rotate_coeffs(&g, &C::basis(1, Sector::Odd, 1, m).unwrap(), &grid).unwrap();
            for mp in -1i64..=1 {
                // U(g) Y_{1m} = Σ_{m'} D_{m'm}(g) Y_{1m'}
                let want = d.entry(2 * mp as i32, 2 * m as i32);
                assert!((b.get(1, mp) - want).norm() < 1e-9);
            }
        }
    }
}

#[test]
fn rotation_blocks_match_wigner_matrices() {
    let grid = build_quadrature::<f64>(6).unwrap();
    let g = su2_from_axis_angle(1.3, [0.48, 0.6, 0.64]).unwrap();
    let blocks = RotationBlocks::by_quadrature(&g, 4, &grid).unwrap();
    for l in 0..=4usize {
        let d = wigner_d(2 * l as u32, &g).unwrap();
        let li = l as i64;
        for m in -li..=li {
            for mp in -li..=li {
                let b = blocks.block(l)[[(mp + li) as usize, (m + li) as usize]];
                assert!((b - d.entry(2 * mp as i32, 2 * m as i32)).norm() < 1e-12);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(39);
    let a: C = sampling::random_coeffs(&mut rng, 4, Sector::Even);
    let via_blocks = blocks.apply(&a).unwrap();
    let via_resample = rotate_coeffs(&g, &a, &grid).unwrap();
    assert!(via_blocks.distance(&via_resample) < 1e-12);
}

#[test]
fn text_round_trip_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(40);
    let a: C = sampling::random_coeffs(&mut rng, 6, Sector::Odd);
    let b = C::from_text(&a.to_text()).unwrap();
    assert_eq!(a, b);
    assert!(C::from_text("# 2 diagonal\n").is_err());
    assert!(C::from_text("# 1 even\n1 0 1.0 0.0\n").is_err());
}

#[test]
fn single_precision_round_trip() {
    let grid = build_quadrature::<f32>(6).unwrap();
    let a = HarmonicCoeffs::<f32>::basis(6, Sector::Full, 3, -2).unwrap();
    let b = analyze(|x| evaluate(&a, x), 6, &grid).unwrap();
    assert!(a.distance(&b) < 1e-5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rotation_keeps_parity_sector(seed in any::<u64>(), odd in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sector = if odd { Sector::Odd } else { Sector::Even };
        let grid = build_quadrature::<f64>(8).unwrap();
        let a: C = sampling::random_coeffs(&mut rng, 6, sector);
        let g = sampling::random_su2(&mut rng);
        let raw = rotate_coeffs_raw(&g, &a, &grid).unwrap();
        prop_assert!(raw.stray(sector) < 1e-10);
        prop_assert!(raw.norm_above(6) < 1e-10);
    }

    #[test]
    fn text_round_trip(seed in any::<u64>(), lmax in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: C = sampling::random_coeffs(&mut rng, lmax, Sector::Full);
        prop_assert_eq!(C::from_text(&a.to_text()).unwrap(), a);
    }
}
