//! Acceptance criteria, one line per criterion. Runs as a plain binary
//! (`harness = false`) and exits nonzero when any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rp2q::berry_robbins::{
    br_lift, default_transport, recover_spin_generator, transported_spin, BRState, TransportFrame, FRAME_MAX_TWO_J,
};
use rp2q::bundles::{iso_phi, lift_tau, module_iso_forward, module_iso_inverse, natural_lift, AssocElement, BundleChoice};
use rp2q::classical::{check_homomorphism, jacobi_residual, PhasePoint, SemidirectLieElement};
use rp2q::finite_diff::DEFAULT_STEP;
use rp2q::groups::{rotation_from_axis_angle, spinor_map, su2_from_axis_angle, SO3Matrix, SU2Element, SpherePoint};
use rp2q::harmonics::{rotate_coeffs_raw, rotation_leakage, HarmonicCoeffs, Sector, SphereBasis};
use rp2q::heisenberg::{ccr_residual, check_rep_homomorphism, check_weyl_relation, gvh_discrepancy, GridWavefunction, HeisenbergElement};
use rp2q::linalg::{cmax_abs, hermitian_eigenvalues};
use rp2q::manifold::{build_quadrature, transition_function, ChartIndex, WFunctional};
use rp2q::representation::canonical::{
    check_group_law, unitarity_defect, CanonicalElement, CanonicalGrids, FullSection, RadialGrid,
};
use rp2q::representation::{act_u, check_intertwining, closure_residual, exchange_eigenvalue, generator_error, Section};
use rp2q::sampling::{
    random_coeffs, random_moment_point, random_rp2, random_sphere_point, random_su2, random_vec3, random_w_functional,
};
use rp2q_cli::report::write_report;
use rp2q_cli::{run_suite, Format, Report, Suite, SuiteConfig};

type Outcome = Result<String, String>;

/// Pass when every `(label, value, bound)` satisfies `value < bound`.
fn within(items: &[(&str, f64, f64)]) -> Outcome {
    let text = items.iter().map(|(l, v, b)| format!("{l} {v:.2e} (< {b:.0e})")).collect::<Vec<_>>().join(", ");
    if items.iter().all(|(_, v, b)| v < b) {
        Ok(text)
    } else {
        Err(text)
    }
}

fn odd_sections(n: usize, seed: u64) -> Vec<Section<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| Section::new(random_coeffs(&mut rng, 8, Sector::Odd), BundleChoice::LMinus).unwrap()).collect()
}

fn criterion_1() -> Outcome {
    let grid = build_quadrature::<f64>(10).unwrap();
    let start = Instant::now();
    let mut worst = 0.0f64;
    for s in odd_sections(50, 1) {
        for i in 1..=3 {
            worst = worst.max(generator_error(i, &s, &grid, DEFAULT_STEP).map_err(|e| e.to_string())?);
        }
    }
    within(&[("max relative error", worst, 1e-8), ("seconds", start.elapsed().as_secs_f64(), 10.0)])
}

fn criterion_2() -> Outcome {
    let grid = build_quadrature::<f64>(10).unwrap();
    let mut worst = 0.0f64;
    for s in odd_sections(50, 1) {
        for i in 1..=3 {
            worst = worst.max(check_intertwining(i, &s, &grid, DEFAULT_STEP).map_err(|e| e.to_string())?);
        }
    }
    within(&[("intertwining residual", worst, 1e-7)])
}

fn criterion_3() -> Outcome {
    let grid = build_quadrature::<f64>(10).unwrap();
    let mut worst = 0.0f64;
    for s in odd_sections(10, 3) {
        worst = worst.max(closure_residual(&s, &grid, DEFAULT_STEP).map_err(|e| e.to_string())?);
    }
    within(&[("closure residual", worst, 1e-6)])
}

fn criterion_4() -> Outcome {
    let grid = build_quadrature::<f64>(10).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut eig, mut leak, mut stray) = (0.0f64, 0.0f64, 0.0f64);
    for k in 0..200 {
        let bundle = if k % 2 == 0 { BundleChoice::LMinus } else { BundleChoice::LPlus };
        let s = Section::new(random_coeffs(&mut rng, 8, bundle.sector()), bundle).unwrap();
        let g = random_su2(&mut rng);
        let want = bundle.exchange_sign() as f64;
        let moved = act_u(&g, &s, &grid).map_err(|e| e.to_string())?;
        eig = eig.max((exchange_eigenvalue(&s, &grid) - want).norm());
        eig = eig.max((exchange_eigenvalue(&moved, &grid) - want).norm());
        let raw = rotate_coeffs_raw(&g, s.coeffs(), &grid).map_err(|e| e.to_string())?;
        leak = leak.max(rotation_leakage(s.coeffs(), &raw));
        stray = stray.max(moved.coeffs().stray(bundle.sector()));
    }
    within(&[("exchange eigenvalue", eig, 1e-10), ("rotation leakage", leak, 1e-10), ("wrong-parity content", stray, 1e-10)])
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut triple_points = 0usize;
    let mut failures = 0usize;
    while triple_points < 1000 {
        let p = random_rp2::<f64, _>(&mut rng);
        let Ok(_) = ChartIndex::ALL.iter().map(|&a| transition_function(a, a, &p)).collect::<Result<Vec<_>, _>>() else {
            continue;
        };
        triple_points += 1;
        for a in ChartIndex::ALL {
            for b in ChartIndex::ALL {
                for c in ChartIndex::ALL {
                    let g = |x, y| transition_function(x, y, &p).unwrap();
                    if g(a, b) * g(b, c) != g(a, c) {
                        failures += 1;
                    }
                }
            }
        }
    }
    let mut lift = 0.0f64;
    for _ in 0..200 {
        let v = Complex::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let e = AssocElement::new(random_su2(&mut rng), v);
        let g = random_su2(&mut rng);
        lift = lift.max(iso_phi(&natural_lift(&g, &e)).distance(&lift_tau(&g, &iso_phi(&e))));
    }
    let grid = build_quadrature::<f64>(10).unwrap();
    let mut module = 0.0f64;
    for lmax in [1usize, 3, 5, 8] {
        let a: HarmonicCoeffs<f64> = random_coeffs(&mut rng, lmax, Sector::Odd);
        let back = module_iso_inverse(&module_iso_forward(&a, &grid).unwrap(), &grid).map_err(|e| e.to_string())?;
        module = module.max(back.resized(lmax).distance(&a)).max(back.norm_above(lmax));
    }
    within(&[
        ("cocycle failures on 1000 triple overlaps", failures as f64, 0.5),
        ("lift intertwining", lift, 1e-10),
        ("module round trip", module, 1e-9),
    ])
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut hom, mut kernel, mut formula) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let (a, b): (SU2Element<f64>, SU2Element<f64>) = (random_su2(&mut rng), random_su2(&mut rng));
        hom = hom.max(spinor_map(&(a * b)).distance(&spinor_map(&a).compose(&spinor_map(&b))));
        kernel = kernel.max(spinor_map(&a.negate()).distance(&spinor_map(&a)));
        let n = *random_sphere_point::<f64, _>(&mut rng).coords();
        let psi = rng.random_range(0.0..4.0 * std::f64::consts::PI);
        let direct = rotation_from_axis_angle(psi, n).unwrap();
        formula = formula.max(direct.distance(&spinor_map(&su2_from_axis_angle(psi, n).unwrap())));
    }
    let turn = su2_from_axis_angle(std::f64::consts::TAU, [0.0, 0.0, 1.0]).unwrap();
    kernel = kernel.max(turn.distance(&SU2Element::identity().negate()));
    kernel = kernel.max(spinor_map(&turn).distance(&SO3Matrix::identity()));
    within(&[("homomorphism", hom, 1e-12), ("double-cover kernel", kernel, 1e-12), ("axis-angle formula", formula, 1e-12)])
}

fn criterion_7() -> Outcome {
    let n = 64;
    let base = 1.5f64;
    let k = (base.ln() * (n - 1) as f64 / 10.0).floor().max(1.0) as usize;
    let half_span = base.ln() / k as f64 * (n - 1) as f64 / 2.0;
    let radial = RadialGrid::aligned((-half_span).exp(), n, base, k).unwrap();
    let sphere = SphereBasis::new(build_quadrature(16).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = random_coeffs(&mut rng, 3, Sector::Odd);
    let fs = FullSection::product(radial.clone(), |r: f64| (-(r.ln() * r.ln()) / 0.5).exp(), &a);
    let grids = CanonicalGrids { sphere, radial };
    let rho = grids.radial.ratio();
    let element = |rng: &mut ChaCha8Rng| {
        let w: WFunctional<f64> = random_w_functional(rng);
        let w = w.scale(0.05 / rp2q::linalg::frobenius_norm(w.coefficients()));
        CanonicalElement::new(w, random_su2(rng), rho.powi(rng.random_range(-3..=3))).unwrap()
    };
    let (mut unit, mut law) = (0.0f64, 0.0f64);
    for _ in 0..4 {
        let (e1, e2) = (element(&mut rng), element(&mut rng));
        unit = unit.max(unitarity_defect(&e1, &fs, &grids).map_err(|e| e.to_string())?);
        law = law.max(check_group_law(&e1, &e2, &fs, &grids).map_err(|e| e.to_string())?);
    }
    within(&[("unitarity defect", unit, 1e-6), ("group law", law, 1e-6)])
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let point = |rng: &mut ChaCha8Rng| PhasePoint::new(random_moment_point(rng), random_w_functional(rng));
    let element = |rng: &mut ChaCha8Rng| SemidirectLieElement::new(random_w_functional(rng), random_vec3(rng));
    let points: Vec<_> = (0..100).map(|_| point(&mut rng)).collect();
    let mut hom = 0.0f64;
    for _ in 0..1000 {
        let (e1, e2) = (element(&mut rng), element(&mut rng));
        hom = hom.max(check_homomorphism(&e1, &e2, &points));
    }
    let mut jacobi = 0.0f64;
    for _ in 0..20 {
        let (a, b, c) = (element(&mut rng), element(&mut rng), element(&mut rng));
        jacobi = jacobi.max(jacobi_residual([&a, &b, &c], &point(&mut rng), 1e-3));
    }
    within(&[("{P(A),P(B)} - P([A,B])", hom, 1e-9), ("Jacobi", jacobi, 1e-8)])
}

fn criterion_9() -> Outcome {
    let fit = |n| {
        let psi = GridWavefunction::<f64>::gaussian(n, 20.0, 1.0, 0.3, 0.7, 0.4)?;
        gvh_discrepancy(&psi)
    };
    let c1024 = fit(1024).map_err(|e| e.to_string())?;
    let c2048 = fit(2048).map_err(|e| e.to_string())?;
    within(&[
        ("fitted constant relative error", (c1024.constant - 0.75).abs() / 0.75, 1e-7),
        ("1 - correlation with identity", 1.0 - c1024.correlation, 1e-7),
        ("grid doubling drift", (c1024.constant - c2048.constant).abs(), 1e-9),
    ])
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut weyl, mut rep, mut ccr) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..20 {
        let hbar = rng.random_range(0.5..1.5);
        let psi = GridWavefunction::gaussian(1024, 20.0, hbar, rng.random_range(-1.0..1.0), 0.7, rng.random_range(-1.0..1.0))
            .unwrap();
        let (a, b) = (rng.random_range(-2.0..2.0), rng.random_range(-3.0..3.0));
        weyl = weyl.max(check_weyl_relation(a, b, &psi).map_err(|e| e.to_string())?);
        let mut el = || HeisenbergElement::scalar(rng.random_range(-1.0..1.0), rng.random_range(-2.0..2.0), rng.random_range(-5.0..5.0));
        let (e1, e2) = (el(), el());
        rep = rep.max(check_rep_homomorphism(&e1, &e2, &psi).map_err(|e| e.to_string())?);
        ccr = ccr.max(ccr_residual(&psi).map_err(|e| e.to_string())?);
    }
    within(&[("Weyl relation", weyl, 1e-9), ("representation homomorphism", rep, 1e-9), ("CCR", ccr, 1e-8)])
}

fn away_from_south(rng: &mut ChaCha8Rng) -> SpherePoint<f64> {
    loop {
        let p = random_sphere_point(rng);
        if p.coords()[2] > -0.95 {
            return p;
        }
    }
}

fn random_state(f: &TransportFrame<f64>, rng: &mut ChaCha8Rng) -> BRState<f64> {
    let lam = (0..f.dim()).map(|_| Complex::new(rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5))).collect();
    BRState::new(away_from_south(rng), lam)
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut comp, mut spectrum, mut gen) = (0.0f64, 0.0f64, 0.0f64);
    for two_j in 0..=FRAME_MAX_TWO_J {
        let f = default_transport::<f64>(two_j).unwrap();
        let mut done = 0;
        while done < 200 {
            let (g1, g2) = (random_su2(&mut rng), random_su2(&mut rng));
            let st = random_state(&f, &mut rng);
            let (Ok(inner), Ok(both)) = (br_lift(&g2, &st, &f), br_lift(&(g1 * g2), &st, &f)) else { continue };
            let Ok(outer) = br_lift(&g1, &inner, &f) else { continue };
            comp = comp.max(outer.distance(&both));
            done += 1;
        }
        for _ in 0..10 {
            let r = away_from_south(&mut rng);
            let s3 = transported_spin(3, &r, &f).unwrap();
            for (k, e) in hermitian_eigenvalues(&s3).iter().enumerate() {
                spectrum = spectrum.max((e - (two_j as f64 / 2.0 - k as f64)).abs());
            }
            for i in 1..=3 {
                let got = recover_spin_generator(i, &r, &f, DEFAULT_STEP).map_err(|e| e.to_string())?;
                gen = gen.max(cmax_abs(&(got - transported_spin(i, &r, &f).unwrap())));
            }
        }
    }
    // Spin zero against the scalar action: amplitude kept, base rotated by Spin(g).
    let f0 = default_transport::<f64>(0).unwrap();
    let mut mismatches = 0usize;
    for _ in 0..200 {
        let g = random_su2(&mut rng);
        let st = random_state(&f0, &mut rng);
        let Ok(out) = br_lift(&g, &st, &f0) else { continue };
        if out.lam != st.lam || out.r != st.r.rotated(&spinor_map(&g)) {
            mismatches += 1;
        }
    }
    within(&[
        ("composition", comp, 1e-10),
        ("spectrum", spectrum, 1e-12),
        ("generator recovery", gen, 1e-7),
        ("spin-zero mismatches", mismatches as f64, 0.5),
    ])
}

fn json_report(cfg: &SuiteConfig) -> Result<(Vec<u8>, bool), String> {
    let checks = run_suite(Suite::All, cfg, false).map_err(|e| e.to_string())?;
    let report = Report::new(cfg, checks);
    let mut bytes = Vec::new();
    write_report(&report, Format::Json, &mut bytes).map_err(|e| e.to_string())?;
    Ok((bytes, report.all_passed()))
}

fn criterion_12() -> Outcome {
    let cfg = SuiteConfig { seed: 1, ..SuiteConfig::default() };
    let start = Instant::now();
    let (first, passed) = json_report(&cfg)?;
    let seconds = start.elapsed().as_secs_f64();
    let (second, _) = json_report(&cfg)?;
    let text = format!("all suite {seconds:.2} s (< 60), identical JSON {}, all checks passed {passed}", first == second);
    if first == second && passed && seconds < 60.0 {
        Ok(text)
    } else {
        Err(text)
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("orbital generators J_i = L_i", criterion_1),
        ("intertwining J_i Phi = Phi L_i", criterion_2),
        ("su(2) closure", criterion_3),
        ("exchange statistics", criterion_4),
        ("bundle structure", criterion_5),
        ("spinor map", criterion_6),
        ("canonical group operator", criterion_7),
        ("classical momentum map", criterion_8),
        ("Groenewold-van Hove constant", criterion_9),
        ("Weyl relations and Heisenberg representation", criterion_10),
        ("transported-spin lift", criterion_11),
        ("determinism and runtime", criterion_12),
    ];
    let mut failed = 0;
    for (k, (label, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let (mark, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!("criterion {:>2} {mark} {label}: {detail} [{ms:.0} ms]", k + 1);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
