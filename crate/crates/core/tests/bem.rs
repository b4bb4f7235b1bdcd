mod common;

use common::{k_integral, power_series};
use dtn_core::bem::{
    assemble, bulk_eigenfunction, solve_dtn_spectrum, solve_dtn_spectrum_with_shift, BoundaryCurve, CurveSpec,
    ReductionMethod,
};
use dtn_core::canonical::{disk_branch, eigenvalues_at};
use dtn_core::DomainSpec;
use proptest::prelude::*;
use std::f64::consts::PI;
use std::time::Instant;

fn circle() -> BoundaryCurve {
    CurveSpec::circle(1.0).build().unwrap()
}

fn kite() -> BoundaryCurve {
    CurveSpec::Kite.build().unwrap()
}

fn i_series(m: u32, x: f64) -> f64 {
    let fact: f64 = (1..=m).map(f64::from).product();
    power_series(f64::from(m), x, fact, false)
}

fn apply(m: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn circle_layer_symbols_at_zero() {
    let d = assemble(&circle(), 0.0, 64).unwrap();
    for m in 1..6u32 {
        let c: Vec<f64> = d.nodes.iter().map(|t| (f64::from(m) * t).cos()).collect();
        let vc = apply(&d.v_matrix, &c);
        let expect: Vec<f64> = c.iter().map(|x| x / (2.0 * f64::from(m))).collect();
        assert!(max_dev(&vc, &expect) < 1e-13, "V on cos {m}θ");
        let kc = apply(&d.k_matrix, &c);
        let ac: Vec<f64> = c.iter().zip(&kc).map(|(x, y)| 0.5 * x + y).collect();
        assert!(max_dev(&ac, &c.iter().map(|x| 0.5 * x).collect::<Vec<_>>()) < 1e-13);
    }
    // the double layer kernel is the constant -1/(4π)
    for row in &d.k_matrix {
        for (k, w) in row.iter().zip(&d.weights) {
            assert!((k / w + 1.0 / (4.0 * PI)).abs() < 1e-13);
        }
    }
}

#[test]
fn circle_layer_symbols_modified_helmholtz() {
    // V e^{imθ} = I_m(κ) K_m(κ) e^{imθ}, (½I + K) e^{imθ} = κ I_m'(κ) K_m(κ) e^{imθ}
    let kappa = 5f64.sqrt();
    let d = assemble(&circle(), -5.0, 64).unwrap();
    for m in 0..6u32 {
        let mf = f64::from(m);
        let (im, km) = (i_series(m, kappa), k_integral(mf, kappa));
        let ip = i_series(m + 1, kappa) + mf / kappa * im;
        let c: Vec<f64> = d.nodes.iter().map(|t| (mf * t + 0.3).cos()).collect();
        let vc = apply(&d.v_matrix, &c);
        assert!(max_dev(&vc, &c.iter().map(|x| im * km * x).collect::<Vec<_>>()) < 1e-12, "V m={m}");
        let kc = apply(&d.k_matrix, &c);
        let ac: Vec<f64> = c.iter().zip(&kc).map(|(x, y)| 0.5 * x + y).collect();
        assert!(max_dev(&ac, &c.iter().map(|x| kappa * ip * km * x).collect::<Vec<_>>()) < 1e-12, "K m={m}");
    }
}

#[test]
fn single_layer_is_symmetric_after_weighting() {
    for (curve, lambda) in [(kite(), -2.0), (kite(), 3.0), (CurveSpec::Ellipse { a: 2.0, b: 1.0 }.build().unwrap(), 0.0)] {
        let d = assemble(&curve, lambda, 96).unwrap();
        let n = d.n_nodes;
        for i in 0..n {
            for j in 0..i {
                let (a, b) = (d.v_matrix[i][j] / d.weights[j], d.v_matrix[j][i] / d.weights[i]);
                assert!((a - b).abs() < 1e-12, "({i},{j}): {a} vs {b}");
            }
        }
        assert!((d.perimeter() - curve.perimeter()).abs() < 1e-8);
    }
}

#[test]
fn steklov_spectrum_of_the_circle() {
    let s = solve_dtn_spectrum(&circle(), 0.0, 5, 128).unwrap();
    for (got, want) in s.sigmas.iter().zip([0.0, 1.0, 1.0, 2.0, 2.0]) {
        assert!((got - want).abs() < 1e-8, "{:?}", s.sigmas);
    }
    assert!(!s.warning);
    assert_eq!(s.method, ReductionMethod::Cholesky);
    assert!(s.residuals.iter().all(|&r| r <= 1e-8));
}

#[test]
fn circle_matches_closed_form() {
    for lambda in [-5.0, -1.0, 0.0, 3.0, 20.0] {
        let exact = eigenvalues_at(&DomainSpec::unit_disk(), lambda, 8).unwrap().values();
        let s = solve_dtn_spectrum(&circle(), lambda, 8, 256).unwrap();
        assert!(max_dev(&s.sigmas, &exact) < 1e-8, "Λ={lambda}: {:?} vs {exact:?}", s.sigmas);
    }
}

#[test]
fn radius_scaling_on_circles() {
    let c = CurveSpec::circle(1.7).build().unwrap();
    let s = solve_dtn_spectrum(&c, -2.0, 3, 128).unwrap();
    assert!((s.sigmas[0] - disk_branch(0, -2.0 * 1.7 * 1.7).unwrap() / 1.7).abs() < 1e-9);
}

#[test]
fn spectral_convergence_on_the_circle() {
    for lambda in [-5.0, 0.0] {
        let err = |n| {
            let s = solve_dtn_spectrum(&circle(), lambda, 8, n).unwrap();
            max_dev(&s.sigmas, &eigenvalues_at(&DomainSpec::unit_disk(), lambda, 8).unwrap().values())
        };
        let (e64, e128) = (err(64), err(128));
        // both may already sit at the rounding floor
        assert!(e128 <= 1e-4 * e64 || e64.max(e128) < 1e-12, "Λ={lambda}: {e64:e} -> {e128:e}");
    }
}

#[test]
fn spectral_convergence_on_the_kite() {
    let reference = solve_dtn_spectrum(&kite(), -5.0, 6, 512).unwrap().sigmas;
    let err = |n| max_dev(&solve_dtn_spectrum(&kite(), -5.0, 6, n).unwrap().sigmas, &reference);
    let (e32, e64, e128) = (err(32), err(64), err(128));
    assert!(e64 < 1e-2 * e32, "{e32:e} {e64:e}");
    assert!(e128 <= 1e-4 * e64, "{e64:e} {e128:e}");
    assert!(e128 < 1e-10, "{e128:e}");
}

#[test]
fn kite_spectrum_matches_published_values() {
    for (lambda, s2, s6) in [(-5.0, 1.743, 2.740), (5.0, -3.344, 0.784)] {
        let t = Instant::now();
        let s = solve_dtn_spectrum(&kite(), lambda, 8, 512).unwrap();
        assert!(t.elapsed().as_secs_f64() < 60.0);
        assert!((s.sigmas[1] - s2).abs() < 5e-3, "Λ={lambda}: σ₂ = {}", s.sigmas[1]);
        assert!((s.sigmas[5] - s6).abs() < 5e-3, "Λ={lambda}: σ₆ = {}", s.sigmas[5]);
        assert!(!s.warning);
    }
}

#[test]
fn fundamental_solution_shift_leaves_spectrum_unchanged() {
    for (curve, lambda) in [(circle(), 3.0), (kite(), 5.0), (kite(), 1.2)] {
        let a = solve_dtn_spectrum_with_shift(&curve, lambda, 8, 256, 0.0).unwrap();
        let b = solve_dtn_spectrum_with_shift(&curve, lambda, 8, 256, 1.0).unwrap();
        assert!(max_dev(&a.sigmas, &b.sigmas) < 1e-8, "Λ={lambda}: {:?} vs {:?}", a.sigmas, b.sigmas);
    }
}

#[test]
fn singular_real_kernel_falls_back_to_a_shift() {
    // -Y_0/4 makes V singular on constants of the unit circle where Y_0(√Λ) = 0
    let y0_zero: f64 = 0.893_576_966_279_167_5;
    let lambda = y0_zero * y0_zero;
    let s = solve_dtn_spectrum(&circle(), lambda, 5, 128).unwrap();
    assert_ne!(s.kernel.beta, 0.0);
    let exact = eigenvalues_at(&DomainSpec::unit_disk(), lambda, 5).unwrap().values();
    assert!(max_dev(&s.sigmas, &exact) < 1e-8);
    assert!(!s.warning);
}

#[test]
fn near_dirichlet_eigenvalue_is_flagged() {
    let j01 = dtn_core::specfun::bessel_j_zero(0, 1).unwrap();
    let s = solve_dtn_spectrum(&circle(), j01 * j01 * (1.0 + 1e-13), 4, 128).unwrap();
    assert!(s.warning);
    assert!(s.condition_estimate > 1e12);
}

#[test]
fn weinstock_strict_for_the_kite() {
    let s = solve_dtn_spectrum(&kite(), 0.0, 4, 256).unwrap();
    assert!(s.sigmas[0].abs() < 1e-10);
    assert!(s.sigmas[1] * s.perimeter() < 2.0 * PI - 1e-3);
    let c = solve_dtn_spectrum(&circle(), 0.0, 4, 128).unwrap();
    assert!((c.sigmas[1] * c.perimeter() - 2.0 * PI).abs() < 1e-10);
}

#[test]
fn bulk_eigenfunction_on_the_circle() {
    let s = solve_dtn_spectrum(&circle(), 0.0, 3, 128).unwrap();
    let u = &s.densities[1];
    // u = a cos θ + b sin θ on the boundary, so U = a x + b y
    let a: f64 = s.weights.iter().zip(u).zip(&s.nodes).map(|((w, u), t)| w * u * t.cos()).sum::<f64>() / PI;
    let b: f64 = s.weights.iter().zip(u).zip(&s.nodes).map(|((w, u), t)| w * u * t.sin()).sum::<f64>() / PI;
    let pts = [[0.3, 0.1], [-0.5, 0.4], [0.0, -0.7], [0.6, 0.2]];
    let vals = bulk_eigenfunction(&circle(), &s, 1, &pts).unwrap();
    let scale = a.hypot(b);
    for (p, v) in pts.iter().zip(&vals) {
        assert!((v - (a * p[0] + b * p[1])).abs() < 1e-6 * scale, "{p:?}: {v}");
    }
    let centre = bulk_eigenfunction(&circle(), &s, 2, &[[0.0, 0.0]]).unwrap();
    assert!(centre[0].abs() < 1e-10);

    let s = solve_dtn_spectrum(&circle(), -1.0, 3, 128).unwrap();
    let u0 = s.densities[0][0];
    let i1 = i_series(0, 1.0);
    for r in [0.0, 0.3, 0.6, 0.8] {
        let v = bulk_eigenfunction(&circle(), &s, 0, &[[r * 0.6, r * 0.8]]).unwrap()[0];
        let expect = u0 * i_series(0, r) / i1;
        assert!((v - expect).abs() < 1e-6 * expect.abs(), "r={r}: {v} vs {expect}");
    }
    let m1 = bulk_eigenfunction(&circle(), &s, 1, &[[0.0, 0.0]]).unwrap();
    assert!(m1[0].abs() < 1e-10);
}

#[test]
fn rejects_bad_requests() {
    assert!(solve_dtn_spectrum(&circle(), 0.0, 17, 64).is_err());
    assert!(solve_dtn_spectrum(&circle(), 0.0, 0, 64).is_err());
    assert!(solve_dtn_spectrum(&circle(), 0.0, 4, 63).is_err());
    let s = solve_dtn_spectrum(&circle(), 0.0, 3, 64).unwrap();
    assert!(bulk_eigenfunction(&circle(), &s, 1, &[[0.99, 0.0]]).is_err());
    assert!(bulk_eigenfunction(&circle(), &s, 1, &[[1.5, 0.0]]).is_err());
    assert!(bulk_eigenfunction(&circle(), &s, 9, &[[0.0, 0.0]]).is_err());
    assert!(solve_dtn_spectrum(&circle(), -1e4, 3, 64).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn parametrisation_shift_invariance(shift in 0.0f64..(2.0 * PI), lambda in -6.0f64..2.0) {
        for curve in [circle(), kite()] {
            let a = solve_dtn_spectrum(&curve, lambda, 6, 128).unwrap();
            let b = solve_dtn_spectrum(&curve.reparametrized(shift), lambda, 6, 128).unwrap();
            prop_assert!(max_dev(&a.sigmas, &b.sigmas) < 1e-10);
        }
    }

    #[test]
    fn dilation_law(t in 0.5f64..2.0, lambda in -4.0f64..1.0) {
        // σ(tΩ, Λ) = σ(Ω, t²Λ) / t
        let big = CurveSpec::Kite.scaled(t).build().unwrap();
        let a = solve_dtn_spectrum(&big, lambda, 5, 128).unwrap();
        let b = solve_dtn_spectrum(&kite(), t * t * lambda, 5, 128).unwrap();
        for (x, y) in a.sigmas.iter().zip(&b.sigmas) {
            prop_assert!((x - y / t).abs() < 1e-9 * (1.0 + x.abs()));
        }
    }
}
