mod common;

use common::power_series;
use dtn_core::perturb::{
    bessel_identity_check, branch_finite_differences, branch_first_derivative, branch_second_derivative,
    dmatrix_truncated, small_lambda_fit,
};
use dtn_core::specfun::bessel_j_zero;
use dtn_core::{BranchLabel, DomainSpec, Parity};
use proptest::prelude::*;
use std::f64::consts::PI;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn i_series(m: u32, x: f64) -> f64 {
    let fact: f64 = (1..=m).map(f64::from).product();
    power_series(f64::from(m), x, fact, false)
}

fn j_series(m: u32, x: f64) -> f64 {
    let fact: f64 = (1..=m).map(f64::from).product();
    power_series(f64::from(m), x, fact, true)
}

fn cuboid_label(n: &[u32]) -> BranchLabel {
    let (parities, modes) = n
        .iter()
        .map(|&n| if n % 2 == 1 { (Parity::S, (n + 1) / 2) } else { (Parity::A, n / 2) })
        .unzip();
    BranchLabel::Cuboid { parities, modes }
}

#[test]
fn first_derivative_matches_central_differences() {
    let d = DomainSpec::unit_disk();
    for m in 0..=3 {
        let l = BranchLabel::Disk { m };
        for lam in [-2.0, 0.0, 1.0] {
            let a = branch_first_derivative(&d, &l, lam).unwrap();
            let fd = branch_finite_differences(&d, &l, lam, 1e-4).unwrap().first;
            assert!(rel(a, fd) < 1e-6, "m={m} Λ={lam}: {a} vs {fd}");
        }
    }
}

#[test]
fn first_derivative_at_zero_is_minus_bulk_norm_of_harmonic() {
    // U = r^m Y: ‖U‖² = 1/(2m + d)
    for m in 0..5u32 {
        let v = branch_first_derivative(&DomainSpec::unit_disk(), &BranchLabel::Disk { m }, 0.0).unwrap();
        assert!(rel(v, -1.0 / f64::from(2 * m + 2)) < 1e-14);
        let v = branch_first_derivative(&DomainSpec::unit_ball(3), &BranchLabel::Ball { dim: 3, m }, 0.0).unwrap();
        assert!(rel(v, -1.0 / f64::from(2 * m + 3)) < 1e-14);
    }
    let v = branch_first_derivative(&DomainSpec::interval(1.0), &BranchLabel::Interval { parity: Parity::S }, 0.0)
        .unwrap();
    assert!(rel(v, -0.5) < 1e-15);
}

#[test]
fn second_derivative_at_zero_matches_rayleigh_sums() {
    // Σ_n j_{ν,n}^{-4} = 1 / (16 (ν+1)² (ν+2))
    for m in 0..4u32 {
        for (d, nu) in [
            (DomainSpec::unit_disk(), f64::from(m)),
            (DomainSpec::unit_ball(3), f64::from(m) + 0.5),
        ] {
            let label = match d {
                DomainSpec::Disk { .. } => BranchLabel::Disk { m },
                _ => BranchLabel::Ball { dim: 3, m },
            };
            let s = branch_second_derivative(&d, &label, 0.0, 400).unwrap();
            let exact = -4.0 / (16.0 * (nu + 1.0).powi(2) * (nu + 2.0));
            assert!((s.value - exact).abs() <= 2.0 * s.tail_estimate, "{d:?} m={m}: {s:?} vs {exact}");
        }
    }
    // the σ₁ expansions: disk σ'' = -1/8, ball σ'' = -2/45
    let s = branch_second_derivative(&DomainSpec::unit_disk(), &BranchLabel::Disk { m: 0 }, 0.0, 2000).unwrap();
    assert!((s.value + 0.125).abs() < 1e-9);
    let s = branch_second_derivative(&DomainSpec::unit_ball(3), &BranchLabel::Ball { dim: 3, m: 0 }, 0.0, 2000)
        .unwrap();
    assert!((s.value + 2.0 / 45.0).abs() < 1e-9);
}

#[test]
fn second_derivative_matches_finite_differences() {
    let cases = [
        (DomainSpec::unit_disk(), BranchLabel::Disk { m: 0 }, -2.0),
        (DomainSpec::unit_disk(), BranchLabel::Disk { m: 2 }, 3.0),
        (DomainSpec::Disk { radius: 1.7 }, BranchLabel::Disk { m: 1 }, -0.5),
        (DomainSpec::unit_ball(3), BranchLabel::Ball { dim: 3, m: 1 }, 4.0),
        (DomainSpec::unit_ball(4), BranchLabel::Ball { dim: 4, m: 0 }, -6.0),
        (DomainSpec::interval(1.0), BranchLabel::Interval { parity: Parity::A }, 20.0),
        (DomainSpec::interval(2.0), BranchLabel::Interval { parity: Parity::S }, -1.0),
        (DomainSpec::cuboid(&[0.5, 0.8]), cuboid_label(&[1, 1]), 1.0),
        (DomainSpec::cuboid(&[0.5, 0.8]), cuboid_label(&[2, 3]), 15.0),
        (DomainSpec::cuboid(&[0.5, 0.8, 0.6]), cuboid_label(&[1, 2, 1]), -3.0),
    ];
    for (d, l, lam) in cases {
        let a = branch_second_derivative(&d, &l, lam, 200).unwrap();
        let fd = branch_finite_differences(&d, &l, lam, 1e-3).unwrap().second.unwrap();
        assert!(rel(a.value, fd) < 1e-5, "{d:?} {l:?} Λ={lam}: {a:?} vs {fd}");
        let a1 = branch_first_derivative(&d, &l, lam).unwrap();
        let fd1 = branch_finite_differences(&d, &l, lam, 1e-4).unwrap().first;
        assert!(rel(a1, fd1) < 1e-6, "{d:?} {l:?} Λ={lam}: {a1} vs {fd1}");
        assert!(a1 < 0.0);
    }
}

#[test]
fn derivative_rejects_points_outside_the_branch_interval() {
    let j = bessel_j_zero(0, 1).unwrap().powi(2);
    assert!(branch_first_derivative(&DomainSpec::unit_disk(), &BranchLabel::Disk { m: 0 }, j).is_err());
    assert!(branch_second_derivative(&DomainSpec::unit_disk(), &BranchLabel::Disk { m: 0 }, 0.0, 10).is_err());
}

#[test]
fn small_lambda_fits() {
    let (c1, c2) = small_lambda_fit(&DomainSpec::unit_disk()).unwrap();
    assert!((c1 + 0.5).abs() < 1e-6 && (c2 + 1.0 / 16.0).abs() < 1e-6, "{c1} {c2}");
    let (c1, c2) = small_lambda_fit(&DomainSpec::unit_ball(3)).unwrap();
    assert!((c1 + 1.0 / 3.0).abs() < 1e-6 && (c2 + 1.0 / 45.0).abs() < 1e-6, "{c1} {c2}");
    for d in [DomainSpec::interval(1.0), DomainSpec::interval(0.7), DomainSpec::cuboid(&[0.5, 0.9])] {
        let (c1, _) = small_lambda_fit(&d).unwrap();
        let expect = -d.volume().unwrap() / d.boundary_measure().unwrap();
        assert!((c1 - expect).abs() < 1e-6, "{d:?}: {c1} vs {expect}");
    }
}

#[test]
fn dmatrix_examples() {
    let f = dmatrix_truncated(0.0, -1.0, 1, 1000).unwrap();
    let r = f.reconstruct();
    let exact = i_series(1, 1.0) / i_series(0, 1.0);
    assert!((r[0][0] - exact).abs() <= 3.0 / (PI * PI * 1000.0), "{}", r[0][0]);

    let f = dmatrix_truncated(0.0, -1.0, 7, 50).unwrap();
    let r = f.reconstruct();
    for i in 0..7 {
        for j in 0..7 {
            if i != j {
                assert_eq!(r[i][j], 0.0);
            }
        }
    }
    assert_eq!(f.a_matrix.len(), 7);
    assert_eq!(f.a_matrix[0].len(), 7 * 50);
    assert!(f.d0_diag.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn dmatrix_error_decreases_with_m() {
    for (l0, l) in [(0.0, -1.0), (-3.0, 4.0), (2.0, 9.0)] {
        let mut prev = f64::INFINITY;
        for m in [125, 250, 500, 1000, 2000] {
            let e = dmatrix_truncated(l0, l, 5, m).unwrap().reconstruction_error().unwrap();
            assert!(e < prev, "Λ0={l0} Λ={l} M={m}: {e} !< {prev}");
            prev = e;
        }
    }
}

#[test]
fn bessel_identity_examples() {
    let r = bessel_identity_check(1, -4.0, 1000).unwrap();
    // 2 I_1'(2)/I_1(2) with I_1' = I_0 - I_1/z
    let expect = 2.0 * (i_series(0, 2.0) - i_series(1, 2.0) / 2.0) / i_series(1, 2.0);
    assert!(rel(r.rhs, expect) < 1e-13);
    assert!((r.lhs - r.rhs).abs() <= r.tail_bound);

    let r = bessel_identity_check(0, 3.0, 2000).unwrap();
    let z = 3f64.sqrt();
    let expect = -z * j_series(1, z) / j_series(0, z);
    assert!(rel(r.rhs, expect) < 1e-13);
    assert!((r.lhs - r.rhs).abs() <= r.tail_bound);

    for k in 0..3 {
        for lam in [-4.0, -1.0, 3.0] {
            let r = bessel_identity_check(k, lam, 1000).unwrap();
            assert!((r.lhs - r.rhs).abs() <= r.tail_bound, "k={k} Λ={lam}: {r:?}");
            // the bound is not wildly pessimistic
            assert!((r.lhs - r.rhs).abs() > 0.5 * r.tail_bound, "k={k} Λ={lam}: {r:?}");
        }
    }
    let j = bessel_j_zero(1, 2).unwrap().powi(2);
    assert!(bessel_identity_check(1, j, 100).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn sigma1_is_concave_below_first_dirichlet(lam in -60.0f64..5.7, ball in any::<bool>()) {
        let (d, l) = if ball {
            (DomainSpec::unit_ball(3), BranchLabel::Ball { dim: 3, m: 0 })
        } else {
            (DomainSpec::unit_disk(), BranchLabel::Disk { m: 0 })
        };
        let s = branch_second_derivative(&d, &l, lam, 100).unwrap();
        prop_assert!(s.value < 0.0);
    }
}
