mod common;

use common::{assert_close, bisect, power_series};
use dtn_core::canonical::{
    ball_branch, branch_value, count_at_most, cuboid_spectrum, disk_branch, eigenvalues_at, interval_branch,
    laplace_spectrum, mode_multiplicity,
};
use dtn_core::specfun::{bessel_j_zero, bessel_jprime_zero};
use dtn_core::{BoundaryCondition, BranchLabel, DomainSpec, DtnError, Parity};
use proptest::prelude::*;
use std::f64::consts::PI;

fn i_series(nu: f64, x: f64) -> f64 {
    let g = match nu as u32 {
        0 | 1 => 1.0,
        2 => 2.0,
        _ => unreachable!(),
    };
    power_series(nu, x, g, false)
}

// Elementary one-dimensional branches of the unit interval, written out
// independently of the library.
fn f_elem(p: Parity, x: f64) -> f64 {
    let (s, k) = ((-x).max(0.0).sqrt(), x.max(0.0).sqrt());
    match p {
        Parity::S if x < 0.0 => s * (s / 2.0).tanh(),
        Parity::S => -k * (k / 2.0).tan(),
        Parity::A if x < 0.0 => s / (s / 2.0).tanh(),
        Parity::A if x == 0.0 => 2.0,
        Parity::A => k / (k / 2.0).tan(),
    }
}

fn piece_parity(n: u32) -> Parity {
    if n % 2 == 1 {
        Parity::S
    } else {
        Parity::A
    }
}

// x in piece n with f(x) = y, by bisection.
fn f_inv_elem(n: u32, y: f64) -> f64 {
    let p = piece_parity(n);
    let hi = (f64::from(n) * PI).powi(2);
    let eps = 1e-13 * hi;
    let a = if n <= 2 { -(y.abs() + 10.0).powi(2) } else { (f64::from(n - 2) * PI).powi(2) + eps };
    bisect(|x| f_elem(p, x) - y, a, hi - eps)
}

// Cuboid branch with pieces `n` on sides `l`, by nested bisection.
fn cuboid_branch_elem(l: &[f64], n: &[u32], lambda: f64) -> f64 {
    let g = |s: f64| -> f64 { l.iter().zip(n).map(|(&l, &n)| f_inv_elem(n, l * s) / (l * l)).sum::<f64>() - lambda };
    bisect(g, -1e4, 1e4)
}

fn dirichlet_sum(l: &[f64], n: &[u32]) -> f64 {
    l.iter().zip(n).map(|(&l, &n)| (f64::from(n) * PI / l).powi(2)).sum()
}

fn cuboid_label(n: &[u32]) -> BranchLabel {
    let (parities, modes) = n
        .iter()
        .map(|&n| if n % 2 == 1 { (Parity::S, (n + 1) / 2) } else { (Parity::A, n / 2) })
        .unzip();
    BranchLabel::Cuboid { parities, modes }
}

#[test]
fn documented_values() {
    assert_close(interval_branch(Parity::S, 1.0, -4.0).unwrap(), 2.0 * 1f64.tanh(), 1e-14, "σ_s(-4)");
    assert_close(interval_branch(Parity::S, 1.0, -4.0).unwrap(), 1.523_188, 1e-6, "σ_s(-4) digits");
    assert_close(disk_branch(0, -1.0).unwrap(), i_series(1.0, 1.0) / i_series(0.0, 1.0), 1e-13, "disk m=0");
    assert_close(disk_branch(0, -1.0).unwrap(), 0.446_389, 1e-5, "disk m=0 digits");
    assert_close(ball_branch(3, 0, -1.0).unwrap(), 1.0 / 1f64.tanh() - 1.0, 1e-13, "ball m=0");
    for m in 0..6 {
        assert_eq!(mode_multiplicity(3, m), 2 * m as usize + 1);
    }
    let err = disk_branch(1, bessel_j_zero(1, 1).unwrap().powi(2)).unwrap_err();
    assert!(matches!(err, DtnError::Pole { .. }));
}

#[test]
fn eigenvalues_at_examples() {
    let s = eigenvalues_at(&DomainSpec::unit_disk(), 0.0, 9).unwrap();
    assert_eq!(s.first(9), vec![0.0, 1.0, 1.0, 2.0, 2.0, 3.0, 3.0, 4.0, 4.0]);

    let v = eigenvalues_at(&DomainSpec::unit_disk(), -1.0, 3).unwrap().first(3);
    // z I_1'(z)/I_1(z) = z I_0(z)/I_1(z) - 1 at z = 1
    let s1 = i_series(0.0, 1.0) / i_series(1.0, 1.0) - 1.0;
    assert_close(v[0], 0.446_389, 1e-5, "σ_1");
    assert_close(v[1], s1, 1e-13, "σ_2");
    assert_close(v[2], s1, 1e-13, "σ_3");

    assert_eq!(eigenvalues_at(&DomainSpec::interval(1.0), 0.0, 4).unwrap().values(), vec![0.0, 2.0]);
    assert_eq!(eigenvalues_at(&DomainSpec::unit_ball(3), 0.0, 4).unwrap().first(4), vec![0.0, 1.0, 1.0, 1.0]);
}

#[test]
fn eigenvalues_at_is_complete_for_the_disk_above_poles() {
    // Λ = 60 lies above j_{m,1}² for m <= 4; brute force over all modes m <= 40
    let lambda = 60.0;
    let mut all: Vec<f64> = Vec::new();
    for m in 0..=40 {
        let v = disk_branch(m, lambda).unwrap();
        all.extend(std::iter::repeat(v).take(if m == 0 { 1 } else { 2 }));
    }
    all.sort_by(f64::total_cmp);
    let got = eigenvalues_at(&DomainSpec::unit_disk(), lambda, 20).unwrap().first(20);
    for (g, e) in got.iter().zip(&all) {
        assert_close(*g, *e, 1e-13, "disk Λ=60");
    }
}

#[test]
fn laplace_examples() {
    let d = laplace_spectrum(&DomainSpec::unit_disk(), BoundaryCondition::Dirichlet, 10.0).unwrap();
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].1, 1);
    assert_close(d[0].0, 5.783_19, 1e-6, "j01²");
    let n = laplace_spectrum(&DomainSpec::unit_disk(), BoundaryCondition::Neumann, 10.0).unwrap();
    assert_eq!(n.len(), 3);
    assert_eq!(n[0], (0.0, 1));
    assert_close(n[1].0, 3.389_96, 1e-5, "j'11²");
    assert_close(n[2].0, 9.328_36, 1e-5, "j'21²");
    assert_eq!((n[1].1, n[2].1), (2, 2));
    let i = laplace_spectrum(&DomainSpec::interval(1.0), BoundaryCondition::Dirichlet, 100.0).unwrap();
    let expect: Vec<f64> = (1..=3).map(|k| (f64::from(k) * PI).powi(2)).collect();
    assert_eq!(i.len(), 3);
    for ((v, m), e) in i.iter().zip(expect) {
        assert_close(*v, e, 1e-14, "interval Dirichlet");
        assert_eq!(*m, 1);
    }
}

#[test]
fn cuboid_matches_elementary_oracle_and_is_complete() {
    let hw = [0.8, 1.3];
    let l = [1.6, 2.6];
    for &lambda in &[-7.0, 0.0, 4.5, 13.0] {
        let s_max = 4.0;
        let got = cuboid_spectrum(&hw, lambda, s_max).unwrap();
        let mut expect = Vec::new();
        for n1 in 1..=12 {
            for n2 in 1..=12 {
                let n = [n1, n2];
                let lo_ok = n1 < 3 || n2 < 3 || dirichlet_sum(&l, &[n1 - 2, n2 - 2]) < lambda;
                if !(lo_ok && lambda < dirichlet_sum(&l, &n)) {
                    continue;
                }
                let v = cuboid_branch_elem(&l, &n, lambda);
                if v <= s_max {
                    expect.push((v, cuboid_label(&n)));
                }
            }
        }
        expect.sort_by(|a, b| a.0.total_cmp(&b.0));
        assert_eq!(got.entries.len(), expect.len(), "Λ = {lambda}");
        for (e, (v, lab)) in got.entries.iter().zip(&expect) {
            assert!((e.sigma - v).abs() < 1e-9 * v.abs().max(1.0), "Λ = {lambda}: {} vs {v}", e.sigma);
            assert_eq!(&e.branch.label, lab);
        }
    }
}

#[test]
fn cuboid_examples() {
    let sq = [PI / 2.0, PI / 2.0];
    let s = cuboid_spectrum(&sq, 0.0, 0.1).unwrap();
    assert_eq!(s.entries.len(), 1);
    assert!(s.entries[0].sigma.abs() < 1e-12);
    assert_eq!(s.entries[0].branch.label, cuboid_label(&[1, 1]));
    assert!(cuboid_spectrum(&sq, 0.0, -1.0).unwrap().entries.is_empty());

    // unit cube: spectrum invariant under permutations of the axes
    let cube = DomainSpec::cuboid(&[0.5, 0.5, 0.5]);
    let spec = eigenvalues_at(&cube, 0.0, 30).unwrap();
    for e in &spec.entries {
        let BranchLabel::Cuboid { parities, modes } = &e.branch.label else { panic!() };
        for perm in [[1, 0, 2], [0, 2, 1], [2, 1, 0]] {
            let label = BranchLabel::Cuboid {
                parities: perm.iter().map(|&i| parities[i]).collect(),
                modes: perm.iter().map(|&i| modes[i]).collect(),
            };
            let v = branch_value(&cube, &label, 0.0).unwrap();
            assert!((v - e.sigma).abs() < 1e-10);
        }
    }
}

#[test]
fn rectangle_branches_cross() {
    let q = DomainSpec::cuboid(&[PI / 2.0, 27.0 * PI / 16.0]);
    let b1 = cuboid_label(&[1, 4]);
    let b2 = cuboid_label(&[2, 3]);
    let diff = |x: f64| branch_value(&q, &b1, x).unwrap() - branch_value(&q, &b2, x).unwrap();
    assert!(diff(-0.9) * diff(-0.4) < 0.0);
    let x = bisect(diff, -0.9, -0.4);
    assert!((x + 0.65).abs() <= 0.05, "crossing at {x}");
}

#[test]
fn disk_no_crossing() {
    for n in 0..10u32 {
        let top = bessel_j_zero(n, 1).unwrap().powi(2);
        for i in 0..200 {
            let lambda = -100.0 + (top + 100.0) * f64::from(i) / 200.0;
            let lower = disk_branch(n, lambda).unwrap();
            for m in n + 1..=10 {
                assert!(lower < disk_branch(m, lambda).unwrap(), "n={n} m={m} Λ={lambda}");
            }
        }
    }
}

#[test]
fn zero_crossings_at_neumann_eigenvalues() {
    for m in 0..4u32 {
        for k in 1..3 {
            let z = bessel_jprime_zero(m, k).unwrap();
            let v = disk_branch(m, z * z).unwrap();
            assert!(v.abs() < 1e-9, "m={m} k={k}: {v}");
        }
    }
    for k in 1..4 {
        let lam = (f64::from(k) * PI).powi(2);
        let p = if k % 2 == 0 { Parity::S } else { Parity::A };
        assert!(interval_branch(p, 1.0, lam).unwrap().abs() < 1e-9);
    }
    // and only there: the disk counting identity at Λ between Neumann values
    let z = bessel_jprime_zero(1, 1).unwrap().powi(2);
    assert_eq!(count_at_most(&DomainSpec::unit_disk(), z - 1e-3, 0.0).unwrap(), 1);
    assert_eq!(count_at_most(&DomainSpec::unit_disk(), z + 1e-3, 0.0).unwrap(), 3);
}

#[test]
fn sigma1_upper_bound() {
    let domains = [
        DomainSpec::unit_disk(),
        DomainSpec::unit_ball(3),
        DomainSpec::cuboid(&[PI / 2.0, PI / 2.0]),
        DomainSpec::cuboid(&[0.5, 0.7, 1.1]),
    ];
    for d in &domains {
        let ratio = d.volume().unwrap() / d.boundary_measure().unwrap();
        let l1 = laplace_spectrum(d, BoundaryCondition::Dirichlet, 200.0).unwrap()[0].0;
        for i in 0..40 {
            let lambda = -50.0 + (l1 + 50.0) * f64::from(i) / 40.0;
            let s1 = eigenvalues_at(d, lambda, 1).unwrap().values()[0];
            assert!(s1 <= -lambda * ratio + 1e-12, "{d:?} Λ={lambda}: {s1}");
        }
    }
}

fn domains_for_scaling() -> Vec<(DomainSpec, BranchLabel)> {
    vec![
        (DomainSpec::interval(1.3), BranchLabel::Interval { parity: Parity::S }),
        (DomainSpec::interval(1.3), BranchLabel::Interval { parity: Parity::A }),
        (DomainSpec::unit_disk(), BranchLabel::Disk { m: 0 }),
        (DomainSpec::unit_disk(), BranchLabel::Disk { m: 3 }),
        (DomainSpec::unit_ball(3), BranchLabel::Ball { dim: 3, m: 2 }),
        (DomainSpec::cuboid(&[0.6, 0.9]), cuboid_label(&[1, 2])),
        (DomainSpec::cuboid(&[0.6, 0.9, 0.4]), cuboid_label(&[2, 1, 1])),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scaling_law(lambda in -30.0f64..4.0, idx in 0usize..7, alpha in prop::sample::select(vec![0.5, 2.0])) {
        let (d, label) = &domains_for_scaling()[idx];
        let base = branch_value(d, label, alpha * alpha * lambda);
        let scaled = branch_value(&d.scaled(alpha), label, lambda);
        match (base, scaled) {
            (Ok(b), Ok(s)) => prop_assert!((s - b / alpha).abs() <= 1e-12 * s.abs().max(1.0), "{s} vs {}", b / alpha),
            (Err(_), Err(_)) => {}
            (b, s) => prop_assert!(false, "mismatch {b:?} {s:?}"),
        }
    }

    #[test]
    fn monotone_in_lambda(idx in 0usize..7, start in -40.0f64..-1.0) {
        let (d, label) = &domains_for_scaling()[idx];
        // walk 200 points up to just below the first pole of the branch
        let id = dtn_core::canonical::branch_id(d, label, start).unwrap();
        let top = id.continuity.1.unwrap().min(60.0);
        let mut prev = f64::INFINITY;
        for i in 0..200 {
            let lambda = start + (top - 1e-6 - start) * f64::from(i) / 199.0;
            let v = branch_value(d, label, lambda).unwrap();
            prop_assert!(v < prev, "Λ={lambda}: {v} !< {prev}");
            prev = v;
        }
    }
}
