//! The acceptance suite, shared by the test target and the CLI.

use std::f64::consts::PI;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{inequality_probe, neg_infty_check, Inequality, ProbeParams, ProbeStatus};
use crate::bem::{solve_dtn_spectrum, CurveSpec};
use crate::branches::{duality_roundtrip, nonpositive_count_check};
use crate::canonical::interval::piece_parity;
use crate::canonical::{self, disk_branch, eigenvalues_at, laplace_spectrum};
use crate::domain::{BoundaryCondition, BranchLabel, DomainSpec};
use crate::error::Result;
use crate::perturb::{bessel_identity_check, branch_finite_differences, branch_first_derivative, small_lambda_fit};
use crate::roots::brent;
use crate::specfun::{bessel, bessel_j_zero, BesselKind, BesselOrder};

/// Criteria that are implemented faithfully but do not hold.
pub const KNOWN_UNATTAINABLE: [u32; 1] = [5];

pub const CRITERIA: [(u32, &str); 12] = [
    (1, "disk closed forms"),
    (2, "kite boundary elements"),
    (3, "boundary elements vs closed form"),
    (4, "analytic vs finite-difference derivatives"),
    (5, "small-Λ expansion coefficients"),
    (6, "non-positive counting identity"),
    (7, "Robin duality round trip"),
    (8, "Bessel series identity"),
    (9, "disk branches do not cross"),
    (10, "rectangle branch crossing"),
    (11, "Λ → -∞ limits"),
    (12, "invariants and probes"),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    pub known_unattainable: bool,
    pub seconds: f64,
    pub detail: String,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        let known = if self.known_unattainable { " (known unattainable)" } else { "" };
        format!("{tag} {:>2} {}{known}: {}", self.id, self.title, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcceptanceReport {
    pub criteria: Vec<CriterionOutcome>,
    /// Every criterion passed except those in [`KNOWN_UNATTAINABLE`], which failed.
    pub green: bool,
}

/// Outcome of one check: pass flag plus a one-line summary.
type Check = Result<(bool, String)>;

pub fn run_criterion(id: u32) -> CriterionOutcome {
    let title = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1).to_string();
    let start = Instant::now();
    let result = match id {
        1 => disk_closed_forms(),
        2 => kite(),
        3 => bem_vs_closed_form(),
        4 => derivatives(),
        5 => small_lambda(),
        6 => counting(),
        7 => duality(),
        8 => bessel_identity(),
        9 => no_crossing(),
        10 => rectangle_crossing(),
        11 => neg_infinity(),
        12 => properties(),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let seconds = start.elapsed().as_secs_f64();
    let (passed, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionOutcome { id, title, passed, known_unattainable: KNOWN_UNATTAINABLE.contains(&id), seconds, detail }
}

pub fn run_acceptance() -> AcceptanceReport {
    let criteria: Vec<_> = CRITERIA.iter().map(|c| run_criterion(c.0)).collect();
    let green = criteria.iter().all(|c| c.passed != c.known_unattainable);
    AcceptanceReport { criteria, green }
}

fn disk_closed_forms() -> Check {
    let start = Instant::now();
    let v = eigenvalues_at(&DomainSpec::unit_disk(), 0.0, 9)?.values();
    let expect = [0.0, 1.0, 1.0, 2.0, 2.0, 3.0, 3.0, 4.0, 4.0];
    let err = v.iter().zip(&expect).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let t = start.elapsed().as_secs_f64();
    Ok((v.len() == 9 && err <= 1e-12 && t < 1.0, format!("max error {err:.1e}, {t:.3} s")))
}

fn kite() -> Check {
    let curve = CurveSpec::Kite.build()?;
    let mut ok = true;
    let mut parts = Vec::new();
    for (lambda, targets) in [(-5.0, [1.743, 2.740]), (5.0, [-3.344, 0.784])] {
        let start = Instant::now();
        let s = solve_dtn_spectrum(&curve, lambda, 6, 512)?;
        let t = start.elapsed().as_secs_f64();
        let (e2, e6) = ((s.sigmas[1] - targets[0]).abs(), (s.sigmas[5] - targets[1]).abs());
        ok &= e2 <= 5e-3 && e6 <= 5e-3 && t < 60.0;
        parts.push(format!("Λ={lambda}: σ2={:.6} σ6={:.6} ({t:.2} s)", s.sigmas[1], s.sigmas[5]));
    }
    Ok((ok, parts.join("; ")))
}

fn bem_vs_closed_form() -> Check {
    let start = Instant::now();
    let circle = CurveSpec::circle(1.0).build()?;
    let mut err: f64 = 0.0;
    for lambda in [-5.0, 0.0] {
        let s = solve_dtn_spectrum(&circle, lambda, 8, 256)?;
        let exact: Vec<f64> = [0u32, 1, 1, 2, 2, 3, 3, 4]
            .iter()
            .map(|&m| disk_branch(m, lambda))
            .collect::<Result<_>>()?;
        for (a, b) in s.sigmas.iter().zip(&exact) {
            err = err.max((a - b).abs());
        }
    }
    let t = start.elapsed().as_secs_f64();
    Ok((err <= 1e-8 && t < 20.0, format!("max error {err:.1e}, {t:.2} s")))
}

fn derivatives() -> Check {
    let disk = DomainSpec::unit_disk();
    let mut worst: f64 = 0.0;
    for m in 0..4 {
        let label = BranchLabel::Disk { m };
        for l0 in [-2.0, 0.0, 1.0] {
            let exact = branch_first_derivative(&disk, &label, l0)?;
            let fd = branch_finite_differences(&disk, &label, l0, 1e-4)?.first;
            worst = worst.max(((exact - fd) / exact).abs());
        }
    }
    Ok((worst < 1e-6, format!("max relative error {worst:.1e}")))
}

fn small_lambda() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, d, target) in [
        ("disk", DomainSpec::unit_disk(), (-0.5, -1.0 / 8.0)),
        ("ball3", DomainSpec::unit_ball(3), (-1.0 / 3.0, -2.0 / 45.0)),
    ] {
        let (c1, c2) = small_lambda_fit(&d)?;
        ok &= (c1 - target.0).abs() <= 1e-6 && (c2 - target.1).abs() <= 1e-6;
        parts.push(format!("{name}: c1={c1:.8} c2={c2:.8} (targets {:.8}, {:.8})", target.0, target.1));
    }
    Ok((ok, parts.join("; ")))
}

/// Deterministic low-discrepancy samples in `(lo, hi)`.
fn samples(lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    (1..).map(move |i: u32| lo + (hi - lo) * (f64::from(i) * phi).fract())
}

fn counting() -> Check {
    let mut bad = Vec::new();
    let mut total = 0;
    for (name, d) in [("disk", DomainSpec::unit_disk()), ("square", DomainSpec::square(PI))] {
        let dirichlet: Vec<f64> = laplace_spectrum(&d, BoundaryCondition::Dirichlet, 41.0)?.into_iter().map(|p| p.0).collect();
        let grid = samples(-50.0, 40.0).filter(|l| dirichlet.iter().all(|e| (l - e).abs() > 1e-6)).take(50);
        for lambda in grid {
            total += 1;
            let r = nonpositive_count_check(&d, lambda)?;
            if !r.identity_holds() {
                bad.push(format!("{name} Λ={lambda}"));
            }
        }
    }
    Ok((bad.is_empty(), format!("{} of {total} samples violate the identity {bad:?}", bad.len())))
}

fn duality() -> Check {
    let square = DomainSpec::cuboid(&[PI / 2.0, PI / 2.0]);
    let cases = [
        (DomainSpec::unit_disk(), -7.5, 1),
        (DomainSpec::unit_disk(), -1.0, 4),
        (DomainSpec::unit_disk(), 3.0, 2),
        (DomainSpec::unit_disk(), 20.0, 3),
        (DomainSpec::unit_disk(), 33.0, 6),
        (DomainSpec::Disk { radius: 0.7 }, 12.0, 2),
        (DomainSpec::interval(1.0), -3.0, 1),
        (DomainSpec::interval(1.0), 5.0, 2),
        (DomainSpec::interval(2.5), 12.0, 1),
        (DomainSpec::interval(0.4), 400.0, 2),
        (square.clone(), -4.0, 1),
        (square.clone(), 0.5, 3),
        (square.clone(), 3.0, 2),
        (square, 11.0, 4),
        (DomainSpec::cuboid(&[0.5, 0.8]), 30.0, 5),
        (DomainSpec::cuboid(&[0.5, 0.8, 1.1]), 12.0, 2),
        (DomainSpec::cuboid(&[0.5, 0.8, 1.1]), -2.0, 7),
        (DomainSpec::cuboid(&[0.7, 0.7, 0.7]), 4.0, 3),
        (DomainSpec::cuboid(&[0.6, 1.3]), -10.0, 2),
        (DomainSpec::cuboid(&[1.0, 1.0, 0.4]), 1.5, 1),
    ];
    let mut worst: f64 = 0.0;
    for (d, lambda, k) in &cases {
        let r = duality_roundtrip(d, *lambda, *k)?;
        worst = worst.max((r.recovered_lambda - lambda).abs());
    }
    Ok((worst < 1e-8, format!("{} cases, max |ΔΛ| = {worst:.1e}", cases.len())))
}

fn bessel_identity() -> Check {
    let mut ok = true;
    let mut worst = 0.0f64;
    for k in 0..3 {
        for lambda in [-4.0, -1.0, 3.0] {
            let r = bessel_identity_check(k, lambda, 1000)?;
            let gap = (r.lhs - r.rhs).abs();
            ok &= gap <= r.tail_bound;
            worst = worst.max(gap / r.tail_bound);
        }
    }
    Ok((ok, format!("max |lhs - rhs| / tail bound = {worst:.3}")))
}

fn no_crossing() -> Check {
    let mut violations = 0;
    for n in 0..10u32 {
        let top = bessel_j_zero(n, 1)?.powi(2);
        for i in 0..200 {
            let lambda = -100.0 + (top + 100.0) * f64::from(i) / 200.0;
            let lower = disk_branch(n, lambda)?;
            for m in n + 1..=10 {
                if !(lower < disk_branch(m, lambda)?) {
                    violations += 1;
                }
            }
        }
    }
    Ok((violations == 0, format!("{violations} ordering violations")))
}

fn cuboid_label(pieces: &[u32]) -> BranchLabel {
    let (parities, modes) = pieces.iter().map(|&n| piece_parity(n)).unzip();
    BranchLabel::Cuboid { parities, modes }
}

fn rectangle_crossing() -> Check {
    let q = DomainSpec::cuboid(&[PI / 2.0, 27.0 * PI / 16.0]);
    let (b1, b2) = (cuboid_label(&[1, 4]), cuboid_label(&[2, 3]));
    let diff = |x: f64| -> f64 {
        match (canonical::branch_value(&q, &b1, x), canonical::branch_value(&q, &b2, x)) {
            (Ok(a), Ok(b)) => a - b,
            _ => f64::NAN,
        }
    };
    let x = brent(diff, -0.9, -0.4, 1e-12)?;
    Ok(((x + 0.65).abs() <= 0.05, format!("crossing at Λ = {x:.6}")))
}

fn neg_infinity() -> Check {
    let lambda = -1e6;
    let disk = neg_infty_check(&DomainSpec::unit_disk(), 1, &[lambda], 1e-3)?;
    let square = neg_infty_check(&DomainSpec::square(PI), 1, &[lambda], 5e-4)?;
    let (d, s) = (disk.data[0], square.data[0]);
    Ok((
        disk.status == ProbeStatus::Pass && square.status == ProbeStatus::Pass,
        format!("disk σ - √(-Λ) = {:.6}, square σ1/√(-Λ) = {:.6}", d.lhs, s.lhs),
    ))
}

fn wronskians() -> Result<f64> {
    let ord = |nu: f64| BesselOrder::new(nu);
    let mut worst: f64 = 0.0;
    for nu in [0.0, 0.5, 1.0, 2.5, 7.0] {
        for z in [0.3, 1.0, 4.0, 17.0, 45.0] {
            let (a, b) = (ord(nu)?, ord(nu + 1.0)?);
            let ik = bessel(BesselKind::I, a, z)? * bessel(BesselKind::K, b, z)?
                + bessel(BesselKind::I, b, z)? * bessel(BesselKind::K, a, z)?;
            let jy = bessel(BesselKind::J, b, z)? * bessel(BesselKind::Y, a, z)?
                - bessel(BesselKind::J, a, z)? * bessel(BesselKind::Y, b, z)?;
            worst = worst.max((ik * z - 1.0).abs()).max((jy * PI * z / 2.0 - 1.0).abs());
        }
    }
    Ok(worst)
}

/// `σ(tΩ, Λ/t²) = σ(Ω, Λ)/t`.
fn scaling() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for d in [DomainSpec::unit_disk(), DomainSpec::interval(1.0), DomainSpec::cuboid(&[0.5, 0.8]), DomainSpec::unit_ball(3)] {
        for t in [0.5, 2.0, 3.7] {
            for lambda in [-9.0, -0.5, 1.3] {
                let a = eigenvalues_at(&d, lambda, 6)?.values();
                let b = eigenvalues_at(&d.scaled(t), lambda / (t * t), 6)?.values();
                for (x, y) in a.iter().zip(&b) {
                    worst = worst.max((x / t - y).abs() / x.abs().max(1.0));
                }
            }
        }
    }
    Ok(worst)
}

/// Largest branch derivative over a grid; must be negative.
fn monotonicity() -> Result<f64> {
    let disk = DomainSpec::unit_disk();
    let mut worst = f64::NEG_INFINITY;
    for m in 0..6 {
        for lambda in [-50.0, -5.0, 0.0, 2.0, 5.0] {
            if lambda >= bessel_j_zero(m, 1)?.powi(2) {
                continue;
            }
            worst = worst.max(branch_first_derivative(&disk, &BranchLabel::Disk { m }, lambda)?);
        }
    }
    Ok(worst)
}

fn properties() -> Check {
    let start = Instant::now();
    let disk = DomainSpec::unit_disk();
    let params = ProbeParams::default();
    let mut checks: Vec<(&str, bool)> = Vec::new();

    checks.push(("wronskians", wronskians()? < 1e-12));
    checks.push(("scaling", scaling()? < 1e-10));
    checks.push(("monotonicity", monotonicity()? < 0.0));

    let w = inequality_probe(Inequality::Weinstock, &disk, &params)?;
    checks.push(("weinstock equality on the disk", w.status == ProbeStatus::Pass && w.data[0].margin.abs() < 1e-12));

    let mut sqrt_ok = true;
    for d in [disk.clone(), DomainSpec::square(PI), DomainSpec::interval(1.0), DomainSpec::unit_ball(3)] {
        sqrt_ok &= inequality_probe(Inequality::Sigma1Sqrt, &d, &params)?.status == ProbeStatus::Pass;
    }
    checks.push(("σ1 <= √(-Λ)", sqrt_ok));

    let hoer = ProbeParams { lambda_grid: (0..=50).map(|i| -1e4 * f64::from(i) / 50.0).collect(), ..params.clone() };
    checks.push(("hoermander", inequality_probe(Inequality::Hoermander, &disk, &hoer)?.status == ProbeStatus::Pass));

    let conj = inequality_probe(Inequality::ConjSqroot, &disk, &params)?;
    let corner = neg_infty_check(&DomainSpec::square(PI), 4, &[-1e4, -1e6], 5e-4)?;
    let labelled = |r: &super::ProbeResult| r.conjecture && r.note.contains("probe, not proof");
    checks.push(("conjecture probes labelled", labelled(&conj) && labelled(&corner)));

    let t = start.elapsed().as_secs_f64();
    checks.push(("runtime < 10 min", t < 600.0));
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    Ok((failed.is_empty(), format!("{} checks, failed {failed:?}, {t:.2} s", checks.len())))
}
