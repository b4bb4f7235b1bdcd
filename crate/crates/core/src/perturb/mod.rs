//! Λ-derivatives of eigenvalue branches, small-Λ fits of `σ_1`, and the
//! truncated matrix representation of the disk DtN map.

mod dmatrix;

pub use dmatrix::{bessel_identity_check, dmatrix_truncated, BesselIdentity, DtnMatrixFactorization};

use serde::{Deserialize, Serialize};

use crate::canonical::{self, cuboid, eigenvalues_at, radial};
use crate::domain::{BranchLabel, DomainSpec, Parity};
use crate::error::{DtnError, Result};
use crate::specfun::{bessel, bessel_j_zeros, bessel_scaled, integrate, BesselKind, BesselOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivativeMethod {
    Analytic,
    FiniteDifference,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchDerivatives {
    pub lambda0: f64,
    pub first: f64,
    pub second: Option<f64>,
    pub method: DerivativeMethod,
}

/// A truncated series value with an estimate of the neglected tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: f64,
    pub tail_estimate: f64,
}

/// Neumaier-compensated sum in the given order.
pub(crate) fn compensated_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let (mut sum, mut c) = (0.0f64, 0.0f64);
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            c += (sum - s) + t;
        } else {
            c += (t - s) + sum;
        }
        sum = s;
    }
    sum + c
}

fn check_in_interval(domain: &DomainSpec, label: &BranchLabel, lambda0: f64) -> Result<()> {
    // evaluating the branch rejects poles and points outside its interval
    canonical::branch_value(domain, label, lambda0).map(|_| ())
}

/// `∫_0^1 (F_ν(z r) / F_ν(z))² r dr` with `F = I` (`x < 0`) or `J` (`x > 0`),
/// `z = √|x|`; at `x = 0` the profile is `r^m`.
fn radial_bulk_norm(dim: u32, m: u32, x: f64) -> Result<f64> {
    if x == 0.0 {
        return Ok(1.0 / f64::from(2 * m + dim));
    }
    let nu = radial::shift(dim) + f64::from(m);
    let order = BesselOrder::new(nu)?;
    let z = x.abs().sqrt();
    let norm = if x < 0.0 {
        let iz = bessel_scaled(BesselKind::I, order, z)?;
        integrate(
            |r| {
                let v = bessel_scaled(BesselKind::I, order, z * r).unwrap_or(f64::NAN) / iz * (z * (r - 1.0)).exp();
                v * v * r
            },
            0.0,
            1.0,
            1e-15,
        )?
    } else {
        let jz = bessel(BesselKind::J, order, z)?;
        integrate(
            |r| {
                let v = bessel(BesselKind::J, order, z * r).unwrap_or(f64::NAN) / jz;
                v * v * r
            },
            0.0,
            1.0,
            1e-15 / (jz * jz).min(1.0),
        )?
    };
    Ok(norm)
}

/// `f_ℵ''(x)` of the unit interval from the resolvent series
/// `-8 Σ λ_n / (λ_n - x)³` over the Dirichlet eigenvalues `λ_n = (nπ)²` of the
/// same parity.
fn interval_f_second(parity: Parity, x: f64, terms: usize) -> SeriesValue {
    let n0 = match parity {
        Parity::S => 1,
        Parity::A => 2,
    };
    let lam = |i: usize| ((n0 + 2 * i) as f64 * std::f64::consts::PI).powi(2);
    let value = -8.0 * compensated_sum((0..terms).map(|i| lam(i) / (lam(i) - x).powi(3)));
    // Σ_{n > N, step 2} 8 / (n π)⁴ ≈ 4 / (3 π⁴ N³)
    let n_last = (n0 + 2 * terms) as f64;
    let lt = lam(terms);
    let tail = 4.0 / (3.0 * std::f64::consts::PI.powi(4) * n_last.powi(3)) * (lt / (lt - x.max(0.0))).powi(3);
    SeriesValue { value, tail_estimate: tail }
}

/// `dσ/dΛ` at `Λ_0` on the given branch: `-‖U‖²_{L²(Ω)}` for the bulk
/// eigenfunction with unit boundary norm.
pub fn branch_first_derivative(domain: &DomainSpec, label: &BranchLabel, lambda0: f64) -> Result<f64> {
    check_in_interval(domain, label, lambda0)?;
    match (domain, label) {
        (DomainSpec::Interval { alpha }, BranchLabel::Interval { parity }) => {
            Ok(alpha * canonical::f_derivative(*parity, alpha * alpha * lambda0))
        }
        (DomainSpec::Disk { radius }, BranchLabel::Disk { m }) => {
            Ok(-radius * radial_bulk_norm(2, *m, radius * radius * lambda0)?)
        }
        (DomainSpec::Ball { dim, radius }, BranchLabel::Ball { m, .. }) => {
            Ok(-radius * radial_bulk_norm(*dim, *m, radius * radius * lambda0)?)
        }
        (DomainSpec::Cuboid { half_widths }, BranchLabel::Cuboid { .. }) => {
            let sides = cuboid::sides(half_widths);
            let pieces = cuboid::pieces_of(label)?;
            let sigma = cuboid::branch_value(&sides, &pieces, lambda0)?;
            Ok(1.0 / cuboid::g_derivative(&sides, &pieces, sigma)?)
        }
        _ => Err(DtnError::Capability(
            "branch derivatives are available for canonical domains only".into(),
        )),
    }
}

/// `d²σ/dΛ²` at `Λ_0` from the resolvent series, truncated after `truncation`
/// Dirichlet terms per series.
///
/// On disks and balls only the Dirichlet modes of the same angular harmonic
/// couple, with `⟨U, φ_n⟩² = 2 j_n² / (j_n² - Λ_0)²`, and the sum over other
/// DtN eigenfunctions vanishes. On the interval the analogous series runs over
/// one parity. On cuboids the value follows from the separated equation
/// `g(σ) = Λ` through `σ'' = -g''/g'³` with per-axis interval series.
pub fn branch_second_derivative(
    domain: &DomainSpec,
    label: &BranchLabel,
    lambda0: f64,
    truncation: usize,
) -> Result<SeriesValue> {
    if truncation < 50 {
        return Err(DtnError::Input(format!("truncation must be at least 50, got {truncation}")));
    }
    check_in_interval(domain, label, lambda0)?;
    match (domain, label) {
        (DomainSpec::Interval { alpha }, BranchLabel::Interval { parity }) => {
            let s = interval_f_second(*parity, alpha * alpha * lambda0, truncation);
            let a3 = alpha.powi(3);
            Ok(SeriesValue { value: a3 * s.value, tail_estimate: a3 * s.tail_estimate })
        }
        (DomainSpec::Disk { radius }, BranchLabel::Disk { m }) => radial_second(2, *m, *radius, lambda0, truncation),
        (DomainSpec::Ball { dim, radius }, BranchLabel::Ball { m, .. }) => {
            radial_second(*dim, *m, *radius, lambda0, truncation)
        }
        (DomainSpec::Cuboid { half_widths }, BranchLabel::Cuboid { .. }) => {
            let sides = cuboid::sides(half_widths);
            let pieces = cuboid::pieces_of(label)?;
            let sigma = cuboid::branch_value(&sides, &pieces, lambda0)?;
            let g1 = cuboid::g_derivative(&sides, &pieces, sigma)?;
            let (mut g2, mut tail) = (0.0, 0.0);
            for (&l, &n) in sides.iter().zip(&pieces) {
                let (p, _) = canonical::interval::piece_parity(n);
                let x = cuboid::axis_lambda(l, n, sigma)? * l * l;
                let f1 = canonical::f_derivative(p, x);
                let f2 = interval_f_second(p, x, truncation);
                g2 -= f2.value / f1.powi(3);
                tail += f2.tail_estimate / f1.abs().powi(3);
            }
            let scale = g1.abs().powi(3);
            Ok(SeriesValue { value: -g2 / g1.powi(3), tail_estimate: tail / scale })
        }
        _ => Err(DtnError::Capability(
            "branch derivatives are available for canonical domains only".into(),
        )),
    }
}

fn radial_second(dim: u32, m: u32, radius: f64, lambda0: f64, terms: usize) -> Result<SeriesValue> {
    let x = radius * radius * lambda0;
    let nu = radial::shift(dim) + f64::from(m);
    let zeros = bessel_j_zeros(nu, terms + 1)?;
    let value = -4.0 * compensated_sum(zeros[..terms].iter().map(|j| {
        let j2 = j * j;
        j2 / (j2 - x).powi(3)
    }));
    // zeros beyond the last are spaced by about π: Σ 4/j⁴ ≈ 4 / (3 π j_N³)
    let jn = zeros[terms];
    let tail = 4.0 / (3.0 * std::f64::consts::PI * jn.powi(3)) * (jn * jn / (jn * jn - x.max(0.0))).powi(3);
    let r3 = radius.powi(3);
    Ok(SeriesValue { value: r3 * value, tail_estimate: r3 * tail })
}

/// First and second derivatives together.
pub fn branch_derivatives(domain: &DomainSpec, label: &BranchLabel, lambda0: f64) -> Result<BranchDerivatives> {
    Ok(BranchDerivatives {
        lambda0,
        first: branch_first_derivative(domain, label, lambda0)?,
        second: Some(branch_second_derivative(domain, label, lambda0, 400)?.value),
        method: DerivativeMethod::Analytic,
    })
}

/// Central differences of the branch: `(σ(Λ+h) - σ(Λ-h)) / 2h` and
/// `(σ(Λ+h) - 2σ(Λ) + σ(Λ-h)) / h²`.
pub fn branch_finite_differences(
    domain: &DomainSpec,
    label: &BranchLabel,
    lambda0: f64,
    h: f64,
) -> Result<BranchDerivatives> {
    let v = |x| canonical::branch_value(domain, label, x);
    let (p, c, m) = (v(lambda0 + h)?, v(lambda0)?, v(lambda0 - h)?);
    Ok(BranchDerivatives {
        lambda0,
        first: (p - m) / (2.0 * h),
        second: Some((p - 2.0 * c + m) / (h * h)),
        method: DerivativeMethod::FiniteDifference,
    })
}

/// Sample points of the small-Λ fit.
pub const SMALL_LAMBDA_GRID: [f64; 6] = [-4e-3, -2e-3, -1e-3, 1e-3, 2e-3, 4e-3];

/// Least-squares fit `σ_1(Λ) ≈ c1 Λ + c2 Λ²` on [`SMALL_LAMBDA_GRID`].
pub fn small_lambda_fit(domain: &DomainSpec) -> Result<(f64, f64)> {
    let (mut s11, mut s12, mut s22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &x in &SMALL_LAMBDA_GRID {
        let s = eigenvalues_at(domain, x, 1)?.values()[0];
        s11 += x * x;
        s12 += x * x * x;
        s22 += x * x * x * x;
        b1 += x * s;
        b2 += x * x * s;
    }
    let det = s11 * s22 - s12 * s12;
    Ok(((b1 * s22 - b2 * s12) / det, (s11 * b2 - s12 * b1) / det))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let v = compensated_sum([1.0, 1e-16, 1e-16, -1.0]);
        assert!((v - 2e-16).abs() < 1e-30);
    }

    #[test]
    fn values_at_zero() {
        let d = DomainSpec::unit_disk();
        let l = BranchLabel::Disk { m: 0 };
        assert!((branch_first_derivative(&d, &l, 0.0).unwrap() + 0.5).abs() < 1e-15);
        // Σ j_{0,n}^{-4} = 1/32
        let s = branch_second_derivative(&d, &l, 0.0, 2000).unwrap();
        assert!((s.value + 0.125).abs() < 1e-9, "{s:?}");
        let i = DomainSpec::interval(1.0);
        let l = BranchLabel::Interval { parity: Parity::S };
        assert!((branch_first_derivative(&i, &l, 0.0).unwrap() + 0.5).abs() < 1e-15);
        assert!((branch_second_derivative(&i, &l, 0.0, 100).unwrap().value + 1.0 / 12.0).abs() < 1e-8);
    }
}
