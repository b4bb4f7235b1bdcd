//! Disk and ball branches.
//!
//! For the unit ball in `R^d` (the disk is `d = 2`) the angular mode `m`
//! contributes `σ = z F_ν'(z)/F_ν(z) - c` with `c = d/2 - 1`, `ν = c + m`,
//! `F = I` at `z = √(-Λ)` and `F = J` at `z = √Λ`. Written through the
//! neighbouring order this is `m + z I_{ν+1}/I_ν` and `m - z J_{ν+1}/J_ν`,
//! which keeps full relative accuracy as `Λ -> 0`.

use crate::canonical::interval::pole_tol;
use crate::domain::{BranchId, BranchLabel};
use crate::error::{DtnError, Result};
use crate::specfun::{bessel_j_zeros_bracketing, i_ratio, j_ratio};

/// `c = d/2 - 1`.
pub fn shift(dim: u32) -> f64 {
    0.5 * f64::from(dim) - 1.0
}

/// Multiplicity of the angular mode `m` in dimension `dim`:
/// `C(d+m-1, d-1) - C(d+m-3, d-1)`.
pub fn mode_multiplicity(dim: u32, m: u32) -> usize {
    let binom = |n: i64, k: i64| -> i64 {
        if n < k || n < 0 {
            return 0;
        }
        let mut r: i64 = 1;
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    };
    let d = i64::from(dim);
    let m = i64::from(m);
    (binom(d + m - 1, d - 1) - binom(d + m - 3, d - 1)) as usize
}

/// Neighbouring zeros of `J_ν` around `√Λ` (squared), and the pole if `Λ` sits
/// on one of them. Returns `(lower, upper)` continuity ends for the unit ball.
fn continuity(nu: f64, lambda: f64) -> Result<(Option<f64>, f64, Option<f64>)> {
    let z = lambda.max(0.0).sqrt();
    let (below, next) = bessel_j_zeros_bracketing(nu, z)?;
    let upper = next * next;
    let lower = below.last().map(|j| j * j);
    let pole = [lower, Some(upper)]
        .into_iter()
        .flatten()
        .find(|&p| (lambda - p).abs() <= pole_tol(p));
    Ok((lower, upper, pole))
}

/// Value of mode `m` for the unit ball in dimension `dim` (no pole checks).
fn value_unchecked(dim: u32, m: u32, lambda: f64) -> Result<f64> {
    let nu = shift(dim) + f64::from(m);
    let mf = f64::from(m);
    if lambda < 0.0 {
        let z = (-lambda).sqrt();
        Ok(mf + z * i_ratio(nu, z)?)
    } else if lambda == 0.0 {
        Ok(mf)
    } else {
        let z = lambda.sqrt();
        Ok(mf - z * j_ratio(nu, z)?)
    }
}

/// Mode `m` of the unit ball in dimension `dim` (`dim = 2` is the disk).
pub fn radial_branch(dim: u32, m: u32, lambda: f64) -> Result<f64> {
    if !lambda.is_finite() {
        return Err(DtnError::Domain(format!("Λ must be finite, got {lambda}")));
    }
    if lambda > 0.0 {
        let nu = shift(dim) + f64::from(m);
        if let (_, _, Some(pole)) = continuity(nu, lambda)? {
            return Err(DtnError::Pole { lambda, pole });
        }
    }
    value_unchecked(dim, m, lambda)
}

/// `σ_(m)^(Λ)` for the unit disk.
pub fn disk_branch(m: u32, lambda: f64) -> Result<f64> {
    radial_branch(2, m, lambda)
}

/// `σ_(d,m)^(Λ)` for the unit ball in `R^dim`, `dim >= 3`.
pub fn ball_branch(dim: u32, m: u32, lambda: f64) -> Result<f64> {
    if dim < 3 {
        return Err(DtnError::Domain(format!("ball dimension must be >= 3, got {dim}")));
    }
    radial_branch(dim, m, lambda)
}

/// Label for mode `m` in dimension `dim`.
pub fn radial_label(dim: u32, m: u32) -> BranchLabel {
    if dim == 2 {
        BranchLabel::Disk { m }
    } else {
        BranchLabel::Ball { dim, m }
    }
}

/// Branch identifier of mode `m` at `Λ` for the ball of the given radius.
pub fn radial_branch_id(dim: u32, m: u32, radius: f64, lambda: f64) -> Result<BranchId> {
    let r2 = radius * radius;
    let nu = shift(dim) + f64::from(m);
    let (lo, hi, _) = continuity(nu, r2 * lambda)?;
    Ok(BranchId {
        label: radial_label(dim, m),
        continuity: (lo.map(|v| v / r2), Some(hi / r2)),
    })
}

/// First Dirichlet eigenvalue `j_{ν,1}²` of the mode (unit radius).
pub fn first_pole(dim: u32, m: u32) -> Result<f64> {
    let nu = shift(dim) + f64::from(m);
    let (_, next) = bessel_j_zeros_bracketing(nu, 0.0)?;
    Ok(next * next)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicities() {
        for m in 0..6 {
            assert_eq!(mode_multiplicity(3, m), 2 * m as usize + 1);
            assert_eq!(mode_multiplicity(2, m), if m == 0 { 1 } else { 2 });
        }
        // d = 4: (m+1)²
        assert_eq!(mode_multiplicity(4, 2), 9);
    }

    #[test]
    fn values_at_zero_are_mode_numbers() {
        for m in 0..=10 {
            assert_eq!(disk_branch(m, 0.0).unwrap(), f64::from(m));
            assert_eq!(ball_branch(3, m, 0.0).unwrap(), f64::from(m));
        }
    }

    #[test]
    fn small_lambda_is_accurate() {
        // σ_0 = z I_1(z)/I_0(z) ≈ z²/2 - z⁴/16 for the disk
        let lam = -1e-8;
        let v = disk_branch(0, lam).unwrap();
        assert!((v - (-lam / 2.0 - lam * lam / 16.0)).abs() < 1e-22);
    }

    #[test]
    fn poles() {
        let j11 = crate::specfun::bessel_j_zero(1, 1).unwrap();
        let e = disk_branch(1, j11 * j11).unwrap_err();
        assert!(matches!(e, DtnError::Pole { .. }));
        assert!(disk_branch(0, j11 * j11).is_ok());
    }
}
