//! Zeros of `J_ν`, `J_ν'` and of the Dini combination `x J_ν'(x) - c J_ν(x)`.
//!
//! Zeros are located one after another: the sign of `J_ν` is scanned from a
//! point known to lie below the next zero with a step shorter than the minimal
//! zero spacing, and the bracket is then refined by Brent's method followed by
//! a Newton polish. Dini zeros interlace with the zeros of `J_ν`, which
//! supplies their brackets directly.

use std::f64::consts::PI;

use super::bessel::jy;
use crate::error::{DtnError, Result};
use crate::roots::brent;

/// Consecutive positive zeros of `J_ν` are at least this far apart (the
/// smallest gap, `j_{0,2} - j_{0,1} ≈ 3.1153`, occurs at `ν = 0`).
const MIN_SPACING: f64 = 3.0;
const SCAN_STEP: f64 = 0.75;

fn check_order(nu: f64) -> Result<()> {
    if nu.is_finite() && nu >= 0.0 {
        Ok(())
    } else {
        Err(DtnError::Domain(format!("Bessel order must be finite and >= 0, got {nu}")))
    }
}

/// McMahon's large-`k` expansion of `j_{ν,k}`.
pub fn mcmahon_zero(nu: f64, k: usize) -> f64 {
    let mu = 4.0 * nu * nu;
    let beta = (k as f64 + 0.5 * nu - 0.25) * PI;
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8.powi(5))
}

fn j_value(nu: f64, x: f64) -> f64 {
    jy(nu, x).map(|v| v.j).unwrap_or(f64::NAN)
}

fn polish(nu: f64, x: f64) -> f64 {
    match jy(nu, x) {
        Ok(v) if v.jp != 0.0 => {
            let step = v.j / v.jp;
            if step.abs() < 1e-8 * x {
                x - step
            } else {
                x
            }
        }
        _ => x,
    }
}

/// The zero of `J_ν` following `from` (which must lie strictly before it and
/// at least past the previous zero).
fn next_zero(nu: f64, from: f64) -> Result<f64> {
    let mut a = from;
    let mut fa = j_value(nu, a);
    for _ in 0..100_000 {
        let b = a + SCAN_STEP;
        let fb = j_value(nu, b);
        if fa.is_nan() || fb.is_nan() {
            return Err(DtnError::Convergence(format!("J_{nu} not evaluable near {b}")));
        }
        if fa == 0.0 {
            return Ok(a);
        }
        if fa.signum() != fb.signum() {
            let root = brent(|x| j_value(nu, x), a, b, 4.0 * f64::EPSILON * b)?;
            return Ok(polish(nu, root));
        }
        a = b;
        fa = fb;
    }
    Err(DtnError::Convergence(format!("no zero of J_{nu} found after {from}")))
}

/// The first `count` positive zeros of `J_ν`, ascending.
pub fn bessel_j_zeros(nu: f64, count: usize) -> Result<Vec<f64>> {
    check_order(nu)?;
    let mut out = Vec::with_capacity(count);
    // J_ν > 0 on (0, j_{ν,1}) and j_{ν,1} > ν + 1.8 for every ν >= 0
    let mut start = (nu + 0.5).max(0.5);
    while out.len() < count {
        let z = next_zero(nu, start)?;
        out.push(z);
        start = z + MIN_SPACING;
    }
    Ok(out)
}

/// All positive zeros of `J_ν` that are `<= xmax`, ascending.
pub fn bessel_j_zeros_below(nu: f64, xmax: f64) -> Result<Vec<f64>> {
    Ok(bessel_j_zeros_bracketing(nu, xmax)?.0)
}

/// The zeros of `J_ν` that are `<= x`, together with the first zero `> x`.
pub fn bessel_j_zeros_bracketing(nu: f64, x: f64) -> Result<(Vec<f64>, f64)> {
    check_order(nu)?;
    let mut out = Vec::new();
    let mut start = (nu + 0.5).max(0.5);
    loop {
        let z = next_zero(nu, start)?;
        if z > x {
            return Ok((out, z));
        }
        out.push(z);
        start = z + MIN_SPACING;
    }
}

/// The `k`-th positive zero `j_{m,k}` of `J_m`.
pub fn bessel_j_zero(m: u32, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(DtnError::Domain("zero index k must be >= 1".into()));
    }
    Ok(*bessel_j_zeros(f64::from(m), k)?.last().expect("k >= 1"))
}

/// The `k`-th positive zero of `x J_ν'(x) - c J_ν(x)`, for `0 <= c <= ν`.
///
/// With `c = 0` these are the zeros of `J_ν'`; with `c = d/2 - 1` and
/// `ν = d/2 - 1 + m` they give the Neumann eigenvalues of the unit `d`-ball.
/// When `ν = c` the trivial zero at the origin is skipped.
pub fn dini_zero(nu: f64, c: f64, k: usize) -> Result<f64> {
    check_order(nu)?;
    if k == 0 {
        return Err(DtnError::Domain("zero index k must be >= 1".into()));
    }
    if !(c >= 0.0 && c <= nu) {
        return Err(DtnError::Domain(format!("Dini constant {c} must lie in [0, {nu}]")));
    }
    let h = |x: f64| jy(nu, x).map(|v| x * v.jp - c * v.j).unwrap_or(f64::NAN);
    let zeros = bessel_j_zeros(nu, k + 1)?;
    let (lo, hi) = if nu - c > 1e-14 {
        if k == 1 {
            // x J'/J stays above c for x < sqrt(ν² - c²)
            ((nu * nu - c * c).sqrt().max(1e-3), zeros[0])
        } else {
            (zeros[k - 2], zeros[k - 1])
        }
    } else {
        (zeros[k - 1], zeros[k])
    };
    brent(h, lo, hi, 4.0 * f64::EPSILON * hi)
}

/// The `k`-th positive zero `j'_{m,k}` of `J_m'` (for `m = 0` the zero at the
/// origin is not counted, so this is `j_{1,k}`).
pub fn bessel_jprime_zero(m: u32, k: usize) -> Result<f64> {
    dini_zero(f64::from(m), 0.0, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mcmahon_is_close_for_large_k() {
        let z = bessel_j_zeros(0.0, 50).unwrap();
        assert!((z[49] - mcmahon_zero(0.0, 50)).abs() < 1e-10);
        let z = bessel_j_zeros(3.0, 40).unwrap();
        assert!((z[39] - mcmahon_zero(3.0, 40)).abs() < 1e-8);
    }

    #[test]
    fn zeros_below_matches_counted_zeros() {
        let below = bessel_j_zeros_below(1.0, 20.0).unwrap();
        let first = bessel_j_zeros(1.0, below.len() + 1).unwrap();
        assert_eq!(&first[..below.len()], &below[..]);
        assert!(first[below.len()] > 20.0);
        assert!(bessel_j_zeros_below(5.0, 2.0).unwrap().is_empty());
    }

    #[test]
    fn invalid_parameters() {
        assert!(bessel_j_zero(0, 0).is_err());
        assert!(dini_zero(1.0, 2.0, 1).is_err());
    }
}
