//! Counting functions, the Neumann/Dirichlet counting identity and Robin
//! spectra obtained from DtN branches by Robin–DtN duality.

use serde::{Deserialize, Serialize};

use crate::canonical::{self, cuboid, interval, laplace_count, radial};
use crate::domain::{BoundaryCondition, DomainSpec, Parity};
use crate::error::{DtnError, Result};
use crate::roots::brent;
use crate::specfun::{bessel_j_zeros, bessel_j_zeros_below};

/// `#{k : σ_k^(Λ) <= sigma}` counted with multiplicity.
pub fn counting_function(domain: &DomainSpec, lambda: f64, sigma: f64) -> Result<usize> {
    canonical::count_at_most(domain, lambda, sigma)
}

/// The three sides of the identity
/// `#{σ_k^(Λ) <= 0} = #{λ^Neu_k <= Λ} - #{λ^Dir_k < Λ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountingReport {
    pub lambda: f64,
    pub dtn_nonpositive: usize,
    pub neumann_count: usize,
    pub dirichlet_count: usize,
}

impl CountingReport {
    pub fn identity_holds(&self) -> bool {
        self.dtn_nonpositive + self.dirichlet_count == self.neumann_count
    }
}

/// Computes the three counts independently: the DtN side by branch
/// enumeration, the Laplace sides from the Dirichlet and Neumann spectra.
pub fn nonpositive_count_check(domain: &DomainSpec, lambda: f64) -> Result<CountingReport> {
    let dtn_nonpositive = counting_function(domain, lambda, 0.0)?;
    Ok(CountingReport {
        lambda,
        dtn_nonpositive,
        neumann_count: laplace_count(domain, BoundaryCondition::Neumann, lambda, false)?,
        dirichlet_count: laplace_count(domain, BoundaryCondition::Dirichlet, lambda, true)?,
    })
}

/// Root of a decreasing branch `value(Λ) = target` on `(lo, hi)`, where the
/// branch tends to `+∞` at `lo` (or at `-∞` when `lo` is `None`) and to `-∞`
/// at `hi`.
fn solve_piece<F: Fn(f64) -> Result<f64>>(value: F, lo: Option<f64>, hi: f64, target: f64) -> Result<f64> {
    let h = |x: f64| value(x).map(|v| v - target);
    let a = match lo {
        Some(lo) => {
            let w = hi - lo;
            let mut d = 1e-3;
            loop {
                let a = lo + d * w;
                match h(a) {
                    Ok(v) if v > 0.0 => break a,
                    _ if d < 1e-15 => {
                        return Err(DtnError::Convergence(format!("no Robin bracket above {lo}")));
                    }
                    _ => d *= 1e-2,
                }
            }
        }
        None => {
            let mut a = hi.min(0.0) - 1.0;
            while h(a)? <= 0.0 {
                a = 4.0 * a - 1.0;
                if a < -1e300 {
                    return Err(DtnError::Convergence("no Robin bracket towards -∞".into()));
                }
            }
            a
        }
    };
    let w = hi - a;
    let mut d = 1e-3;
    let b = loop {
        let b = hi - d * w;
        match h(b) {
            Ok(v) if v < 0.0 => break b,
            _ if d < 1e-15 => return Err(DtnError::Convergence(format!("no Robin bracket below {hi}"))),
            _ => d *= 1e-2,
        }
    };
    brent(|x| h(x).unwrap_or(f64::NAN), a, b, 1e-15 * a.abs().max(b.abs()).max(1.0))
}

/// Robin eigenvalues `<= t` with multiplicity (unsorted).
fn robin_below(domain: &DomainSpec, gamma: f64, t: f64) -> Result<Vec<f64>> {
    match domain {
        DomainSpec::Interval { alpha } => {
            let mut out = Vec::new();
            for p in [Parity::S, Parity::A] {
                for m in 1.. {
                    let x = interval::f_inverse(p, m, -gamma * alpha)? / (alpha * alpha);
                    if x > t {
                        break;
                    }
                    out.push(x);
                }
            }
            Ok(out)
        }
        DomainSpec::Disk { radius } => radial_robin_below(2, *radius, gamma, t),
        DomainSpec::Ball { dim, radius } => radial_robin_below(*dim, *radius, gamma, t),
        DomainSpec::Cuboid { half_widths } => Ok(cuboid::robin_below(&cuboid::sides(half_widths), gamma, t)?
            .into_iter()
            .map(|(_, v)| v)
            .collect()),
        DomainSpec::Curve { .. } => Err(DtnError::Capability(
            "Robin spectra are only available for interval, disk, ball and cuboid".into(),
        )),
    }
}

/// Per mode `m`, one root on every continuity piece `(j_{ν,k-1}², j_{ν,k}²)`.
/// First-piece roots increase with `m`, so modes stop at the first one whose
/// first root exceeds `t`.
fn radial_robin_below(dim: u32, radius: f64, gamma: f64, t: f64) -> Result<Vec<f64>> {
    let r2 = radius * radius;
    let (x_max, target) = (t * r2, -gamma * radius);
    let mut out = Vec::new();
    for m in 0.. {
        let nu = radial::shift(dim) + f64::from(m);
        let mult = radial::mode_multiplicity(dim, m);
        let zeros = bessel_j_zeros_below(nu, x_max.max(0.0).sqrt())?;
        let next = bessel_j_zeros(nu, zeros.len() + 1)?[zeros.len()].powi(2);
        let mut ends: Vec<f64> = zeros.iter().map(|z| z * z).collect();
        ends.push(next);
        let mut lo = None;
        let mut first_root = None;
        for &hi in &ends {
            if lo.is_some_and(|l| l >= x_max) {
                break;
            }
            let x = solve_piece(|x| radial::radial_branch(dim, m, x), lo, hi, target)?;
            first_root.get_or_insert(x);
            if x <= x_max {
                out.extend(std::iter::repeat(x / r2).take(mult));
            }
            lo = Some(hi);
        }
        if first_root.is_none_or(|x| x > x_max) {
            break;
        }
    }
    Ok(out)
}

/// The first `count` Robin eigenvalues for `∂_n u + γ u = 0`, sorted.
///
/// Each branch decreases from `+∞` to `-∞` on its continuity interval and so
/// contributes exactly one root there. The search level `t` doubles until at
/// least `count` roots lie below it; every root `<= t` is found, so the
/// smallest `count` are certified.
pub fn robin_spectrum(domain: &DomainSpec, gamma: f64, count: usize) -> Result<Vec<f64>> {
    domain.validate()?;
    if !gamma.is_finite() {
        return Err(DtnError::Input(format!("γ must be finite, got {gamma}")));
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let mut t = 1.0f64;
    loop {
        let mut v = robin_below(domain, gamma, t)?;
        if v.len() >= count {
            v.sort_by(f64::total_cmp);
            v.truncate(count);
            return Ok(v);
        }
        if t > 1e12 {
            return Err(DtnError::Convergence(format!("fewer than {count} Robin eigenvalues below {t}")));
        }
        t = 2.0 * t.abs() + 1.0;
    }
}

/// Result of `σ = σ_k^(Λ)` followed by the Robin problem with `γ = -σ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityRoundTrip {
    pub sigma: f64,
    /// One-based index of `Λ` in the Robin spectrum, `k + #{λ^Dir < Λ}`.
    pub robin_index: usize,
    pub recovered_lambda: f64,
}

/// Computes `σ_k^(Λ)` (one-based `k`) and recovers `Λ` as the Robin eigenvalue
/// with index `k + #{λ^Dir < Λ}` for `γ = -σ`.
pub fn duality_roundtrip(domain: &DomainSpec, lambda: f64, k: usize) -> Result<DualityRoundTrip> {
    if k == 0 {
        return Err(DtnError::Input("eigenvalue index k is one-based".into()));
    }
    let spec = canonical::eigenvalues_at(domain, lambda, k)?;
    let values = spec.values();
    let sigma = *values
        .get(k - 1)
        .ok_or_else(|| DtnError::Input(format!("the DtN spectrum has only {} eigenvalues", values.len())))?;
    let robin_index = k + laplace_count(domain, BoundaryCondition::Dirichlet, lambda, true)?;
    let robin = robin_spectrum(domain, -sigma, robin_index)?;
    Ok(DualityRoundTrip { sigma, robin_index, recovered_lambda: robin[robin_index - 1] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn interval_neumann_limit() {
        let v = robin_spectrum(&DomainSpec::interval(1.0), 0.0, 4).unwrap();
        for (k, x) in v.iter().enumerate() {
            let e = (k as f64 * PI).powi(2);
            assert!((x - e).abs() < 1e-9 * e.max(1.0), "{k}: {x}");
        }
    }

    #[test]
    fn disk_counting_example() {
        let r = nonpositive_count_check(&DomainSpec::unit_disk(), 10.0).unwrap();
        assert_eq!((r.dtn_nonpositive, r.neumann_count, r.dirichlet_count), (4, 5, 1));
        assert!(r.identity_holds());
    }

    #[test]
    fn disk_round_trip() {
        let r = duality_roundtrip(&DomainSpec::unit_disk(), -1.0, 1).unwrap();
        assert_eq!(r.robin_index, 1);
        assert!((r.recovered_lambda + 1.0).abs() < 1e-10);
    }
}
