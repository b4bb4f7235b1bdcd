//! Closed-form and semi-explicit DtN spectra of intervals, disks, balls and
//! cuboids.

pub mod cuboid;
pub mod interval;
mod laplace;
pub mod radial;

pub use cuboid::cuboid_spectrum;
pub use interval::{f_derivative, f_inverse, interval_branch, interval_branch_id};
pub use laplace::{laplace_count, laplace_spectrum};
pub use radial::{ball_branch, disk_branch, mode_multiplicity, radial_branch};

use crate::domain::{BoundaryCondition, BranchId, BranchLabel, DomainSpec, Parity, Spectrum, SpectrumEntry};
use crate::error::{DtnError, Result};
use interval::pole_tol;

/// Relative slack used when counting eigenvalues `<= S`.
pub const COUNT_TOL: f64 = 1e-10;

fn count_slack(s: f64) -> f64 {
    COUNT_TOL * s.abs().max(1.0)
}

fn unsupported() -> DtnError {
    DtnError::Capability("closed forms exist only for interval, disk, ball and cuboid domains".into())
}

/// Dirichlet eigenvalue of the domain within the pole tolerance of `Λ`, if any.
pub fn dirichlet_pole(domain: &DomainSpec, lambda: f64) -> Result<Option<f64>> {
    if lambda <= 0.0 {
        return Ok(None);
    }
    let probe = lambda + 2.0 * pole_tol(lambda);
    Ok(laplace_spectrum(domain, BoundaryCondition::Dirichlet, probe)?
        .into_iter()
        .map(|(v, _)| v)
        .find(|&v| (lambda - v).abs() <= pole_tol(v)))
}

fn check_pole(domain: &DomainSpec, lambda: f64) -> Result<()> {
    if !lambda.is_finite() {
        return Err(DtnError::Input(format!("Λ must be finite, got {lambda}")));
    }
    match dirichlet_pole(domain, lambda)? {
        Some(pole) => Err(DtnError::Pole { lambda, pole }),
        None => Ok(()),
    }
}

/// Value at `Λ` of the branch with the given label.
pub fn branch_value(domain: &DomainSpec, label: &BranchLabel, lambda: f64) -> Result<f64> {
    domain.validate()?;
    match (domain, label) {
        (DomainSpec::Interval { alpha }, BranchLabel::Interval { parity }) => {
            interval_branch(*parity, *alpha, lambda)
        }
        (DomainSpec::Disk { radius }, BranchLabel::Disk { m }) => scaled_radial(2, *m, *radius, lambda),
        (DomainSpec::Ball { dim, radius }, BranchLabel::Ball { dim: d, m }) if d == dim => {
            scaled_radial(*dim, *m, *radius, lambda)
        }
        (DomainSpec::Cuboid { half_widths }, BranchLabel::Cuboid { .. }) => {
            let sides = cuboid::sides(half_widths);
            let pieces = cuboid::pieces_of(label)?;
            if pieces.len() != sides.len() {
                return Err(DtnError::Domain("branch label dimension does not match the cuboid".into()));
            }
            cuboid::branch_value(&sides, &pieces, lambda)
        }
        (DomainSpec::Curve { .. }, _) => Err(unsupported()),
        _ => Err(DtnError::Domain(format!("branch {label:?} does not belong to this domain"))),
    }
}

/// Branch identifier (label plus continuity interval containing `Λ`).
pub fn branch_id(domain: &DomainSpec, label: &BranchLabel, lambda: f64) -> Result<BranchId> {
    domain.validate()?;
    match (domain, label) {
        (DomainSpec::Interval { alpha }, BranchLabel::Interval { parity }) => {
            Ok(interval_branch_id(*parity, *alpha, lambda))
        }
        (DomainSpec::Disk { radius }, BranchLabel::Disk { m }) => radial::radial_branch_id(2, *m, *radius, lambda),
        (DomainSpec::Ball { dim, radius }, BranchLabel::Ball { dim: d, m }) if d == dim => {
            radial::radial_branch_id(*dim, *m, *radius, lambda)
        }
        (DomainSpec::Cuboid { half_widths }, BranchLabel::Cuboid { .. }) => cuboid::branch_id(half_widths, label),
        (DomainSpec::Curve { .. }, _) => Err(unsupported()),
        _ => Err(DtnError::Domain(format!("branch {label:?} does not belong to this domain"))),
    }
}

fn scaled_radial(dim: u32, m: u32, radius: f64, lambda: f64) -> Result<f64> {
    let r2 = radius * radius;
    radial_branch(dim, m, r2 * lambda)
        .map(|v| v / radius)
        .map_err(|e| match e {
            DtnError::Pole { pole, .. } => DtnError::Pole { lambda, pole: pole / r2 },
            other => other,
        })
}

fn radial_entry(dim: u32, m: u32, radius: f64, lambda: f64, sigma: f64) -> Result<SpectrumEntry> {
    Ok(SpectrumEntry {
        sigma,
        multiplicity: mode_multiplicity(dim, m),
        branch: radial::radial_branch_id(dim, m, radius, lambda)?,
    })
}

fn radial_params(domain: &DomainSpec) -> Option<(u32, f64)> {
    match domain {
        DomainSpec::Disk { radius } => Some((2, *radius)),
        DomainSpec::Ball { dim, radius } => Some((*dim, *radius)),
        _ => None,
    }
}

/// First mode `m` with `x < j_{ν(m),1}²`. From there on the branches at `x`
/// increase strictly with `m`.
fn radial_first_monotone_mode(dim: u32, x: f64) -> Result<u32> {
    let mut m = 0;
    while x >= radial::first_pole(dim, m)? {
        m += 1;
    }
    Ok(m)
}

fn interval_entries(alpha: f64, lambda: f64) -> Result<Vec<SpectrumEntry>> {
    [Parity::S, Parity::A]
        .into_iter()
        .map(|p| {
            Ok(SpectrumEntry {
                sigma: interval_branch(p, alpha, lambda)?,
                multiplicity: 1,
                branch: interval_branch_id(p, alpha, lambda),
            })
        })
        .collect()
}

/// Every eigenvalue `<= s` (up to the counting slack) at `Λ`, grouped by branch.
pub fn spectrum_at_most(domain: &DomainSpec, lambda: f64, s: f64) -> Result<Spectrum> {
    domain.validate()?;
    check_pole(domain, lambda)?;
    let limit = s + count_slack(s);
    let entries = match domain {
        DomainSpec::Interval { alpha } => interval_entries(*alpha, lambda)?
            .into_iter()
            .filter(|e| e.sigma <= limit)
            .collect(),
        DomainSpec::Disk { .. } | DomainSpec::Ball { .. } => {
            let (dim, radius) = radial_params(domain).expect("radial domain");
            let m0 = radial_first_monotone_mode(dim, radius * radius * lambda)?;
            let mut out = Vec::new();
            for m in 0.. {
                let sigma = scaled_radial(dim, m, radius, lambda)?;
                if sigma <= limit {
                    out.push(radial_entry(dim, m, radius, lambda, sigma)?);
                } else if m >= m0 {
                    break;
                }
            }
            out
        }
        DomainSpec::Cuboid { half_widths } => return cuboid_spectrum(half_widths, lambda, limit),
        DomainSpec::Curve { .. } => return Err(unsupported()),
    };
    Ok(Spectrum::new(lambda, entries))
}

/// The `k_max` smallest DtN eigenvalues at `Λ` (with multiplicity), merged
/// into one sorted spectrum. Entries are whole branches, so the last entry may
/// carry more multiplicity than needed to reach `k_max`.
pub fn eigenvalues_at(domain: &DomainSpec, lambda: f64, k_max: usize) -> Result<Spectrum> {
    domain.validate()?;
    check_pole(domain, lambda)?;
    if k_max == 0 {
        return Ok(Spectrum::new(lambda, Vec::new()));
    }
    let mut spec = match domain {
        DomainSpec::Interval { alpha } => Spectrum::new(lambda, interval_entries(*alpha, lambda)?),
        DomainSpec::Disk { .. } | DomainSpec::Ball { .. } => {
            let (dim, radius) = radial_params(domain).expect("radial domain");
            let m0 = radial_first_monotone_mode(dim, radius * radius * lambda)?;
            let mut entries: Vec<SpectrumEntry> = Vec::new();
            let mut extra_done = false;
            for m in 0.. {
                let sigma = scaled_radial(dim, m, radius, lambda)?;
                entries.push(radial_entry(dim, m, radius, lambda, sigma)?);
                if m < m0 {
                    continue;
                }
                let kth = kth_value(&entries, k_max);
                if kth.is_some_and(|v| sigma > v) {
                    // one more mode as a safety margin
                    if extra_done {
                        break;
                    }
                    extra_done = true;
                }
            }
            Spectrum::new(lambda, entries)
        }
        DomainSpec::Cuboid { half_widths } => {
            let mut s: f64 = 1.0;
            loop {
                let n = cuboid::count_below(half_widths, lambda, s + count_slack(s))?;
                if n >= k_max {
                    break;
                }
                s = 2.0 * s.abs() + 1.0;
            }
            cuboid_spectrum(half_widths, lambda, s + count_slack(s))?
        }
        DomainSpec::Curve { .. } => return Err(unsupported()),
    };
    spec.truncate_to(k_max);
    Ok(spec)
}

fn kth_value(entries: &[SpectrumEntry], k: usize) -> Option<f64> {
    let mut v: Vec<(f64, usize)> = entries.iter().map(|e| (e.sigma, e.multiplicity)).collect();
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut seen = 0;
    for (s, m) in v {
        seen += m;
        if seen >= k {
            return Some(s);
        }
    }
    None
}

/// `#{k : σ_k^(Λ) <= S}` with multiplicity.
pub fn count_at_most(domain: &DomainSpec, lambda: f64, s: f64) -> Result<usize> {
    if let DomainSpec::Cuboid { half_widths } = domain {
        domain.validate()?;
        check_pole(domain, lambda)?;
        return cuboid::count_below(half_widths, lambda, s + count_slack(s));
    }
    Ok(spectrum_at_most(domain, lambda, s)?.total_multiplicity())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_at_zero() {
        let s = eigenvalues_at(&DomainSpec::unit_disk(), 0.0, 5).unwrap();
        assert_eq!(s.first(5), vec![0.0, 1.0, 1.0, 2.0, 2.0]);
    }

    #[test]
    fn interval_at_zero() {
        let s = eigenvalues_at(&DomainSpec::interval(1.0), 0.0, 5).unwrap();
        assert_eq!(s.values(), vec![0.0, 2.0]);
    }

    #[test]
    fn zero_k_is_empty() {
        assert!(eigenvalues_at(&DomainSpec::unit_disk(), 1.0, 0).unwrap().entries.is_empty());
    }

    #[test]
    fn disk_pole() {
        let j = crate::specfun::bessel_j_zero(0, 1).unwrap();
        assert!(matches!(
            eigenvalues_at(&DomainSpec::unit_disk(), j * j, 3),
            Err(DtnError::Pole { .. })
        ));
    }

    #[test]
    fn radius_scaling_of_poles() {
        let d = DomainSpec::Disk { radius: 2.0 };
        let j = crate::specfun::bessel_j_zero(1, 1).unwrap();
        match branch_value(&d, &BranchLabel::Disk { m: 1 }, j * j / 4.0) {
            Err(DtnError::Pole { pole, .. }) => assert!((pole - j * j / 4.0).abs() < 1e-12),
            other => panic!("expected pole, got {other:?}"),
        }
    }
}
