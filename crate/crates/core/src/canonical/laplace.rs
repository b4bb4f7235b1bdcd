//! Dirichlet and Neumann Laplace eigenvalues of the canonical domains.

use std::f64::consts::PI;

use crate::canonical::cuboid;
use crate::canonical::radial::{mode_multiplicity, shift};
use crate::domain::{BoundaryCondition, DomainSpec};
use crate::error::{DtnError, Result};
use crate::specfun::{bessel_j_zeros_below, dini_zero};

/// All eigenvalues `<= lambda_max` with multiplicities, sorted ascending.
/// Values within `1e-12` relative of each other are merged.
pub fn laplace_spectrum(domain: &DomainSpec, bc: BoundaryCondition, lambda_max: f64) -> Result<Vec<(f64, usize)>> {
    domain.validate()?;
    if lambda_max.is_nan() {
        return Err(DtnError::Input("lambda_max is NaN".into()));
    }
    let neumann = bc == BoundaryCondition::Neumann;
    let out = match domain {
        DomainSpec::Interval { alpha } => {
            let mut v = Vec::new();
            let mut k = if neumann { 0 } else { 1 };
            loop {
                let e = (f64::from(k) * PI / alpha).powi(2);
                if e > lambda_max {
                    break;
                }
                v.push((e, 1));
                k += 1;
            }
            v
        }
        DomainSpec::Disk { radius } => radial(2, *radius, neumann, lambda_max)?,
        DomainSpec::Ball { dim, radius } => radial(*dim, *radius, neumann, lambda_max)?,
        DomainSpec::Cuboid { half_widths } => {
            cuboid::laplace_eigenvalues(&cuboid::sides(half_widths), neumann, lambda_max)
        }
        DomainSpec::Curve { .. } => {
            return Err(DtnError::Capability(
                "Laplace spectra are only available for interval, disk, ball and cuboid".into(),
            ))
        }
    };
    Ok(out)
}

fn radial(dim: u32, radius: f64, neumann: bool, lambda_max: f64) -> Result<Vec<(f64, usize)>> {
    let r2 = radius * radius;
    let mut values: Vec<(f64, usize)> = Vec::new();
    if lambda_max < 0.0 {
        return Ok(values);
    }
    let zmax = (lambda_max * r2).sqrt();
    if neumann {
        values.push((0.0, 1));
    }
    let c = shift(dim);
    for m in 0.. {
        let nu = c + f64::from(m);
        let mult = mode_multiplicity(dim, m);
        let before = values.len();
        if neumann {
            for k in 1.. {
                let z = dini_zero(nu, c, k)?;
                if z > zmax {
                    break;
                }
                values.push((z * z / r2, mult));
            }
        } else {
            for z in bessel_j_zeros_below(nu, zmax)? {
                values.push((z * z / r2, mult));
            }
        }
        // the first zero increases with the order
        if values.len() == before && nu > zmax {
            break;
        }
    }
    values.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(merge_weighted(values))
}

pub(crate) fn merge_weighted(values: Vec<(f64, usize)>) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for (v, m) in values {
        match out.last_mut() {
            Some((w, c)) if (v - *w).abs() <= 1e-12 * w.abs().max(1.0) => *c += m,
            _ => out.push((v, m)),
        }
    }
    out
}

/// Number of eigenvalues `< lambda` (`strict`) or `<= lambda`, with multiplicity.
pub fn laplace_count(domain: &DomainSpec, bc: BoundaryCondition, lambda: f64, strict: bool) -> Result<usize> {
    Ok(laplace_spectrum(domain, bc, lambda)?
        .into_iter()
        .filter(|&(v, _)| if strict { v < lambda } else { v <= lambda })
        .map(|(_, m)| m)
        .sum())
}
