//! The unit-disk DtN map at `Λ` written through data at `Λ_0`:
//! `D_Λ = D_Λ0 + A B_Λ Aᵀ`.
//!
//! Rows are the first `N` DtN eigenfunctions at `Λ_0` (real circular harmonics
//! `cos mθ`, `sin mθ`, normalised on the circle). For each row harmonic the
//! columns hold its first `M` normalised Dirichlet eigenfunctions
//! `√2 J_m(j_{m,k} r) / |J_{m+1}(j_{m,k})|` times the same harmonic, so `A`
//! is `N × N·M` and block diagonal by harmonic.

use serde::{Deserialize, Serialize};

use super::compensated_sum;
use crate::canonical::{disk_branch, eigenvalues_at, laplace_spectrum};
use crate::domain::{BoundaryCondition, BranchLabel, DomainSpec};
use crate::error::{DtnError, Result};
use crate::specfun::{bessel, bessel_derivative, bessel_j_zeros, BesselKind, BesselOrder};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DtnMatrixFactorization {
    pub lambda0: f64,
    pub lambda: f64,
    /// `σ_i^(Λ0)`, nondecreasing.
    pub d0_diag: Vec<f64>,
    /// Angular index `m` and harmonic (`false` = cos, `true` = sin) of each row.
    pub harmonics: Vec<(u32, bool)>,
    /// Row-major `N × (N·M)` matrix of `⟨v_i, ∂_n U^Dir_k⟩`.
    pub a_matrix: Vec<Vec<f64>>,
    /// `(Λ0 - Λ) / ((Λ0 - λ_k)(Λ - λ_k))` for every column.
    pub b_diag: Vec<f64>,
    pub truncation: (usize, usize),
}

impl DtnMatrixFactorization {
    /// `D_Λ0 + A B Aᵀ` as a dense `N × N` matrix.
    pub fn reconstruct(&self) -> Vec<Vec<f64>> {
        let n = self.d0_diag.len();
        let mut out = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let s = compensated_sum(
                    (0..self.b_diag.len()).map(|k| self.a_matrix[i][k] * self.b_diag[k] * self.a_matrix[j][k]),
                );
                out[i][j] = s + if i == j { self.d0_diag[i] } else { 0.0 };
            }
        }
        out
    }

    /// Largest deviation of the reconstructed diagonal from the exact branch
    /// values at `Λ`.
    pub fn reconstruction_error(&self) -> Result<f64> {
        let r = self.reconstruct();
        let mut err: f64 = 0.0;
        for (i, &(m, _)) in self.harmonics.iter().enumerate() {
            err = err.max((r[i][i] - disk_branch(m, self.lambda)?).abs());
        }
        Ok(err)
    }
}

fn check_not_dirichlet(lambda: f64) -> Result<()> {
    if let Some(pole) = crate::canonical::dirichlet_pole(&DomainSpec::unit_disk(), lambda)? {
        return Err(DtnError::Pole { lambda, pole });
    }
    Ok(())
}

/// `⟨v, ∂_n φ_k⟩ = √2 j J_m'(j) / |J_{m+1}(j)|` for the Dirichlet function of
/// zero `j = j_{m,k}`.
fn normal_derivative_coefficient(m: u32, j: f64) -> Result<f64> {
    let order = BesselOrder::integer(m);
    let jp = bessel_derivative(BesselKind::J, order, j)?;
    let next = bessel(BesselKind::J, BesselOrder::integer(m + 1), j)?;
    Ok(std::f64::consts::SQRT_2 * j * jp / next.abs())
}

/// Truncated factorisation with `n` rows and `m` Dirichlet functions per row
/// harmonic.
pub fn dmatrix_truncated(lambda0: f64, lambda: f64, n: usize, m: usize) -> Result<DtnMatrixFactorization> {
    if n == 0 || m == 0 {
        return Err(DtnError::Input("truncation sizes must be positive".into()));
    }
    check_not_dirichlet(lambda0)?;
    check_not_dirichlet(lambda)?;
    let spec = eigenvalues_at(&DomainSpec::unit_disk(), lambda0, n)?;
    let mut d0_diag = Vec::with_capacity(n);
    let mut harmonics = Vec::with_capacity(n);
    for e in &spec.entries {
        let BranchLabel::Disk { m: mode } = e.branch.label else { unreachable!("disk labels") };
        for sin in [false, true].into_iter().take(e.multiplicity) {
            if d0_diag.len() < n {
                d0_diag.push(e.sigma);
                harmonics.push((mode, sin));
            }
        }
    }
    let cols = n * m;
    let mut a_matrix = vec![vec![0.0; cols]; n];
    let mut b_diag = vec![0.0; cols];
    for (i, &(mode, _)) in harmonics.iter().enumerate() {
        let zeros = bessel_j_zeros(f64::from(mode), m)?;
        for (k, &j) in zeros.iter().enumerate() {
            let col = i * m + k;
            let lk = j * j;
            a_matrix[i][col] = normal_derivative_coefficient(mode, j)?;
            b_diag[col] = (lambda0 - lambda) / ((lambda0 - lk) * (lambda - lk));
        }
    }
    Ok(DtnMatrixFactorization { lambda0, lambda, d0_diag, harmonics, a_matrix, b_diag, truncation: (n, m) })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselIdentity {
    pub lhs: f64,
    pub rhs: f64,
    pub tail_bound: f64,
}

/// `k + 2Λ Σ_{m<=M} 1/(Λ - j_{k,m}²)` against `z F_k'(z)/F_k(z)` with
/// `F = I`, `z = √(-Λ)` for `Λ < 0` and `F = J`, `z = √Λ` for `Λ > 0`.
///
/// The bound on the neglected terms uses `j_{k,m} >= j_{k,M} + (m-M) s` with
/// `s = min(π, j_{k,M} - j_{k,M-1})` (zero spacings are monotone in `m` and
/// tend to `π`), which gives
/// `Σ_{m>M} 1/(j_{k,m}² - Λ⁺) <= (1/s) ∫_{j_{k,M}}^∞ dy/(y² - Λ⁺)`.
pub fn bessel_identity_check(k: u32, lambda: f64, m_terms: usize) -> Result<BesselIdentity> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(DtnError::Input(format!("Λ must be finite and nonzero, got {lambda}")));
    }
    if m_terms < 2 {
        return Err(DtnError::Input("at least two terms are needed".into()));
    }
    let zeros = bessel_j_zeros(f64::from(k), m_terms)?;
    if let Some(j) = zeros.iter().find(|j| (lambda - *j * *j).abs() <= 1e-12 * (*j * *j)) {
        return Err(DtnError::Pole { lambda, pole: j * j });
    }
    if lambda > 0.0 {
        // the pole might lie beyond the summed zeros
        let poles = laplace_spectrum(&DomainSpec::unit_disk(), BoundaryCondition::Dirichlet, lambda * (1.0 + 1e-11))?;
        if let Some(&(p, _)) = poles.iter().find(|(p, _)| (lambda - p).abs() <= 1e-12 * p) {
            return Err(DtnError::Pole { lambda, pole: p });
        }
    }
    let sum = compensated_sum(zeros.iter().map(|j| 1.0 / (lambda - j * j)));
    let lhs = f64::from(k) + 2.0 * lambda * sum;

    let order = BesselOrder::integer(k);
    let z = lambda.abs().sqrt();
    let rhs = if lambda < 0.0 {
        z * bessel_derivative(BesselKind::I, order, z)? / bessel(BesselKind::I, order, z)?
    } else {
        z * bessel_derivative(BesselKind::J, order, z)? / bessel(BesselKind::J, order, z)?
    };

    let jm = zeros[m_terms - 1];
    let s = (jm - zeros[m_terms - 2]).min(std::f64::consts::PI);
    let lp = lambda.max(0.0);
    let integral = if lp == 0.0 {
        1.0 / jm
    } else {
        let a = lp.sqrt();
        if a >= jm {
            return Err(DtnError::Input(format!("M = {m_terms} terms do not reach past √Λ = {a}")));
        }
        ((jm + a) / (jm - a)).ln() / (2.0 * a)
    };
    Ok(BesselIdentity { lhs, rhs, tail_bound: 2.0 * lambda.abs() * integral / s })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_at_minus_one() {
        let r = bessel_identity_check(0, -1.0, 1000).unwrap();
        assert!((r.rhs - 0.446_389_965_896_534).abs() < 1e-13);
        assert!((r.lhs - r.rhs).abs() <= r.tail_bound);
        assert!((r.tail_bound - 2.03e-4).abs() < 1e-6);
    }

    #[test]
    fn equal_lambdas_reproduce_d0() {
        let f = dmatrix_truncated(-2.0, -2.0, 5, 10).unwrap();
        assert!(f.b_diag.iter().all(|&b| b == 0.0));
        let r = f.reconstruct();
        for i in 0..5 {
            assert_eq!(r[i][i], f.d0_diag[i]);
        }
    }
}
