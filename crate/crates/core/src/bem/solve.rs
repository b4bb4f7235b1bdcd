//! The generalized eigenproblem `(½I + K) u = σ V u` and the representation
//! formula for the bulk eigenfunction.

use faer::prelude::*;
use faer::{c64, Mat, Side};
use serde::{Deserialize, Serialize};

use super::curve::BoundaryCurve;
use super::nystrom::{assemble_with_shift, to_faer, BemDiscretization, Kernel};
use crate::error::{DtnError, Result};

/// `V` is factorised directly below this condition number.
pub const REDUCTION_COND: f64 = 1e10;
/// Residual bound for a trusted eigenpair, relative to `‖u‖`.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// Eigenvectors with more than this share of their energy above frequency
/// `N/4` are discarded as unresolved.
pub const UNRESOLVED_MAX: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionMethod {
    /// Cholesky factor of the weighted, symmetrised `V`.
    Cholesky,
    /// `V⁻¹(½I + K)` through an LU factorisation (indefinite `V`).
    Lu,
    /// QZ on the pencil, for near-singular `V`.
    Generalized,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneralizedEigenSolution {
    pub lambda: f64,
    pub kernel: Kernel,
    pub n_nodes: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub sigmas: Vec<f64>,
    /// Boundary values at the nodes, unit norm in `Σ w_j u_j²`.
    pub densities: Vec<Vec<f64>>,
    /// `‖(½I+K)u - σVu‖ / ‖u‖` in the weighted norm.
    pub residuals: Vec<f64>,
    pub condition_estimate: f64,
    pub method: ReductionMethod,
    /// Set when `V` is ill-conditioned or a residual exceeds [`RESIDUAL_TOL`].
    pub warning: bool,
}

impl GeneralizedEigenSolution {
    pub fn perimeter(&self) -> f64 {
        self.weights.iter().sum()
    }
}

fn check_request(k_max: usize, n_nodes: usize) -> Result<()> {
    if k_max == 0 {
        return Err(DtnError::Input("k_max must be positive".into()));
    }
    if k_max > n_nodes / 4 {
        return Err(DtnError::Accuracy(format!(
            "k_max = {k_max} exceeds n_nodes/4 = {}; increase n_nodes",
            n_nodes / 4
        )));
    }
    Ok(())
}

/// The `k_max` smallest DtN eigenvalues of the domain bounded by `curve`.
///
/// For `Λ > 0` the real kernel `-Y_0/4` makes `V` singular at some `Λ` that
/// are not Dirichlet eigenvalues; there the kernel is shifted by `β J_0/4`
/// with `β = ±1`, which leaves the spectrum unchanged.
pub fn solve_dtn_spectrum(
    curve: &BoundaryCurve,
    lambda: f64,
    k_max: usize,
    n_nodes: usize,
) -> Result<GeneralizedEigenSolution> {
    check_request(k_max, n_nodes)?;
    let mut disc = assemble_with_shift(curve, lambda, n_nodes, 0.0)?;
    if lambda > 0.0 && disc.condition_estimate >= REDUCTION_COND {
        for beta in [1.0, -1.0] {
            let d = assemble_with_shift(curve, lambda, n_nodes, beta)?;
            if d.condition_estimate < disc.condition_estimate {
                disc = d;
            }
        }
    }
    solve_discretization(&disc, k_max)
}

/// As [`solve_dtn_spectrum`] with a fixed shift `β`.
pub fn solve_dtn_spectrum_with_shift(
    curve: &BoundaryCurve,
    lambda: f64,
    k_max: usize,
    n_nodes: usize,
    beta: f64,
) -> Result<GeneralizedEigenSolution> {
    check_request(k_max, n_nodes)?;
    solve_discretization(&assemble_with_shift(curve, lambda, n_nodes, beta)?, k_max)
}

struct Candidate {
    sigma: f64,
    vectors: Vec<Vec<f64>>,
}

/// Complex eigenvector `x` at node basis into the real vectors spanning it.
fn real_parts(x: impl Fn(usize) -> c64, n: usize) -> Vec<Vec<f64>> {
    vec![(0..n).map(|i| x(i).re).collect(), (0..n).map(|i| x(i).im).collect()]
}

pub fn solve_discretization(disc: &BemDiscretization, k_max: usize) -> Result<GeneralizedEigenSolution> {
    let n = disc.n_nodes;
    check_request(k_max, n)?;
    let w = &disc.weights;
    let mut a = to_faer(&disc.k_matrix);
    for i in 0..n {
        a[(i, i)] += 0.5;
    }
    let v = to_faer(&disc.v_matrix);

    let mut method = ReductionMethod::Generalized;
    let mut candidates = None;
    if disc.condition_estimate < REDUCTION_COND {
        candidates = cholesky_reduction(&a, &v, w)?;
        method = ReductionMethod::Cholesky;
        if candidates.is_none() {
            candidates = Some(lu_reduction(&a, &v)?);
            method = ReductionMethod::Lu;
        }
    }
    let candidates = match candidates {
        Some(c) => c,
        None => {
            method = ReductionMethod::Generalized;
            generalized(&a, &v)?
        }
    };

    let mut warning = disc.ill_conditioned() || method == ReductionMethod::Generalized;
    let (sigmas, densities) = select(candidates, w, k_max)?;
    let mut residuals = Vec::with_capacity(sigmas.len());
    for (s, u) in sigmas.iter().zip(&densities) {
        let r = residual(&a, &v, w, *s, u);
        warning |= r > RESIDUAL_TOL;
        residuals.push(r);
    }
    Ok(GeneralizedEigenSolution {
        lambda: disc.lambda,
        kernel: disc.kernel,
        n_nodes: n,
        nodes: disc.nodes.clone(),
        weights: w.clone(),
        sigmas,
        densities,
        residuals,
        condition_estimate: disc.condition_estimate,
        method,
        warning,
    })
}

/// With `B = W^½ V W^{-½}` symmetrised and `B = L Lᵀ`, the pencil becomes the
/// standard problem for `L⁻¹ W^½ (½I+K) W^{-½} L⁻ᵀ`. Returns `None` when `B`
/// is not positive definite.
fn cholesky_reduction(a: &Mat<f64>, v: &Mat<f64>, w: &[f64]) -> Result<Option<Vec<Candidate>>> {
    let n = w.len();
    let sq: Vec<f64> = w.iter().map(|x| x.sqrt()).collect();
    let b = Mat::from_fn(n, n, |i, j| 0.5 * (sq[i] * v[(i, j)] / sq[j] + sq[j] * v[(j, i)] / sq[i]));
    let Ok(llt) = b.llt(Side::Lower) else { return Ok(None) };
    let l = llt.L();
    let mut x = Mat::from_fn(n, n, |i, j| sq[i] * a[(i, j)] / sq[j]);
    l.solve_lower_triangular_in_place(x.as_mut());
    let mut ct = x.transpose().to_owned();
    l.solve_lower_triangular_in_place(ct.as_mut());
    let c = ct.transpose().to_owned();
    let eig = c.eigen().map_err(|e| DtnError::Convergence(format!("eigensolver: {e:?}")))?;
    let (u, s) = (eig.U(), eig.S());
    // back to nodal values: u = W^{-½} L⁻ᵀ y
    let mut re = Mat::from_fn(n, n, |i, k| u[(i, k)].re);
    let mut im = Mat::from_fn(n, n, |i, k| u[(i, k)].im);
    l.transpose().solve_upper_triangular_in_place(re.as_mut());
    l.transpose().solve_upper_triangular_in_place(im.as_mut());
    let out = (0..n)
        .filter_map(|k| {
            let sigma = eig_value(s[k]).ok()?;
            let vectors = vec![(0..n).map(|i| re[(i, k)] / sq[i]).collect(), (0..n).map(|i| im[(i, k)] / sq[i]).collect()];
            Some(Candidate { sigma, vectors })
        })
        .collect();
    Ok(Some(out))
}

fn lu_reduction(a: &Mat<f64>, v: &Mat<f64>) -> Result<Vec<Candidate>> {
    let n = a.nrows();
    let m = v.partial_piv_lu().solve(a);
    let eig = m.eigen().map_err(|e| DtnError::Convergence(format!("eigensolver: {e:?}")))?;
    let (u, s) = (eig.U(), eig.S());
    Ok((0..n)
        .filter_map(|k| Some(Candidate { sigma: eig_value(s[k]).ok()?, vectors: real_parts(|i| u[(i, k)], n) }))
        .collect())
}

fn generalized(a: &Mat<f64>, v: &Mat<f64>) -> Result<Vec<Candidate>> {
    let n = a.nrows();
    let eig = a.generalized_eigen(v).map_err(|e| DtnError::Convergence(format!("QZ: {e:?}")))?;
    let (u, sa, sb) = (eig.U(), eig.S_a(), eig.S_b());
    let mut out = Vec::new();
    for k in 0..n {
        let (num, den) = (sa[k], sb[k]);
        if den.norm() <= 1e-14 * num.norm() {
            continue;
        }
        let Ok(sigma) = eig_value(num / den) else { continue };
        out.push(Candidate { sigma, vectors: real_parts(|i| u[(i, k)], n) });
    }
    Ok(out)
}

/// Real part of an eigenvalue that is real up to rounding.
fn eig_value(z: c64) -> Result<f64> {
    if !z.re.is_finite() || z.im.abs() > 1e-6 * z.re.abs().max(1.0) {
        return Err(DtnError::Accuracy(format!("non-real eigenvalue {z}")));
    }
    Ok(z.re)
}

fn dot(w: &[f64], x: &[f64], y: &[f64]) -> f64 {
    w.iter().zip(x).zip(y).map(|((w, x), y)| w * x * y).sum()
}

/// Share of `Σ u_j²` carried by Fourier modes above `N/4` in the parameter.
fn unresolved_fraction(u: &[f64]) -> f64 {
    let n = u.len();
    let total: f64 = u.iter().map(|x| x * x).sum();
    if total == 0.0 {
        return 1.0;
    }
    let mut low = 0.0;
    for m in 0..=n / 4 {
        let (mut c, mut s) = (0.0, 0.0);
        for (j, x) in u.iter().enumerate() {
            let (sn, cs) = (2.0 * std::f64::consts::PI * (m * j % n) as f64 / n as f64).sin_cos();
            c += x * cs;
            s += x * sn;
        }
        // Parseval: Σ u² = (1/N) Σ_m |û_m|², modes m and -m coincide only for m = 0
        low += (c * c + s * s) / n as f64 * if m == 0 { 1.0 } else { 2.0 };
    }
    (1.0 - low / total).max(0.0)
}

/// Groups near-equal eigenvalues and extracts an orthonormal real basis of
/// each eigenspace from the real and imaginary parts of its eigenvectors.
fn select(mut candidates: Vec<Candidate>, w: &[f64], k_max: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    // eigenvectors dominated by the highest node frequencies are artefacts of
    // the discretisation, not eigenfunctions
    candidates.retain(|c| c.sigma.is_finite() && c.vectors.iter().any(|v| unresolved_fraction(v) < UNRESOLVED_MAX));
    candidates.sort_by(|x, y| x.sigma.total_cmp(&y.sigma));
    let mut sigmas = Vec::new();
    let mut densities: Vec<Vec<f64>> = Vec::new();
    let mut i = 0;
    while i < candidates.len() && sigmas.len() < k_max {
        let s0 = candidates[i].sigma;
        let mut j = i + 1;
        while j < candidates.len() && candidates[j].sigma - candidates[j - 1].sigma <= 1e-7 * s0.abs().max(1.0) {
            j += 1;
        }
        let mut basis: Vec<Vec<f64>> = Vec::new();
        for v in candidates[i..j].iter().flat_map(|c| c.vectors.iter()) {
            let norm0 = dot(w, v, v).sqrt();
            if norm0 == 0.0 {
                continue;
            }
            let mut u = v.clone();
            for _ in 0..2 {
                for b in &basis {
                    let p = dot(w, &u, b);
                    u.iter_mut().zip(b).for_each(|(x, y)| *x -= p * y);
                }
            }
            let norm = dot(w, &u, &u).sqrt();
            if norm > 1e-6 * norm0 && basis.len() < j - i {
                u.iter_mut().for_each(|x| *x /= norm);
                basis.push(u);
            }
        }
        for (k, mut u) in basis.into_iter().enumerate() {
            if sigmas.len() == k_max {
                break;
            }
            // sign convention: largest entry positive
            let big = u.iter().copied().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
            if big < 0.0 {
                u.iter_mut().for_each(|x| *x = -*x);
            }
            sigmas.push(candidates[i + k].sigma);
            densities.push(u);
        }
        i = j;
    }
    if sigmas.len() < k_max {
        return Err(DtnError::Accuracy(format!("only {} real eigenvalues resolved", sigmas.len())));
    }
    Ok((sigmas, densities))
}

fn residual(a: &Mat<f64>, v: &Mat<f64>, w: &[f64], sigma: f64, u: &[f64]) -> f64 {
    let n = u.len();
    let r: Vec<f64> = (0..n).map(|i| (0..n).map(|j| (a[(i, j)] - sigma * v[(i, j)]) * u[j]).sum()).collect();
    (dot(w, &r, &r) / dot(w, u, u)).sqrt()
}

/// `U(x) = ∫ Φ(x-y) σ u(y) ds_y - ∫ ∂_{n_y}Φ(x-y) u(y) ds_y` for the
/// eigenpair `index` (zero-based) at interior points.
pub fn bulk_eigenfunction(
    curve: &BoundaryCurve,
    solution: &GeneralizedEigenSolution,
    index: usize,
    points: &[[f64; 2]],
) -> Result<Vec<f64>> {
    let (sigma, u) = match (solution.sigmas.get(index), solution.densities.get(index)) {
        (Some(s), Some(u)) => (*s, u),
        _ => return Err(DtnError::Input(format!("no eigenpair with index {index}"))),
    };
    let samples: Vec<_> = solution.nodes.iter().map(|&t| curve.eval(t)).collect();
    let spacing = solution.weights.iter().copied().fold(0.0, f64::max);
    points
        .iter()
        .map(|&x| {
            if !curve.contains(x) {
                return Err(DtnError::Accuracy(format!("point {x:?} is outside the domain")));
            }
            let d = curve.distance_to(x);
            if d <= 2.0 * spacing {
                return Err(DtnError::Accuracy(format!(
                    "point {x:?} lies within two node spacings ({:.3e}) of the boundary",
                    2.0 * spacing
                )));
            }
            let mut acc = 0.0;
            for ((p, &wj), &uj) in samples.iter().zip(&solution.weights).zip(u) {
                let r = (p.x[0] - x[0]).hypot(p.x[1] - x[1]);
                let phi = solution.kernel.phi(r)?;
                let dl = solution.kernel.double_layer(x, p.x, p.normal())?;
                acc += wj * (phi * sigma - dl) * uj;
            }
            Ok(acc)
        })
        .collect()
}
