//! Trigonometric Nyström discretisation of the single- and double-layer
//! operators with the logarithmic singularity split off:
//! `kernel(t, τ) = k1(t, τ) ln(4 sin²((t-τ)/2)) + k2(t, τ)`.
//! The log part is integrated with the exact periodic weights `R_j`, the
//! smooth part with the trapezoidal rule.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::curve::{BoundaryCurve, CurvePoint};
use crate::error::{DtnError, Result};
use crate::specfun::{ik_scaled, jy};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Above this value of `√|Λ| · diam` the `I_0` log coefficient of the
/// modified-Helmholtz kernel cancels catastrophically against `K_0`.
pub const MAX_DECAY_PRODUCT: f64 = 36.0;

/// Fundamental solution `Φ_Λ` together with its radial derivative and the
/// coefficient of `ln r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kernel {
    pub lambda: f64,
    /// Multiple of `J_0(√Λ r)/4` added to `-Y_0(√Λ r)/4` when `Λ > 0`.
    pub beta: f64,
    /// `ρ` in `-ln(r/ρ)/(2π)` when `Λ = 0`.
    pub log_scale: f64,
}

/// `Φ(r)`, `Φ'(r)`, and `A(r)`, `A'(r)` where `Φ = A ln r + smooth`.
struct KernelValues {
    phi: f64,
    dphi: f64,
    log_coeff: f64,
    dlog_coeff: f64,
}

impl Kernel {
    fn wavenumber(&self) -> f64 {
        self.lambda.abs().sqrt()
    }

    fn values(&self, r: f64) -> Result<KernelValues> {
        let c = 1.0 / (2.0 * PI);
        if self.lambda < 0.0 {
            let k = self.wavenumber();
            let v = ik_scaled(0.0, k * r)?;
            let (e, einv) = ((k * r).exp(), (-k * r).exp());
            let (i0, i1, k0, k1) = (v.i * e, v.ip * e, v.k * einv, -v.kp * einv);
            Ok(KernelValues { phi: c * k0, dphi: -c * k * k1, log_coeff: -c * i0, dlog_coeff: -c * k * i1 })
        } else if self.lambda == 0.0 {
            Ok(KernelValues { phi: -c * (r / self.log_scale).ln(), dphi: -c / r, log_coeff: -c, dlog_coeff: 0.0 })
        } else {
            let k = self.wavenumber();
            let v = jy(0.0, k * r)?;
            let (j0, j1, y0, y1) = (v.j, -v.jp, v.y, -v.yp);
            Ok(KernelValues {
                phi: 0.25 * (self.beta * j0 - y0),
                dphi: 0.25 * k * (y1 - self.beta * j1),
                log_coeff: -c * j0,
                dlog_coeff: c * k * j1,
            })
        }
    }

    /// `Φ(x - y)` for `x ≠ y`.
    pub fn phi(&self, r: f64) -> Result<f64> {
        Ok(self.values(r)?.phi)
    }

    /// `∂_{n_y} Φ(x - y)`.
    pub fn double_layer(&self, x: [f64; 2], y: [f64; 2], n_y: [f64; 2]) -> Result<f64> {
        let d = [y[0] - x[0], y[1] - x[1]];
        let r = d[0].hypot(d[1]);
        Ok(self.values(r)?.dphi * (d[0] * n_y[0] + d[1] * n_y[1]) / r)
    }

    /// Limit of `Φ(r) - A(r) ln(4 sin²(Δ/2))` as the parameter gap `Δ → 0`
    /// on a curve with speed `s`.
    fn smooth_diagonal(&self, s: f64) -> f64 {
        let c = 1.0 / (2.0 * PI);
        if self.lambda < 0.0 {
            -c * ((0.5 * self.wavenumber() * s).ln() + EULER_GAMMA)
        } else if self.lambda == 0.0 {
            -c * (s / self.log_scale).ln()
        } else {
            -c * ((0.5 * self.wavenumber() * s).ln() + EULER_GAMMA) + 0.25 * self.beta
        }
    }
}

/// Weights `R_j` with `∫_0^{2π} ln(4 sin²((t_i-τ)/2)) f(τ) dτ ≈ Σ_j R_{|i-j|} f(t_j)`
/// for trigonometric polynomials of degree below `N/2`.
pub(crate) fn log_weights(n_nodes: usize) -> Vec<f64> {
    let n = n_nodes / 2;
    let nf = n as f64;
    (0..n_nodes)
        .map(|j| {
            let s: f64 = (1..n).map(|m| (m as f64 * j as f64 * PI / nf).cos() / m as f64).sum();
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            -2.0 * PI / nf * s - PI / (nf * nf) * sign
        })
        .collect()
}

/// Nodes, weights and the dense Nyström matrices at one `Λ`.
///
/// Both matrices act on boundary values at the nodes and include the
/// arclength weights, so `(V u)_i ≈ ∫ Φ(x_i - y) u(y) ds_y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BemDiscretization {
    pub lambda: f64,
    pub kernel: Kernel,
    pub n_nodes: usize,
    pub nodes: Vec<f64>,
    /// `|x'(t_j)| 2π/N`.
    pub weights: Vec<f64>,
    pub v_matrix: Vec<Vec<f64>>,
    pub k_matrix: Vec<Vec<f64>>,
    /// Ratio of extreme singular values of `V`.
    pub condition_estimate: f64,
}

impl BemDiscretization {
    /// `|∂Ω|` from the same weights as the quadrature.
    pub fn perimeter(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn ill_conditioned(&self) -> bool {
        self.condition_estimate > 1e12
    }
}

fn check_nodes(n_nodes: usize) -> Result<()> {
    if n_nodes < 16 || n_nodes % 2 != 0 {
        return Err(DtnError::Input(format!("n_nodes must be even and at least 16, got {n_nodes}")));
    }
    Ok(())
}


/// Assembles with `β = 0` and `ρ` equal to the curve diameter.
pub fn assemble(curve: &BoundaryCurve, lambda: f64, n_nodes: usize) -> Result<BemDiscretization> {
    assemble_with_shift(curve, lambda, n_nodes, 0.0)
}

/// Assembles with `β J_0(√Λ r)/4` added to the kernel (ignored unless `Λ > 0`).
pub fn assemble_with_shift(curve: &BoundaryCurve, lambda: f64, n_nodes: usize, beta: f64) -> Result<BemDiscretization> {
    check_nodes(n_nodes)?;
    if !lambda.is_finite() || !beta.is_finite() {
        return Err(DtnError::Input(format!("Λ and β must be finite, got {lambda}, {beta}")));
    }
    curve.validate()?;
    let diam = curve.diameter();
    if lambda < 0.0 && (-lambda).sqrt() * diam > MAX_DECAY_PRODUCT {
        return Err(DtnError::Accuracy(format!(
            "√(-Λ)·diam = {:.1} exceeds {MAX_DECAY_PRODUCT}; the split kernel loses all precision",
            (-lambda).sqrt() * diam
        )));
    }
    let kernel = Kernel { lambda, beta: if lambda > 0.0 { beta } else { 0.0 }, log_scale: diam };
    assemble_kernel(curve, kernel, n_nodes)
}

pub(crate) fn assemble_kernel(curve: &BoundaryCurve, kernel: Kernel, n_nodes: usize) -> Result<BemDiscretization> {
    let h = 2.0 * PI / n_nodes as f64;
    let nodes: Vec<f64> = (0..n_nodes).map(|j| j as f64 * h).collect();
    let pts: Vec<CurvePoint> = nodes.iter().map(|&t| curve.eval(t)).collect();
    let speed: Vec<f64> = pts.iter().map(CurvePoint::speed).collect();
    let weights: Vec<f64> = speed.iter().map(|s| s * h).collect();
    let rw = log_weights(n_nodes);

    let rows: Vec<(Vec<f64>, Vec<f64>)> = (0..n_nodes)
        .into_par_iter()
        .map(|i| -> Result<(Vec<f64>, Vec<f64>)> {
            let xi = &pts[i];
            let mut v = vec![0.0; n_nodes];
            let mut k = vec![0.0; n_nodes];
            for j in 0..n_nodes {
                let lw = rw[(i + n_nodes - j) % n_nodes];
                if i == j {
                    // A(0) = -1/(2π) for every Λ
                    v[j] = (-lw / (4.0 * PI) + h * kernel.smooth_diagonal(speed[i])) * speed[j];
                    k[j] = h * (-xi.curvature() / (4.0 * PI)) * speed[j];
                    continue;
                }
                let yj = &pts[j];
                let d = [yj.x[0] - xi.x[0], yj.x[1] - xi.x[1]];
                let r = d[0].hypot(d[1]);
                let kv = kernel.values(r)?;
                let ln4 = (4.0 * (0.5 * (nodes[i] - nodes[j])).sin().powi(2)).ln();
                // Φ = A ln r + B = (A/2) ln(4 sin²) + smooth
                let v1 = 0.5 * kv.log_coeff;
                let v2 = kv.phi - v1 * ln4;
                v[j] = (lw * v1 + h * v2) * speed[j];

                let n = yj.normal();
                let q = (d[0] * n[0] + d[1] * n[1]) / r;
                let k_full = kv.dphi * q;
                let k1 = 0.5 * kv.dlog_coeff * q;
                k[j] = (lw * k1 + h * (k_full - k1 * ln4)) * speed[j];
            }
            Ok((v, k))
        })
        .collect::<Result<_>>()?;
    let (v_matrix, k_matrix): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    if v_matrix.iter().chain(&k_matrix).flatten().any(|x| !x.is_finite()) {
        return Err(DtnError::Accuracy("non-finite entry in the Nyström matrices".into()));
    }
    let condition_estimate = condition(&v_matrix)?;
    Ok(BemDiscretization { lambda: kernel.lambda, kernel, n_nodes, nodes, weights, v_matrix, k_matrix, condition_estimate })
}

pub(crate) fn to_faer(m: &[Vec<f64>]) -> faer::Mat<f64> {
    faer::Mat::from_fn(m.len(), m[0].len(), |i, j| m[i][j])
}

fn condition(m: &[Vec<f64>]) -> Result<f64> {
    let s = to_faer(m)
        .singular_values()
        .map_err(|e| DtnError::Convergence(format!("singular values of V: {e:?}")))?;
    let (max, min) = (s[0], s[s.len() - 1]);
    Ok(if min > 0.0 { max / min } else { f64::INFINITY })
}
