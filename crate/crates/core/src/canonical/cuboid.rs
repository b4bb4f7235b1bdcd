//! Cuboids `(-α_1, α_1) × … × (-α_d, α_d)` by separation of variables.
//!
//! A separated eigenfunction is a product of one-dimensional branch
//! eigenfunctions along each axis of length `L_j = 2α_j`, all sharing the same
//! `σ`. With axis parameters `Λ_j = f^{-1}_{ℵ_j,m_j}(L_j σ) / L_j²` the
//! condition `Σ Λ_j = Λ` reads `g_{ℵ,m}(σ) = Λ`, with `g` strictly
//! decreasing from `λ^Dir_{ℵ,m}` (at `σ = -∞`) down to `λ^Dir_{ℵ,m-1}`.
//!
//! `Λ_j` is the `n_j`-th Robin eigenvalue of axis `j` with parameter `-σ`
//! (piece numbering of [`super::interval`]). Hence branch `n` has `σ <= S` iff
//! `Σ_j μ_{j,n_j}(S) <= Λ < λ^Dir_n`, and since `μ_{j,n}` increases with `n`
//! the branches below any threshold form a finite, enumerable set.

use std::f64::consts::PI;

use crate::canonical::interval::{f_derivative, f_inverse, piece_parity, pole_tol};
use crate::domain::{BranchId, BranchLabel, Parity, Spectrum, SpectrumEntry};
use crate::error::{DtnError, Result};
use crate::roots::brent;

/// Side lengths from half-widths.
pub(crate) fn sides(half_widths: &[f64]) -> Vec<f64> {
    half_widths.iter().map(|a| 2.0 * a).collect()
}

/// `μ_{n}(S)`: piece-`n` axis parameter for an axis of length `l` at `σ = S`.
pub(crate) fn axis_lambda(l: f64, n: u32, sigma: f64) -> Result<f64> {
    let (p, m) = piece_parity(n);
    Ok(f_inverse(p, m, l * sigma)? / (l * l))
}

/// `λ^Dir` of piece `n` on an axis of length `l`: `(nπ/l)²`; `-∞` for `n = 0`.
fn axis_dirichlet(l: f64, n: u32) -> f64 {
    if n == 0 {
        f64::NEG_INFINITY
    } else {
        (f64::from(n) * PI / l).powi(2)
    }
}

fn label(pieces: &[u32]) -> BranchLabel {
    let (parities, modes): (Vec<Parity>, Vec<u32>) = pieces.iter().map(|&n| piece_parity(n)).unzip();
    BranchLabel::Cuboid { parities, modes }
}

/// Piece numbers of a cuboid label.
pub(crate) fn pieces_of(label: &BranchLabel) -> Result<Vec<u32>> {
    match label {
        BranchLabel::Cuboid { parities, modes } => {
            if parities.len() != modes.len() || modes.iter().any(|&m| m == 0) {
                return Err(DtnError::Domain(format!("malformed cuboid branch label {label:?}")));
            }
            Ok(parities
                .iter()
                .zip(modes)
                .map(|(&p, &m)| super::interval::piece(p, m))
                .collect())
        }
        _ => Err(DtnError::Domain(format!("not a cuboid branch label: {label:?}"))),
    }
}

/// Continuity interval `(λ^Dir_{n-1}, λ^Dir_n)` of the branch with pieces `n`.
pub(crate) fn continuity(sides: &[f64], pieces: &[u32]) -> (Option<f64>, f64) {
    let hi = sides.iter().zip(pieces).map(|(&l, &n)| axis_dirichlet(l, n)).sum();
    let lo = if pieces.iter().all(|&n| n >= 3) {
        Some(sides.iter().zip(pieces).map(|(&l, &n)| axis_dirichlet(l, n - 2)).sum())
    } else {
        None
    };
    (lo, hi)
}

/// `g_{ℵ,m}(σ)`.
pub(crate) fn g(sides: &[f64], pieces: &[u32], sigma: f64) -> Result<f64> {
    sides
        .iter()
        .zip(pieces)
        .map(|(&l, &n)| axis_lambda(l, n, sigma))
        .sum()
}

/// `g'(σ) = Σ_j 1 / (L_j f'(L_j² Λ_j))`.
pub(crate) fn g_derivative(sides: &[f64], pieces: &[u32], sigma: f64) -> Result<f64> {
    let mut acc = 0.0;
    for (&l, &n) in sides.iter().zip(pieces) {
        let (p, _) = piece_parity(n);
        let x = axis_lambda(l, n, sigma)? * l * l;
        acc += 1.0 / (l * f_derivative(p, x));
    }
    Ok(acc)
}

/// Solves `g(σ) = Λ` on the branch with the given pieces.
pub(crate) fn branch_value(sides: &[f64], pieces: &[u32], lambda: f64) -> Result<f64> {
    let (lo, hi) = continuity(sides, pieces);
    if (lambda - hi).abs() <= pole_tol(hi) {
        return Err(DtnError::Pole { lambda, pole: hi });
    }
    if let Some(lo) = lo {
        if (lambda - lo).abs() <= pole_tol(lo) {
            return Err(DtnError::Pole { lambda, pole: lo });
        }
    }
    if lambda >= hi || lo.is_some_and(|lo| lambda <= lo) {
        return Err(DtnError::Domain(format!(
            "Λ = {lambda} outside the continuity interval ({lo:?}, {hi}) of branch {pieces:?}"
        )));
    }
    let h = |s: f64| g(sides, pieces, s).map(|v| v - lambda).unwrap_or(f64::NAN);
    let mut a = -1.0;
    while h(a) <= 0.0 {
        a *= 2.0;
        if a < -1e300 {
            return Err(DtnError::Convergence("cuboid bracket (σ -> -∞)".into()));
        }
    }
    let mut b = 1.0;
    while h(b) >= 0.0 {
        b *= 2.0;
        if b > 1e300 {
            return Err(DtnError::Convergence("cuboid bracket (σ -> +∞)".into()));
        }
    }
    brent(h, a, b, 1e-14 * a.abs().max(b.abs()).max(1.0))
}

/// Lazily grown table `μ_{j,n}(S)` for one axis.
struct AxisTable {
    l: f64,
    s: f64,
    values: Vec<f64>,
}

impl AxisTable {
    fn get(&mut self, n: u32) -> Result<f64> {
        while self.values.len() < n as usize {
            let next = self.values.len() as u32 + 1;
            self.values.push(axis_lambda(self.l, next, self.s)?);
        }
        Ok(self.values[n as usize - 1])
    }
}

/// All piece vectors whose branch exists at `Λ` and has `σ <= s_max`.
pub(crate) fn branches_below(sides: &[f64], lambda: f64, s_max: f64) -> Result<Vec<Vec<u32>>> {
    Ok(enumerate(sides, lambda, s_max, true)?.into_iter().map(|(p, _)| p).collect())
}

/// Robin eigenvalues `<= t` of the cuboid for the parameter `γ`, that is the
/// sums `Σ_j μ_{j,n_j}(-γ)`, with their piece vectors.
pub(crate) fn robin_below(sides: &[f64], gamma: f64, t: f64) -> Result<Vec<(Vec<u32>, f64)>> {
    enumerate(sides, t, -gamma, false)
}

/// Piece vectors with `Σ_j μ_{j,n_j}(s) <= lambda` (and, if `check_pole`,
/// `lambda < λ^Dir_n`), together with the sum.
fn enumerate(sides: &[f64], lambda: f64, s: f64, check_pole: bool) -> Result<Vec<(Vec<u32>, f64)>> {
    let mut tables: Vec<AxisTable> = sides
        .iter()
        .map(|&l| AxisTable { l, s, values: Vec::new() })
        .collect();
    // minimal contribution of axes j.. (all at piece 1)
    let mut tail_min = vec![0.0; sides.len() + 1];
    for j in (0..sides.len()).rev() {
        tail_min[j] = tail_min[j + 1] + tables[j].get(1)?;
    }
    let mut walk = Walk { tables, tail_min, lambda, sides, check_pole, current: Vec::new(), out: Vec::new() };
    walk.recurse(0, 0.0)?;
    Ok(walk.out)
}

struct Walk<'a> {
    tables: Vec<AxisTable>,
    tail_min: Vec<f64>,
    lambda: f64,
    sides: &'a [f64],
    check_pole: bool,
    current: Vec<u32>,
    out: Vec<(Vec<u32>, f64)>,
}

impl Walk<'_> {
    fn recurse(&mut self, axis: usize, partial: f64) -> Result<()> {
        if axis == self.tables.len() {
            if !self.check_pole || self.lambda < continuity(self.sides, &self.current).1 {
                self.out.push((self.current.clone(), partial));
            }
            return Ok(());
        }
        let mut n = 1;
        loop {
            let mu = self.tables[axis].get(n)?;
            if partial + mu + self.tail_min[axis + 1] > self.lambda {
                break;
            }
            self.current.push(n);
            self.recurse(axis + 1, partial + mu)?;
            self.current.pop();
            n += 1;
        }
        Ok(())
    }
}

/// Cuboid Dirichlet or Neumann eigenvalues `Σ (k_j π / L_j)²` up to `lambda_max`
/// (`k_j >= 1` or `k_j >= 0`), sorted, with coincident values merged.
pub(crate) fn laplace_eigenvalues(sides: &[f64], neumann: bool, lambda_max: f64) -> Vec<(f64, usize)> {
    let kmin = if neumann { 0 } else { 1 };
    let mut values = Vec::new();
    fn rec(sides: &[f64], kmin: u32, lambda_max: f64, axis: usize, partial: f64, values: &mut Vec<f64>) {
        if axis == sides.len() {
            values.push(partial);
            return;
        }
        let rest_min: f64 = sides[axis + 1..]
            .iter()
            .map(|&l| (f64::from(kmin) * PI / l).powi(2))
            .sum();
        let mut k = kmin;
        loop {
            let v = partial + (f64::from(k) * PI / sides[axis]).powi(2);
            if v + rest_min > lambda_max * (1.0 + 1e-14) + 1e-300 {
                break;
            }
            rec(sides, kmin, lambda_max, axis + 1, v, values);
            k += 1;
        }
    }
    if lambda_max >= 0.0 {
        rec(sides, kmin, lambda_max, 0, 0.0, &mut values);
    }
    values.sort_by(f64::total_cmp);
    merge(values)
}

pub(crate) fn merge(values: Vec<f64>) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for v in values {
        match out.last_mut() {
            Some((w, c)) if (v - *w).abs() <= 1e-12 * w.abs().max(1.0) => *c += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Pole check: is `Λ` a Dirichlet eigenvalue of the cuboid?
pub(crate) fn dirichlet_pole(sides: &[f64], lambda: f64) -> Option<f64> {
    if lambda <= 0.0 {
        return None;
    }
    laplace_eigenvalues(sides, false, lambda * (1.0 + 2e-12) + 1e-12)
        .into_iter()
        .map(|(v, _)| v)
        .find(|&v| (lambda - v).abs() <= pole_tol(v))
}

/// All DtN eigenvalues `<= sigma_max` of the cuboid with the given half-widths.
pub fn cuboid_spectrum(half_widths: &[f64], lambda: f64, sigma_max: f64) -> Result<Spectrum> {
    validate(half_widths)?;
    let sides = sides(half_widths);
    if let Some(pole) = dirichlet_pole(&sides, lambda) {
        return Err(DtnError::Pole { lambda, pole });
    }
    let pieces = branches_below(&sides, lambda, sigma_max)?;
    let mut entries = Vec::with_capacity(pieces.len());
    for p in pieces {
        let sigma = branch_value(&sides, &p, lambda)?;
        if sigma <= sigma_max + 1e-10 * sigma_max.abs().max(1.0) {
            let (lo, hi) = continuity(&sides, &p);
            entries.push(SpectrumEntry {
                sigma,
                multiplicity: 1,
                branch: BranchId { label: label(&p), continuity: (lo, Some(hi)) },
            });
        }
    }
    Ok(Spectrum::new(lambda, entries))
}

/// Number of cuboid branches with `σ <= s` at `Λ` (no root finding).
pub(crate) fn count_below(half_widths: &[f64], lambda: f64, s: f64) -> Result<usize> {
    Ok(branches_below(&sides(half_widths), lambda, s)?.len())
}

pub(crate) fn validate(half_widths: &[f64]) -> Result<()> {
    if half_widths.len() < 2 || half_widths.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
        return Err(DtnError::Domain(format!("invalid cuboid half-widths {half_widths:?}")));
    }
    Ok(())
}

/// Label and continuity interval for the cuboid branch `label` at `Λ`.
pub(crate) fn branch_id(half_widths: &[f64], label_in: &BranchLabel) -> Result<BranchId> {
    let s = sides(half_widths);
    let p = pieces_of(label_in)?;
    if p.len() != s.len() {
        return Err(DtnError::Domain("branch label dimension does not match the cuboid".into()));
    }
    let (lo, hi) = continuity(&s, &p);
    Ok(BranchId { label: label(&p), continuity: (lo, Some(hi)) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_at_zero_has_zero_from_ss_11() {
        let s = cuboid_spectrum(&[PI / 2.0, PI / 2.0], 0.0, 0.3).unwrap();
        assert_eq!(s.entries.len(), 1);
        assert!(s.entries[0].sigma.abs() < 1e-12);
        assert_eq!(
            s.entries[0].branch.label,
            BranchLabel::Cuboid { parities: vec![Parity::S, Parity::S], modes: vec![1, 1] }
        );
    }

    #[test]
    fn g_is_decreasing_with_dirichlet_limits() {
        let sides = [2.0, 3.0];
        let p = [3, 2];
        let (lo, hi) = continuity(&sides, &p);
        assert!(lo.is_none());
        let mut prev = f64::INFINITY;
        for i in -20..=20 {
            let v = g(&sides, &p, f64::from(i) * 5.0).unwrap();
            assert!(v < prev);
            assert!(v < hi);
            prev = v;
        }
        assert!(hi - g(&sides, &p, -1e7).unwrap() < 1e-3);
    }

    #[test]
    fn laplace_lists() {
        let d = laplace_eigenvalues(&[PI, PI], false, 10.0);
        assert_eq!(d, vec![(2.0, 1), (5.0, 2), (8.0, 1), (10.0, 2)]);
        let n = laplace_eigenvalues(&[PI, PI], true, 2.0);
        assert_eq!(n, vec![(0.0, 1), (1.0, 2), (2.0, 1)]);
    }

    #[test]
    fn pole_detection() {
        assert!(matches!(
            cuboid_spectrum(&[PI / 2.0, PI / 2.0], 5.0, 10.0),
            Err(DtnError::Pole { .. })
        ));
    }
}
