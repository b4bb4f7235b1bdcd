//! One-dimensional branches `f_s`, `f_a` of the unit-length interval, their
//! inverses on each continuity piece, and the interval of length `α`.
//!
//! Pieces are numbered by `n = 1, 2, …` with odd `n` symmetric and even `n`
//! antisymmetric; piece `n` lives on `(((n-2)π)², (nπ)²)` (lower end `-∞` for
//! `n <= 2`). Piece `n` of parity `s` is the mode index `m = (n+1)/2`,
//! of parity `a` the index `m = n/2`.

use std::f64::consts::PI;

use crate::domain::{BranchId, BranchLabel, Parity};
use crate::error::{DtnError, Result};
use crate::roots::brent;

pub(crate) fn pole_tol(pole: f64) -> f64 {
    1e-12 * pole.abs().max(1.0)
}

/// Piece number of index `m >= 1` for the given parity.
pub fn piece(parity: Parity, m: u32) -> u32 {
    match parity {
        Parity::S => 2 * m - 1,
        Parity::A => 2 * m,
    }
}

/// Parity and index `m` of piece `n >= 1`.
pub fn piece_parity(n: u32) -> (Parity, u32) {
    if n % 2 == 1 {
        (Parity::S, (n + 1) / 2)
    } else {
        (Parity::A, n / 2)
    }
}

/// `λ^Dir_{ℵ,m}` of the unit interval; `-∞` for `m = 0`.
pub fn dirichlet_1d(parity: Parity, m: u32) -> f64 {
    if m == 0 {
        return f64::NEG_INFINITY;
    }
    let n = f64::from(piece(parity, m));
    (n * PI).powi(2)
}

/// Continuity piece index `m` of parity `parity` containing `x` (unit interval).
pub fn piece_index(parity: Parity, x: f64) -> u32 {
    if x <= 0.0 {
        return 1;
    }
    let k = x.sqrt() / PI;
    // n is the smallest admissible piece number with (nπ)² > x
    let mut m = match parity {
        Parity::S => ((k + 1.0) / 2.0).floor().max(1.0) as u32,
        Parity::A => (k / 2.0).floor().max(1.0) as u32,
    };
    while dirichlet_1d(parity, m) <= x {
        m += 1;
    }
    while m > 1 && dirichlet_1d(parity, m - 1) > x {
        m -= 1;
    }
    m
}

/// `(sinh s)/s - 1` and `1 - (sin k)/k`, accurate near zero.
fn sinhc_m1(s: f64) -> f64 {
    if s.abs() < 0.1 {
        let s2 = s * s;
        s2 / 6.0 * (1.0 + s2 / 20.0 * (1.0 + s2 / 42.0 * (1.0 + s2 / 72.0)))
    } else {
        s.sinh() / s - 1.0
    }
}

fn one_m_sinc(k: f64) -> f64 {
    if k.abs() < 0.1 {
        let k2 = k * k;
        k2 / 6.0 * (1.0 - k2 / 20.0 * (1.0 - k2 / 42.0 * (1.0 - k2 / 72.0)))
    } else {
        1.0 - k.sin() / k
    }
}

/// `f_s(x)` or `f_a(x)` without pole checks (infinite or huge at poles).
pub fn f_unchecked(parity: Parity, x: f64) -> f64 {
    match (parity, x.partial_cmp(&0.0)) {
        (Parity::S, Some(std::cmp::Ordering::Less)) => {
            let s = (-x).sqrt();
            s * (0.5 * s).tanh()
        }
        (Parity::S, Some(std::cmp::Ordering::Equal)) => 0.0,
        (Parity::S, _) => {
            let k = x.sqrt();
            -k * (0.5 * k).tan()
        }
        (Parity::A, Some(std::cmp::Ordering::Less)) => {
            let s = (-x).sqrt();
            s / (0.5 * s).tanh()
        }
        (Parity::A, Some(std::cmp::Ordering::Equal)) => 2.0,
        (Parity::A, _) => {
            let k = x.sqrt();
            k / (0.5 * k).tan()
        }
    }
}

/// Nearest pole of `f_ℵ` if `x` is within the pole tolerance of it.
pub fn pole_near(parity: Parity, x: f64) -> Option<f64> {
    if x <= 0.0 {
        return None;
    }
    let m = piece_index(parity, x);
    [m.saturating_sub(1), m]
        .into_iter()
        .filter(|&m| m > 0)
        .map(|m| dirichlet_1d(parity, m))
        .find(|&p| (x - p).abs() <= pole_tol(p))
}

/// `f_ℵ(x)` for the unit interval.
pub fn f(parity: Parity, x: f64) -> Result<f64> {
    if let Some(p) = pole_near(parity, x) {
        return Err(DtnError::Pole { lambda: x, pole: p });
    }
    Ok(f_unchecked(parity, x))
}

/// `f_ℵ'(x) = -∫U² / (2 U(1/2)²)`, with the elementary integrals of the
/// branch eigenfunction `U = cosh, 1, cos` (s) or `sinh, x, sin` (a).
pub fn f_derivative(parity: Parity, x: f64) -> f64 {
    match parity {
        Parity::S => {
            if x < 0.0 {
                let s = (-x).sqrt();
                let norm = 0.5 * (1.0 + s.sinh() / s);
                -norm / (2.0 * (0.5 * s).cosh().powi(2))
            } else if x == 0.0 {
                -0.5
            } else {
                let k = x.sqrt();
                let norm = 0.5 * (1.0 + k.sin() / k);
                -norm / (2.0 * (0.5 * k).cos().powi(2))
            }
        }
        Parity::A => {
            if x < 0.0 {
                let s = (-x).sqrt();
                let norm = 0.5 * sinhc_m1(s);
                let h = (0.5 * s).sinh();
                if s < 1e-8 {
                    return -1.0 / 6.0;
                }
                -norm / (2.0 * h * h)
            } else if x == 0.0 {
                -1.0 / 6.0
            } else {
                let k = x.sqrt();
                if k < 1e-8 {
                    return -1.0 / 6.0;
                }
                let norm = 0.5 * one_m_sinc(k);
                let h = (0.5 * k).sin();
                -norm / (2.0 * h * h)
            }
        }
    }
}

/// `f_{ℵ,m}^{-1}(y)`: the unique `x` in `(λ^Dir_{ℵ,m-1}, λ^Dir_{ℵ,m})` with
/// `f_ℵ(x) = y`.
pub fn f_inverse(parity: Parity, m: u32, y: f64) -> Result<f64> {
    if m == 0 {
        return Err(DtnError::Domain("piece index m must be >= 1".into()));
    }
    if !y.is_finite() {
        return Err(DtnError::Domain(format!("cannot invert f at {y}")));
    }
    let lo = dirichlet_1d(parity, m - 1);
    let hi = dirichlet_1d(parity, m);
    let width = if lo.is_finite() { hi - lo } else { hi };
    let g = |x: f64| f_unchecked(parity, x) - y;

    // left end: f -> +∞
    let a = if lo.is_finite() {
        let mut d = 1e-2;
        loop {
            let a = lo + d * width;
            if g(a) > 0.0 || d < 1e-17 {
                break a;
            }
            d *= 1e-3;
        }
    } else {
        let mut a = -1.0;
        while g(a) <= 0.0 {
            a = 4.0 * a - 1.0;
        }
        a
    };
    // right end: f -> -∞
    let mut d = 1e-2;
    let b = loop {
        let b = hi - d * width;
        if g(b) < 0.0 || d < 1e-17 {
            break b;
        }
        d *= 1e-3;
    };
    if g(a) <= 0.0 {
        return Ok(a);
    }
    if g(b) >= 0.0 {
        return Ok(b);
    }
    brent(g, a, b, 1e-15 * b.abs().max(1.0))
}

/// `σ_ℵ` for the interval of length `α`: `(1/α) f_ℵ(α² Λ)`.
pub fn interval_branch(parity: Parity, alpha: f64, lambda: f64) -> Result<f64> {
    let x = alpha * alpha * lambda;
    if let Some(p) = pole_near(parity, x) {
        return Err(DtnError::Pole { lambda, pole: p / (alpha * alpha) });
    }
    Ok(f_unchecked(parity, x) / alpha)
}

/// Branch identifier (with continuity interval in `Λ`) of parity `parity`
/// on the interval of length `α` at `Λ`.
pub fn interval_branch_id(parity: Parity, alpha: f64, lambda: f64) -> BranchId {
    let a2 = alpha * alpha;
    let m = piece_index(parity, a2 * lambda);
    let lo = dirichlet_1d(parity, m - 1);
    BranchId {
        label: BranchLabel::Interval { parity },
        continuity: (lo.is_finite().then(|| lo / a2), Some(dirichlet_1d(parity, m) / a2)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_zero() {
        assert_eq!(interval_branch(Parity::S, 1.0, 0.0).unwrap(), 0.0);
        assert_eq!(interval_branch(Parity::A, 1.0, 0.0).unwrap(), 2.0);
    }

    #[test]
    fn continuity_through_zero() {
        for p in [Parity::S, Parity::A] {
            let f0 = f_unchecked(p, 0.0);
            assert!((f_unchecked(p, 1e-9) - f0).abs() < 1e-9);
            assert!((f_unchecked(p, -1e-9) - f0).abs() < 1e-9);
        }
    }

    #[test]
    fn poles_are_rejected() {
        let e = interval_branch(Parity::S, 1.0, PI * PI).unwrap_err();
        assert!(matches!(e, DtnError::Pole { .. }));
        assert!(interval_branch(Parity::A, 1.0, PI * PI).is_ok());
        assert!(interval_branch(Parity::A, 2.0, PI * PI).is_err());
    }

    #[test]
    fn pieces() {
        assert_eq!(piece_index(Parity::S, 5.0), 1);
        assert_eq!(piece_index(Parity::S, 10.0), 2);
        assert_eq!(piece_index(Parity::A, 10.0), 1);
        assert_eq!(piece_index(Parity::A, 40.0), 2);
        for n in 1..9 {
            let (p, m) = piece_parity(n);
            assert_eq!(piece(p, m), n);
        }
    }

    #[test]
    fn inverse_round_trip() {
        for p in [Parity::S, Parity::A] {
            for m in 1..5 {
                for &y in &[-1e4, -30.0, -1.0, 0.0, 0.7, 3.0, 50.0, 1e5] {
                    let x = f_inverse(p, m, y).unwrap();
                    assert!(x > dirichlet_1d(p, m - 1) && x < dirichlet_1d(p, m));
                    let back = f_unchecked(p, x);
                    assert!((back - y).abs() <= 1e-8 * y.abs().max(1.0), "p={p:?} m={m} y={y} back={back}");
                }
            }
        }
    }

    #[test]
    fn derivative_matches_difference() {
        for p in [Parity::S, Parity::A] {
            for &x in &[-40.0, -1.0, -1e-3, 0.0, 1e-3, 2.0, 20.0, 60.0] {
                let h = 1e-5;
                let fd = (f_unchecked(p, x + h) - f_unchecked(p, x - h)) / (2.0 * h);
                let d = f_derivative(p, x);
                assert!((fd - d).abs() < 1e-7 * d.abs().max(1.0), "p={p:?} x={x}: {d} vs {fd}");
            }
        }
    }
}
