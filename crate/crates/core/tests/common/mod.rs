//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Tanh-sinh quadrature of `f` over `[a, b]`, refined until successive levels
/// agree to `tol` relative.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let eval = |t: f64| -> f64 {
        let u = 0.5 * PI * t.sinh();
        let x = u.tanh();
        let w = 0.5 * PI * t.cosh() / u.cosh().powi(2);
        if w < 1e-300 || (1.0 - x.abs()) * r <= f64::MIN_POSITIVE {
            return 0.0;
        }
        let y = c + r * x;
        if y <= a || y >= b {
            return 0.0;
        }
        f(y) * w
    };
    let tmax = 4.0;
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        if t > tmax {
            break;
        }
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut prev = sum * h * r;
    for _ in 0..12 {
        h *= 0.5;
        let mut k = 1;
        loop {
            let t = k as f64 * h;
            if t > tmax {
                break;
            }
            sum += eval(t) + eval(-t);
            k += 2;
        }
        let cur = sum * h * r;
        if (cur - prev).abs() <= tol * cur.abs().max(1e-300) {
            return cur;
        }
        prev = cur;
    }
    prev
}

/// Tanh-sinh over `[a, b]` split into panels of width at most `width`.
pub fn panels<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, width: f64) -> f64 {
    let n = ((b - a) / width).ceil().max(1.0) as usize;
    let h = (b - a) / n as f64;
    (0..n)
        .map(|i| tanh_sinh(f, a + i as f64 * h, a + (i + 1) as f64 * h, 1e-15))
        .sum()
}

/// Upper cutoff for integrands decaying like `exp(-x sinh t)` or `exp(-x cosh t)`.
fn t_cut(x: f64, nu: f64) -> f64 {
    // need x sinh t - nu t > 750
    let mut t: f64 = 1.0;
    while x * t.sinh() - nu * t < 750.0 {
        t += 0.5;
    }
    t
}

/// `J_ν(x)` from its integral representation.
pub fn j_integral(nu: f64, x: f64) -> f64 {
    let w = (2.0 / (x + nu)).min(0.25);
    let first = panels(&|th: f64| (nu * th - x * th.sin()).cos(), 0.0, PI, w) / PI;
    let s = (nu * PI).sin();
    if s.abs() < 1e-300 || nu.fract() == 0.0 {
        return first;
    }
    let second = panels(&|t: f64| (-x * t.sinh() - nu * t).exp(), 0.0, t_cut(x, 0.0), 0.25);
    first - s / PI * second
}

/// `Y_ν(x)` from its integral representation.
pub fn y_integral(nu: f64, x: f64) -> f64 {
    let w = (2.0 / (x + nu)).min(0.25);
    let first = panels(&|th: f64| (x * th.sin() - nu * th).sin(), 0.0, PI, w) / PI;
    let cnp = (nu * PI).cos();
    let second = panels(
        &|t: f64| ((nu * t).exp() + (-nu * t).exp() * cnp) * (-x * t.sinh()).exp(),
        0.0,
        t_cut(x, nu),
        0.25,
    );
    first - second / PI
}

/// `K_ν(x)` from `∫_0^∞ exp(-x cosh t) cosh(νt) dt`.
pub fn k_integral(nu: f64, x: f64) -> f64 {
    // scaled by e^{x} to keep the integrand O(1)
    let f = |t: f64| (-x * (t.cosh() - 1.0)).exp() * (nu * t).cosh();
    let mut t: f64 = 1.0;
    while x * (t.cosh() - 1.0) - nu * t < 750.0 {
        t += 0.5;
    }
    panels(&f, 0.0, t, 0.25) * (-x).exp()
}

/// Power series `Σ (±1)^k (x/2)^{2k+ν} / (k! Γ(k+ν+1))` with the Gamma factor
/// supplied as `gamma_nu1 = Γ(ν+1)`.
pub fn power_series(nu: f64, x: f64, gamma_nu1: f64, alternating: bool) -> f64 {
    let q = 0.25 * x * x;
    let mut term = (0.5 * x).powf(nu) / gamma_nu1;
    let mut sum = term;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (k + nu));
        if alternating {
            term = -term;
        }
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Bisection to full precision.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

pub fn assert_close(actual: f64, expected: f64, rel: f64, what: &str) {
    let err = (actual - expected).abs();
    assert!(
        err <= rel * expected.abs().max(1e-300),
        "{what}: got {actual:.17e}, expected {expected:.17e} (rel err {:.3e})",
        err / expected.abs()
    );
}
