//! Bracketed scalar root finding.

use crate::error::{DtnError, Result};

const MAX_ITER: usize = 200;

/// Brent's method on a bracket `[a, b]` with `f(a)` and `f(b)` of opposite
/// sign (or one of them zero). Terminates when the bracket is narrower than
/// `xtol` (absolute) plus a few ulps of the iterate.
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, xtol: f64) -> Result<f64> {
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.is_nan() || fb.is_nan() || fa.signum() == fb.signum() {
        return Err(DtnError::Convergence(format!(
            "root not bracketed on [{a}, {b}] (f = {fa}, {fb})"
        )));
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
        if fb.is_nan() {
            return Err(DtnError::Convergence(format!("function returned NaN at {b}")));
        }
    }
    Err(DtnError::Convergence("Brent iteration limit reached".into()))
}

/// Newton's method safeguarded by bisection on a sign-changing bracket.
///
/// `fdf` returns the function value and its derivative. Starting from `guess`
/// (clamped into the bracket), a Newton step is accepted only when it stays
/// inside the current bracket and shrinks the residual fast enough.
pub fn safeguarded_newton<F: FnMut(f64) -> (f64, f64)>(
    mut fdf: F,
    lo: f64,
    hi: f64,
    guess: f64,
    xtol: f64,
) -> Result<f64> {
    let (flo, _) = fdf(lo);
    let (fhi, _) = fdf(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(DtnError::Convergence(format!(
            "root not bracketed on [{lo}, {hi}]"
        )));
    }
    // orient so that f(xl) < 0 < f(xh)
    let (mut xl, mut xh) = if flo < 0.0 { (lo, hi) } else { (hi, lo) };
    let mut x = if guess > lo.min(hi) && guess < lo.max(hi) {
        guess
    } else {
        0.5 * (lo + hi)
    };
    let mut dx_old = (hi - lo).abs();
    let mut dx = dx_old;
    let (mut f, mut df) = fdf(x);
    for _ in 0..MAX_ITER {
        let newton_out = ((x - xh) * df - f) * ((x - xl) * df - f) > 0.0;
        if newton_out || (2.0 * f).abs() > (dx_old * df).abs() {
            dx_old = dx;
            dx = 0.5 * (xh - xl);
            x = xl + dx;
        } else {
            dx_old = dx;
            dx = f / df;
            x -= dx;
        }
        if dx.abs() < xtol + 4.0 * f64::EPSILON * x.abs() {
            return Ok(x);
        }
        let r = fdf(x);
        f = r.0;
        df = r.1;
        if f == 0.0 {
            return Ok(x);
        }
        if f < 0.0 {
            xl = x;
        } else {
            xh = x;
        }
    }
    Err(DtnError::Convergence("safeguarded Newton iteration limit reached".into()))
}
