//! Bessel functions of real order and positive real argument.
//!
//! Evaluation strategy for `J`/`Y`:
//!
//! * `x >= max(25, ν²/2)`: Hankel asymptotic expansion, summed until the terms
//!   drop below machine precision.
//! * `x < 2`: Temme's series for `Y_μ`, `|μ| <= 1/2`, upward recurrence for `Y`,
//!   and the continued fraction for `J_ν'/J_ν` normalised by the Wronskian.
//! * otherwise: Steed's complex continued fraction in place of Temme's series.
//!
//! `I`/`K` follow the same layout (Temme series below `x = 2`, Steed's CF2 above)
//! and are produced exponentially scaled, `I e^{-x}` and `K e^{x}`, so that
//! ratios stay representable for large arguments.
//!
//! Order `1/2` is evaluated from its elementary closed form.

use std::f64::consts::{FRAC_2_PI, PI};

use crate::error::{DtnError, Result};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 1_000_000;
const TEMME_XMIN: f64 = 2.0;
/// Largest argument for which the unscaled `I` is returned.
const I_OVERFLOW_ARG: f64 = 700.0;

/// Coefficients of `1/Γ(z) = Σ c_k z^k` (k = 1..26).
const RGAMMA_SERIES: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_8,
    -0.042_002_635_034_095_2,
    0.166_538_611_382_291_5,
    -0.042_197_734_555_544_3,
    -0.009_621_971_527_877_0,
    0.007_218_943_246_663_0,
    -0.001_165_167_591_859_1,
    -0.000_215_241_674_114_9,
    0.000_128_050_282_388_2,
    -0.000_020_134_854_780_7,
    -0.000_001_250_493_482_1,
    0.000_001_133_027_232_0,
    -0.000_000_205_633_841_7,
    0.000_000_006_116_095_0,
    0.000_000_005_002_007_5,
    -0.000_000_001_181_274_6,
    0.000_000_000_104_342_7,
    0.000_000_000_007_782_3,
    -0.000_000_000_003_696_8,
    0.000_000_000_000_510_0,
    -0.000_000_000_000_020_6,
    -0.000_000_000_000_005_4,
    0.000_000_000_000_001_4,
    0.000_000_000_000_000_1,
];

/// The four real cylinder-function families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum BesselKind {
    J,
    Y,
    I,
    K,
}

/// Nonnegative order `ν`. Integer and half-integer orders are exact in `f64`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, serde::Serialize, serde::Deserialize)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if nu.is_finite() && nu >= 0.0 {
            Ok(Self(nu))
        } else {
            Err(DtnError::Domain(format!("Bessel order must be finite and >= 0, got {nu}")))
        }
    }

    pub fn integer(m: u32) -> Self {
        Self(f64::from(m))
    }

    /// The order `k + 1/2`.
    pub fn half_integer(k: u32) -> Self {
        Self(f64::from(k) + 0.5)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `J_ν`, `Y_ν` and their derivatives at one argument.
#[derive(Debug, Clone, Copy)]
pub(crate) struct JyValues {
    pub j: f64,
    pub jp: f64,
    pub y: f64,
    pub yp: f64,
}

/// `I_ν e^{-x}`, `I_ν' e^{-x}`, `K_ν e^{x}`, `K_ν' e^{x}`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct IkScaled {
    pub i: f64,
    pub ip: f64,
    pub k: f64,
    pub kp: f64,
}

/// Value of a Bessel function of the given kind.
///
/// `J` and `I` accept `z = 0`; `Y` and `K` require `z > 0`. `I` overflows for
/// `z > 700`; use [`bessel_scaled`] there.
pub fn bessel(kind: BesselKind, order: BesselOrder, z: f64) -> Result<f64> {
    Ok(evaluate(kind, order.value(), z)?.0)
}

/// First derivative in `z`, obtained from neighbouring orders through the
/// recurrences `C_ν' = -C_{ν+1} + (ν/z) C_ν` (J, Y), `I_ν' = I_{ν+1} + (ν/z) I_ν`
/// and `K_ν' = -K_{ν+1} + (ν/z) K_ν`.
pub fn bessel_derivative(kind: BesselKind, order: BesselOrder, z: f64) -> Result<f64> {
    Ok(evaluate(kind, order.value(), z)?.1)
}

/// Exponentially scaled value: `I_ν(z) e^{-z}` and `K_ν(z) e^{z}`; `J`, `Y` unscaled.
pub fn bessel_scaled(kind: BesselKind, order: BesselOrder, z: f64) -> Result<f64> {
    let nu = order.value();
    check_argument(kind, z)?;
    match kind {
        BesselKind::J | BesselKind::Y => bessel(kind, order, z),
        BesselKind::I if z == 0.0 => Ok(if nu == 0.0 { 1.0 } else { 0.0 }),
        BesselKind::I => Ok(ik_scaled(nu, z)?.i),
        BesselKind::K => Ok(ik_scaled(nu, z)?.k),
    }
}

fn check_argument(kind: BesselKind, z: f64) -> Result<()> {
    if !z.is_finite() {
        return Err(DtnError::Domain(format!("non-finite Bessel argument {z}")));
    }
    match kind {
        BesselKind::J | BesselKind::I if z >= 0.0 => Ok(()),
        BesselKind::Y | BesselKind::K if z > 0.0 => Ok(()),
        _ => Err(DtnError::Domain(format!("{kind:?} undefined at z = {z}"))),
    }
}

/// (value, derivative)
fn evaluate(kind: BesselKind, nu: f64, z: f64) -> Result<(f64, f64)> {
    BesselOrder::new(nu)?;
    check_argument(kind, z)?;
    if z == 0.0 {
        // J and I at the origin
        let value = if nu == 0.0 { 1.0 } else { 0.0 };
        let derivative = if nu == 1.0 {
            0.5
        } else if nu > 0.0 && nu < 1.0 {
            f64::INFINITY
        } else {
            0.0
        };
        return Ok((value, derivative));
    }
    match kind {
        BesselKind::J => {
            let v = jy(nu, z)?;
            Ok((v.j, v.jp))
        }
        BesselKind::Y => {
            let v = jy(nu, z)?;
            Ok((v.y, v.yp))
        }
        BesselKind::I => {
            if z > I_OVERFLOW_ARG {
                return Err(DtnError::Overflow(format!("I_{nu}({z}) exceeds f64 range")));
            }
            let v = ik_scaled(nu, z)?;
            let e = z.exp();
            Ok((v.i * e, v.ip * e))
        }
        BesselKind::K => {
            let v = ik_scaled(nu, z)?;
            let e = (-z).exp();
            Ok((v.k * e, v.kp * e))
        }
    }
}

/// `z J_ν'(z) / J_ν(z)`; infinite at zeros of `J_ν`.
pub fn j_log_derivative(nu: f64, z: f64) -> Result<f64> {
    if z == 0.0 {
        return Ok(nu);
    }
    let v = jy(nu, z)?;
    Ok(z * v.jp / v.j)
}

/// `z I_ν'(z) / I_ν(z)`, evaluated from scaled values (no overflow).
pub fn i_log_derivative(nu: f64, z: f64) -> Result<f64> {
    if z == 0.0 {
        return Ok(nu);
    }
    let v = ik_scaled(nu, z)?;
    Ok(z * v.ip / v.i)
}

/// `I_{ν+1}(z) / I_ν(z)` for `z > 0`, from two scaled evaluations (no
/// cancellation for small `z`).
pub fn i_ratio(nu: f64, z: f64) -> Result<f64> {
    Ok(ik_scaled(nu + 1.0, z)?.i / ik_scaled(nu, z)?.i)
}

/// `J_{ν+1}(z) / J_ν(z)` for `z > 0`; infinite at zeros of `J_ν`.
pub fn j_ratio(nu: f64, z: f64) -> Result<f64> {
    Ok(jy(nu + 1.0, z)?.j / jy(nu, z)?.j)
}

fn hankel_applies(nu: f64, x: f64) -> bool {
    x >= 25.0_f64.max(0.5 * nu * nu)
}

pub(crate) fn jy(nu: f64, x: f64) -> Result<JyValues> {
    if !(x > 0.0) {
        return Err(DtnError::Domain(format!("J/Y evaluation needs x > 0, got {x}")));
    }
    if nu == 0.5 {
        return Ok(jy_half(x));
    }
    if hankel_applies(nu, x) {
        let (j0, y0) = hankel(nu, x);
        let (j1, y1) = hankel(nu + 1.0, x);
        return Ok(JyValues {
            j: j0,
            jp: -j1 + nu / x * j0,
            y: y0,
            yp: -y1 + nu / x * y0,
        });
    }
    jy_temme_steed(nu, x)
}

fn jy_half(x: f64) -> JyValues {
    let s = (FRAC_2_PI / x).sqrt();
    let (sn, cs) = x.sin_cos();
    let j = s * sn;
    let y = -s * cs;
    // J_{3/2} = s (sin x / x - cos x), Y_{3/2} = -s (cos x / x + sin x)
    let j32 = s * sinc_minus_cos(x);
    let y32 = -s * (cs / x + sn);
    JyValues {
        j,
        jp: -j32 + 0.5 / x * j,
        y,
        yp: -y32 + 0.5 / x * y,
    }
}

/// `sin x / x - cos x`, with a series near zero to avoid cancellation.
fn sinc_minus_cos(x: f64) -> f64 {
    if x.abs() < 0.5 {
        // Σ_{k>=1} (-1)^{k+1} 2k x^{2k} / (2k+1)!
        let x2 = x * x;
        let mut term = x2 / 3.0; // k = 1
        let mut sum = term;
        let mut k = 1.0;
        while term.abs() > 1e-18 * sum.abs() {
            k += 1.0;
            term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0)) * (2.0 * k) / (2.0 * k - 2.0);
            sum += term;
        }
        sum
    } else {
        x.sin() / x - x.cos()
    }
}

/// `cosh x - sinh x / x`, with a series near zero.
fn cosh_minus_sinhc(x: f64) -> f64 {
    if x.abs() < 0.5 {
        let x2 = x * x;
        let mut term = x2 / 3.0;
        let mut sum = term;
        let mut k = 1.0;
        while term.abs() > 1e-18 * sum.abs() {
            k += 1.0;
            term *= x2 / ((2.0 * k) * (2.0 * k + 1.0)) * (2.0 * k) / (2.0 * k - 2.0);
            sum += term;
        }
        sum
    } else {
        x.cosh() - x.sinh() / x
    }
}

/// Hankel's expansion; returns `(J_ν(x), Y_ν(x))`.
fn hankel(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut k = 1usize;
    loop {
        let kf = k as f64;
        let next = term * (mu - (2.0 * kf - 1.0).powi(2)) / (8.0 * kf * x);
        if next.abs() > term.abs() && k > 2 {
            break; // asymptotic series started diverging
        }
        term = next;
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 * p.abs().max(q.abs()) || term == 0.0 {
            break;
        }
        k += 1;
        if k > 400 {
            break;
        }
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    let (s, c) = chi.sin_cos();
    let amp = (FRAC_2_PI / x).sqrt();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}

/// `(gam1, gam2, 1/Γ(1+μ), 1/Γ(1-μ))` for `|μ| <= 1/2`.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    // 1/Γ(1+x) = Σ_{k>=0} c_{k+1} x^k
    let rgamma1p = |x: f64| -> f64 {
        RGAMMA_SERIES.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    };
    let gampl = rgamma1p(mu);
    let gammi = rgamma1p(-mu);
    // gam1 = (1/Γ(1-μ) - 1/Γ(1+μ)) / (2μ) = -Σ_{j odd} c_{j+1} μ^{j-1}
    let mu2 = mu * mu;
    let mut gam1 = 0.0;
    let mut pow = 1.0;
    for j in (1..RGAMMA_SERIES.len()).step_by(2) {
        gam1 -= RGAMMA_SERIES[j] * pow;
        pow *= mu2;
    }
    let gam2 = 0.5 * (gammi + gampl);
    (gam1, gam2, gampl, gammi)
}

fn jy_temme_steed(xnu: f64, x: f64) -> Result<JyValues> {
    let nl = if x < TEMME_XMIN {
        (xnu + 0.5) as usize
    } else {
        (xnu - x + 1.5).max(0.0) as usize
    };
    let xmu = xnu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1 for J_ν'/J_ν (modified Lentz)
    let mut isign = 1.0;
    let mut h = (xnu * xi).max(FPMIN);
    let mut b = xi2 * xnu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(DtnError::Convergence(format!("J continued fraction at x = {x}")));
    }

    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let rjp1 = rjpl;
    let mut fact = xnu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1);
    if x < TEMME_XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = FRAC_2_PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let e = e.exp();
        let mut p = e / (gampl * PI);
        let mut q = 1.0 / (e * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut c = 1.0;
        let d = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut converged = false;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * (ff + r * q);
            sum += del;
            let del1 = c * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(DtnError::Convergence(format!("Temme series for Y at x = {x}")));
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut converged = false;
        for i in 1..MAXIT {
            a += 2.0 * i as f64;
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di = -di / den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(DtnError::Convergence(format!("Steed CF2 for J/Y at x = {x}")));
        }
        let gam = (p - f) / q;
        rjmu = (w / ((p - f) * gam + q)).sqrt().copysign(rjl);
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }
    let fact = rjmu / rjl;
    let j = rjl1 * fact;
    let jp = rjp1 * fact;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    Ok(JyValues {
        j,
        jp,
        y: rymu,
        yp: xnu * xi * rymu - ry1,
    })
}

pub(crate) fn ik_scaled(xnu: f64, x: f64) -> Result<IkScaled> {
    if !(x > 0.0) {
        return Err(DtnError::Domain(format!("I/K evaluation needs x > 0, got {x}")));
    }
    if xnu == 0.5 {
        return Ok(ik_half_scaled(x));
    }
    let nl = (xnu + 0.5) as usize;
    let xmu = xnu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    // CF1 for I_ν'/I_ν
    let mut h = (xnu * xi).max(FPMIN);
    let mut b = xi2 * xnu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = 1.0 / (b + d);
        c = b + 1.0 / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(DtnError::Convergence(format!("I continued fraction at x = {x}")));
    }
    let mut ril = FPMIN;
    let mut ripl = h * ril;
    let ril1 = ril;
    let rip1 = ripl;
    let mut fact = xnu * xi;
    for _ in 0..nl {
        let ritemp = fact * ril + ripl;
        fact -= xi;
        ripl = fact * ritemp + ril;
        ril = ritemp;
    }
    let f = ripl / ril;

    // K_μ e^x and K_{μ+1} e^x
    let (mut rkmu, mut rk1);
    if x < TEMME_XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let e = e.exp();
        let mut p = 0.5 * e / gampl;
        let mut q = 0.5 / (e * gammi);
        let mut c = 1.0;
        let d = x2 * x2;
        let mut sum1 = p;
        let mut converged = false;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= d / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * ff;
            sum += del;
            let del1 = c * (p - fi * ff);
            sum1 += del1;
            if del.abs() < sum.abs() * EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(DtnError::Convergence(format!("Temme series for K at x = {x}")));
        }
        let scale = x.exp();
        rkmu = sum * scale;
        rk1 = sum1 * xi2 * scale;
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - xmu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        let mut converged = false;
        for i in 1..MAXIT {
            let fi = i as f64;
            a -= 2.0 * fi;
            c = -a * c / (fi + 1.0);
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh = (b * d - 1.0) * delh;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(DtnError::Convergence(format!("Steed CF2 for K at x = {x}")));
        }
        h *= a1;
        rkmu = (PI / (2.0 * x)).sqrt() / s;
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
    }
    let rkmup = xmu * xi * rkmu - rk1;
    let rimu = xi / (f * rkmu - rkmup);
    let i = rimu * ril1 / ril;
    let ip = rimu * rip1 / ril;
    for n in 1..=nl {
        let rktemp = (xmu + n as f64) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    Ok(IkScaled {
        i,
        ip,
        k: rkmu,
        kp: xnu * xi * rkmu - rk1,
    })
}

fn ik_half_scaled(x: f64) -> IkScaled {
    // I_{1/2} = sqrt(2/(πx)) sinh x, K_{1/2} = sqrt(π/(2x)) e^{-x}
    let s = (FRAC_2_PI / x).sqrt();
    let i = s * 0.5 * (-(-2.0 * x).exp_m1());
    // I_{3/2} = sqrt(2/(πx)) (cosh x - sinh x / x)
    let i32 = s * cosh_minus_sinhc(x) * (-x).exp();
    let k = (PI / (2.0 * x)).sqrt();
    let k32 = k * (1.0 + 1.0 / x);
    IkScaled {
        i,
        ip: i32 + 0.5 / x * i,
        k,
        kp: -k32 + 0.5 / x * k,
    }
}
