//! Adaptive Gauss–Kronrod (7/15) quadrature.

use crate::error::{DtnError, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_0,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_DEPTH: u32 = 50;

/// Integral of `f` over `[a, b]` to absolute tolerance `abs_tol`.
///
/// Intervals are bisected until the Gauss/Kronrod difference on each piece
/// falls below its share of the tolerance. Panels are summed left to right, so
/// the result is reproducible bit for bit.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (value, _) = recurse(&f, a, b, abs_tol, 0)?;
    Ok(value)
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        kronrod += WGK[i] * s;
        if i % 2 == 1 {
            gauss += WG[i / 2] * s;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> Result<(f64, f64)> {
    let (value, err) = panel(f, a, b);
    if !value.is_finite() {
        return Err(DtnError::Convergence(format!("non-finite integrand on [{a}, {b}]")));
    }
    if err <= tol || depth >= MAX_DEPTH {
        if err > tol && err > 1e3 * tol {
            return Err(DtnError::Convergence(format!(
                "quadrature error {err:e} above tolerance {tol:e} on [{a}, {b}]"
            )));
        }
        return Ok((value, err));
    }
    let m = 0.5 * (a + b);
    let (l, el) = recurse(f, a, m, 0.5 * tol, depth + 1)?;
    let (r, er) = recurse(f, m, b, 0.5 * tol, depth + 1)?;
    Ok((l + r, el + er))
}
