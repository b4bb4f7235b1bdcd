//! Closed planar curves given by trigonometric polynomials.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{DtnError, Result};

/// Resolution used for the regularity and simplicity checks and for the
/// reference perimeter and area.
const CHECK_POINTS: usize = 2048;

fn one() -> f64 {
    1.0
}

/// Curve definition as read from a JSON curve file.
///
/// ```json
/// {"type": "kite"}
/// {"type": "circle", "radius": 1.0}
/// {"type": "fourier", "x_cos": [0, 1], "y_sin": [0, 2]}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CurveSpec {
    Circle {
        #[serde(default = "one")]
        radius: f64,
        #[serde(default)]
        center: [f64; 2],
    },
    Ellipse {
        a: f64,
        b: f64,
    },
    /// `(1.5 cos t + 0.7 cos 2t - 0.4, 1.5 sin t - 0.3 cos t)`.
    Kite,
    /// `x(t) = Σ_k x_cos[k] cos kt + x_sin[k] sin kt`, likewise `y`; index 0 is
    /// the constant term (`x_sin[0]`, `y_sin[0]` are ignored).
    Fourier {
        #[serde(default)]
        x_cos: Vec<f64>,
        #[serde(default)]
        x_sin: Vec<f64>,
        #[serde(default)]
        y_cos: Vec<f64>,
        #[serde(default)]
        y_sin: Vec<f64>,
    },
    /// Equispaced samples `x(2πj/n)`, interpolated by the trigonometric
    /// polynomial of degree `< n/2`.
    Samples { points: Vec<[f64; 2]> },
}

impl CurveSpec {
    pub fn circle(radius: f64) -> Self {
        Self::Circle { radius, center: [0.0, 0.0] }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| DtnError::Input(format!("curve file: {e}")))
    }

    pub fn build(&self) -> Result<BoundaryCurve> {
        let curve = match self {
            Self::Circle { radius, center } => BoundaryCurve::from_fourier(
                vec![center[0], *radius],
                vec![0.0, 0.0],
                vec![center[1], 0.0],
                vec![0.0, *radius],
            ),
            Self::Ellipse { a, b } => {
                BoundaryCurve::from_fourier(vec![0.0, *a], vec![0.0, 0.0], vec![0.0, 0.0], vec![0.0, *b])
            }
            Self::Kite => BoundaryCurve::from_fourier(
                vec![-0.4, 1.5, 0.7],
                vec![0.0, 0.0, 0.0],
                vec![0.0, -0.3, 0.0],
                vec![0.0, 1.5, 0.0],
            ),
            Self::Fourier { x_cos, x_sin, y_cos, y_sin } => BoundaryCurve::from_fourier(
                x_cos.clone(),
                x_sin.clone(),
                y_cos.clone(),
                y_sin.clone(),
            ),
            Self::Samples { points } => BoundaryCurve::from_samples(points)?,
        };
        curve.validate()?;
        Ok(curve)
    }

    /// The curve dilated about the origin.
    pub fn scaled(&self, factor: f64) -> Self {
        let s = |v: &Vec<f64>| v.iter().map(|c| c * factor).collect::<Vec<_>>();
        match self {
            Self::Circle { radius, center } => Self::Circle {
                radius: radius * factor,
                center: [center[0] * factor, center[1] * factor],
            },
            Self::Ellipse { a, b } => Self::Ellipse { a: a * factor, b: b * factor },
            Self::Kite => Self::Kite.to_fourier().scaled(factor),
            Self::Fourier { x_cos, x_sin, y_cos, y_sin } => Self::Fourier {
                x_cos: s(x_cos),
                x_sin: s(x_sin),
                y_cos: s(y_cos),
                y_sin: s(y_sin),
            },
            Self::Samples { points } => Self::Samples {
                points: points.iter().map(|p| [p[0] * factor, p[1] * factor]).collect(),
            },
        }
    }

    fn to_fourier(&self) -> Self {
        match self.build() {
            Ok(c) => Self::Fourier { x_cos: c.xc, x_sin: c.xs, y_cos: c.yc, y_sin: c.ys },
            Err(_) => self.clone(),
        }
    }
}

/// A smooth, simple, positively oriented closed curve parametrised over
/// `[0, 2π)` by trigonometric polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCurve {
    xc: Vec<f64>,
    xs: Vec<f64>,
    yc: Vec<f64>,
    ys: Vec<f64>,
}

/// Position and first two derivatives at one parameter value.
#[derive(Debug, Clone, Copy)]
pub struct CurvePoint {
    pub x: [f64; 2],
    pub d1: [f64; 2],
    pub d2: [f64; 2],
}

impl CurvePoint {
    pub fn speed(&self) -> f64 {
        self.d1[0].hypot(self.d1[1])
    }

    /// Outward unit normal (tangent rotated clockwise).
    pub fn normal(&self) -> [f64; 2] {
        let s = self.speed();
        [self.d1[1] / s, -self.d1[0] / s]
    }

    /// Signed curvature, positive on convex arcs.
    pub fn curvature(&self) -> f64 {
        let s = self.speed();
        (self.d1[0] * self.d2[1] - self.d1[1] * self.d2[0]) / (s * s * s)
    }
}

impl BoundaryCurve {
    pub fn from_fourier(xc: Vec<f64>, xs: Vec<f64>, yc: Vec<f64>, ys: Vec<f64>) -> Self {
        let n = xc.len().max(xs.len()).max(yc.len()).max(ys.len()).max(1);
        let pad = |mut v: Vec<f64>| {
            v.resize(n, 0.0);
            v
        };
        let mut c = Self { xc: pad(xc), xs: pad(xs), yc: pad(yc), ys: pad(ys) };
        c.xs[0] = 0.0;
        c.ys[0] = 0.0;
        if c.signed_area() < 0.0 {
            // reverse orientation: t -> -t flips the sine coefficients
            c.xs.iter_mut().for_each(|v| *v = -*v);
            c.ys.iter_mut().for_each(|v| *v = -*v);
        }
        c
    }

    fn from_samples(points: &[[f64; 2]]) -> Result<Self> {
        let n = points.len();
        if n < 8 {
            return Err(DtnError::Geometry(format!("need at least 8 curve samples, got {n}")));
        }
        let kmax = (n - 1) / 2;
        let mut xc = vec![0.0; kmax + 1];
        let mut xs = vec![0.0; kmax + 1];
        let mut yc = vec![0.0; kmax + 1];
        let mut ys = vec![0.0; kmax + 1];
        for k in 0..=kmax {
            let (mut ax, mut bx, mut ay, mut by) = (0.0, 0.0, 0.0, 0.0);
            for (j, p) in points.iter().enumerate() {
                let t = 2.0 * PI * (j * k % n) as f64 / n as f64;
                let (s, c) = t.sin_cos();
                ax += p[0] * c;
                bx += p[0] * s;
                ay += p[1] * c;
                by += p[1] * s;
            }
            let w = if k == 0 { 1.0 / n as f64 } else { 2.0 / n as f64 };
            xc[k] = ax * w;
            xs[k] = bx * w;
            yc[k] = ay * w;
            ys[k] = by * w;
        }
        Ok(Self::from_fourier(xc, xs, yc, ys))
    }

    /// Highest harmonic present.
    pub fn degree(&self) -> usize {
        self.xc.len() - 1
    }

    pub fn eval(&self, t: f64) -> CurvePoint {
        let mut x = [0.0; 2];
        let mut d1 = [0.0; 2];
        let mut d2 = [0.0; 2];
        for k in 0..self.xc.len() {
            let kf = k as f64;
            let (s, c) = (kf * t).sin_cos();
            let coeffs = [(self.xc[k], self.xs[k]), (self.yc[k], self.ys[k])];
            for (i, &(a, b)) in coeffs.iter().enumerate() {
                x[i] += a * c + b * s;
                d1[i] += kf * (-a * s + b * c);
                d2[i] += -kf * kf * (a * c + b * s);
            }
        }
        CurvePoint { x, d1, d2 }
    }

    /// The same curve with parameter shifted, `t -> t + shift`.
    pub fn reparametrized(&self, shift: f64) -> Self {
        let mut out = self.clone();
        for k in 0..self.xc.len() {
            let (s, c) = (k as f64 * shift).sin_cos();
            out.xc[k] = self.xc[k] * c + self.xs[k] * s;
            out.xs[k] = -self.xc[k] * s + self.xs[k] * c;
            out.yc[k] = self.yc[k] * c + self.ys[k] * s;
            out.ys[k] = -self.yc[k] * s + self.ys[k] * c;
        }
        out
    }

    fn samples(&self, n: usize) -> Vec<CurvePoint> {
        (0..n).map(|j| self.eval(2.0 * PI * j as f64 / n as f64)).collect()
    }

    fn signed_area(&self) -> f64 {
        // exact for trigonometric polynomials once n exceeds twice the degree
        let n = (4 * self.xc.len()).max(64);
        let pts = self.samples(n);
        pts.iter().map(|p| p.x[0] * p.d1[1] - p.x[1] * p.d1[0]).sum::<f64>() * PI / n as f64
    }

    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    /// `∫ |x'(t)| dt` by the trapezoidal rule on `CHECK_POINTS` nodes.
    pub fn perimeter(&self) -> f64 {
        let pts = self.samples(CHECK_POINTS);
        pts.iter().map(|p| p.speed()).sum::<f64>() * 2.0 * PI / CHECK_POINTS as f64
    }

    /// Largest distance between two points of the curve.
    pub fn diameter(&self) -> f64 {
        let pts = self.samples(256);
        let mut d: f64 = 0.0;
        for (i, p) in pts.iter().enumerate() {
            for q in &pts[i + 1..] {
                d = d.max((p.x[0] - q.x[0]).hypot(p.x[1] - q.x[1]));
            }
        }
        d
    }

    /// Distance from `x` to the polygon through `CHECK_POINTS` curve samples.
    pub fn distance_to(&self, x: [f64; 2]) -> f64 {
        let pts = self.samples(CHECK_POINTS);
        let mut best = f64::INFINITY;
        for i in 0..pts.len() {
            let a = pts[i].x;
            let b = pts[(i + 1) % pts.len()].x;
            best = best.min(point_segment_distance(x, a, b));
        }
        best
    }

    /// Winding-number test against the sampled polygon.
    pub fn contains(&self, x: [f64; 2]) -> bool {
        let pts = self.samples(CHECK_POINTS);
        let mut inside = false;
        let n = pts.len();
        for i in 0..n {
            let a = pts[i].x;
            let b = pts[(i + 1) % n].x;
            if (a[1] > x[1]) != (b[1] > x[1]) {
                let xi = a[0] + (x[1] - a[1]) / (b[1] - a[1]) * (b[0] - a[0]);
                if x[0] < xi {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Checks that the parametrisation is regular and the curve simple.
    pub fn validate(&self) -> Result<()> {
        if self.xc.iter().chain(&self.xs).chain(&self.yc).chain(&self.ys).any(|v| !v.is_finite()) {
            return Err(DtnError::Geometry("non-finite curve coefficient".into()));
        }
        let pts = self.samples(CHECK_POINTS);
        let scale = pts.iter().map(|p| p.speed()).fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(DtnError::Geometry("curve degenerates to a point".into()));
        }
        if let Some(j) = pts.iter().position(|p| p.speed() < 1e-8 * scale) {
            return Err(DtnError::Geometry(format!(
                "irregular parametrisation: |x'(t)| ~ 0 at t = {}",
                2.0 * PI * j as f64 / CHECK_POINTS as f64
            )));
        }
        // offset by half a step so that symmetric self-intersections do not
        // fall exactly on polygon vertices
        let n = 512;
        let poly: Vec<CurvePoint> =
            (0..n).map(|j| self.eval(2.0 * PI * (j as f64 + 0.5) / n as f64)).collect();
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (a, b) = (poly[i].x, poly[(i + 1) % n].x);
                let (c, d) = (poly[j].x, poly[(j + 1) % n].x);
                if segments_intersect(a, b, c, d) {
                    return Err(DtnError::Geometry("curve is not simple".into()));
                }
            }
        }
        Ok(())
    }
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn segments_intersect(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

fn point_segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let t = if len2 > 0.0 { ((ap[0] * ab[0] + ap[1] * ab[1]) / len2).clamp(0.0, 1.0) } else { 0.0 };
    (ap[0] - t * ab[0]).hypot(ap[1] - t * ab[1])
}
