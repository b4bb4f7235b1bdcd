//! Domain descriptors, branch labels and spectra.

use serde::{Deserialize, Serialize};

use crate::bem::CurveSpec;
use crate::error::{DtnError, Result};

/// A domain on which DtN spectra can be computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainSpec {
    /// The interval `(-α/2, α/2)`.
    Interval { alpha: f64 },
    /// The disk of the given radius centred at the origin.
    Disk { radius: f64 },
    /// The `dim`-dimensional ball, `dim >= 3`.
    Ball { dim: u32, radius: f64 },
    /// The box `(-α_1, α_1) × … × (-α_d, α_d)`, `d >= 2`.
    Cuboid { half_widths: Vec<f64> },
    /// A smooth closed planar curve, handled by the boundary solver.
    Curve { curve: CurveSpec },
}

impl DomainSpec {
    pub fn interval(alpha: f64) -> Self {
        Self::Interval { alpha }
    }

    pub fn unit_disk() -> Self {
        Self::Disk { radius: 1.0 }
    }

    pub fn unit_ball(dim: u32) -> Self {
        Self::Ball { dim, radius: 1.0 }
    }

    pub fn cuboid(half_widths: &[f64]) -> Self {
        Self::Cuboid { half_widths: half_widths.to_vec() }
    }

    /// Square with the given side length.
    pub fn square(side: f64) -> Self {
        Self::cuboid(&[0.5 * side, 0.5 * side])
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(DtnError::Domain(format!("{name} must be finite and > 0, got {v}")))
            }
        };
        match self {
            Self::Interval { alpha } => positive("interval length", *alpha),
            Self::Disk { radius } => positive("radius", *radius),
            Self::Ball { dim, radius } => {
                if *dim < 3 {
                    return Err(DtnError::Domain(format!("ball dimension must be >= 3, got {dim}")));
                }
                positive("radius", *radius)
            }
            Self::Cuboid { half_widths } => {
                if half_widths.len() < 2 {
                    return Err(DtnError::Domain("cuboid needs at least two half-widths".into()));
                }
                half_widths.iter().try_for_each(|&a| positive("half-width", a))
            }
            Self::Curve { curve } => curve.build().map(|_| ()),
        }
    }

    /// Spatial dimension.
    pub fn dim(&self) -> usize {
        match self {
            Self::Interval { .. } => 1,
            Self::Disk { .. } | Self::Curve { .. } => 2,
            Self::Ball { dim, .. } => *dim as usize,
            Self::Cuboid { half_widths } => half_widths.len(),
        }
    }

    /// `|Ω|` for the closed-form domains.
    pub fn volume(&self) -> Result<f64> {
        match self {
            Self::Interval { alpha } => Ok(*alpha),
            Self::Disk { radius } => Ok(std::f64::consts::PI * radius * radius),
            Self::Ball { dim, radius } => Ok(unit_ball_volume(*dim) * radius.powi(*dim as i32)),
            Self::Cuboid { half_widths } => Ok(half_widths.iter().map(|a| 2.0 * a).product()),
            Self::Curve { curve } => Ok(curve.build()?.area()),
        }
    }

    /// `|∂Ω|`; for the interval this is the counting measure of its two end points.
    pub fn boundary_measure(&self) -> Result<f64> {
        match self {
            Self::Interval { .. } => Ok(2.0),
            Self::Disk { radius } => Ok(2.0 * std::f64::consts::PI * radius),
            Self::Ball { dim, radius } => {
                Ok(f64::from(*dim) * unit_ball_volume(*dim) * radius.powi(*dim as i32 - 1))
            }
            Self::Cuboid { half_widths } => {
                let sides: Vec<f64> = half_widths.iter().map(|a| 2.0 * a).collect();
                let total: f64 = sides.iter().product();
                Ok(sides.iter().map(|s| 2.0 * total / s).sum())
            }
            Self::Curve { curve } => Ok(curve.build()?.perimeter()),
        }
    }

    /// The same domain dilated by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        match self {
            Self::Interval { alpha } => Self::Interval { alpha: alpha * factor },
            Self::Disk { radius } => Self::Disk { radius: radius * factor },
            Self::Ball { dim, radius } => Self::Ball { dim: *dim, radius: radius * factor },
            Self::Cuboid { half_widths } => Self::Cuboid {
                half_widths: half_widths.iter().map(|a| a * factor).collect(),
            },
            Self::Curve { curve } => Self::Curve { curve: curve.scaled(factor) },
        }
    }
}

/// Volume of the unit ball in `R^d`.
pub fn unit_ball_volume(d: u32) -> f64 {
    // ω_d = 2π/d · ω_{d-2}, ω_0 = 1, ω_1 = 2
    let mut w = if d % 2 == 0 { 1.0 } else { 2.0 };
    let mut k = if d % 2 == 0 { 2 } else { 3 };
    while k <= d {
        w *= 2.0 * std::f64::consts::PI / f64::from(k);
        k += 2;
    }
    w
}

/// Symmetric (`s`) or antisymmetric (`a`) one-dimensional factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    #[serde(rename = "s")]
    S,
    #[serde(rename = "a")]
    A,
}

impl Parity {
    pub fn symbol(self) -> char {
        match self {
            Self::S => 's',
            Self::A => 'a',
        }
    }
}

/// Which family of eigenvalue curves a value belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BranchLabel {
    Interval { parity: Parity },
    Disk { m: u32 },
    Ball { dim: u32, m: u32 },
    Cuboid { parities: Vec<Parity>, modes: Vec<u32> },
    /// Position in the sorted spectrum of a boundary-element computation.
    Numerical { index: usize },
}

impl BranchLabel {
    /// Short name used for CSV headers, e.g. `s`, `m3`, `sa_1_2`.
    pub fn short_name(&self) -> String {
        match self {
            Self::Interval { parity } => parity.symbol().to_string(),
            Self::Disk { m } | Self::Ball { m, .. } => format!("m{m}"),
            Self::Cuboid { parities, modes } => {
                let p: String = parities.iter().map(|p| p.symbol()).collect();
                let m: Vec<String> = modes.iter().map(|m| m.to_string()).collect();
                format!("{p}_{}", m.join("_"))
            }
            Self::Numerical { index } => format!("k{index}"),
        }
    }
}

/// A branch label together with the interval of `Λ` on which the branch is
/// real-analytic. `None` stands for an infinite end point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchId {
    pub label: BranchLabel,
    pub continuity: (Option<f64>, Option<f64>),
}

impl BranchId {
    pub fn contains(&self, lambda: f64) -> bool {
        self.continuity.0.map_or(true, |lo| lambda > lo)
            && self.continuity.1.map_or(true, |hi| lambda < hi)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub sigma: f64,
    pub multiplicity: usize,
    pub branch: BranchId,
}

/// DtN eigenvalues at a fixed `Λ`, sorted ascending.
///
/// Values from distinct branches are never merged; `near_degenerate` records
/// whether two of them lie within `1e-9` of each other.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub lambda: f64,
    pub entries: Vec<SpectrumEntry>,
    pub near_degenerate: bool,
}

pub const DEGENERACY_TOL: f64 = 1e-9;

impl Spectrum {
    pub fn new(lambda: f64, mut entries: Vec<SpectrumEntry>) -> Self {
        entries.sort_by(|a, b| a.sigma.total_cmp(&b.sigma).then_with(|| a.branch.label.cmp(&b.branch.label)));
        let near_degenerate = entries
            .windows(2)
            .any(|w| (w[1].sigma - w[0].sigma).abs() <= DEGENERACY_TOL);
        Self { lambda, entries, near_degenerate }
    }

    /// All eigenvalues, each repeated according to its multiplicity.
    pub fn values(&self) -> Vec<f64> {
        self.entries
            .iter()
            .flat_map(|e| std::iter::repeat(e.sigma).take(e.multiplicity))
            .collect()
    }

    /// The `k` smallest eigenvalues counted with multiplicity.
    pub fn first(&self, k: usize) -> Vec<f64> {
        let mut v = self.values();
        v.truncate(k);
        v
    }

    /// Number of eigenvalues (with multiplicity).
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Keeps the entries needed to list the `k` smallest eigenvalues.
    pub(crate) fn truncate_to(&mut self, k: usize) {
        let mut seen = 0;
        let mut keep = 0;
        for e in &self.entries {
            if seen >= k {
                break;
            }
            seen += e.multiplicity;
            keep += 1;
        }
        self.entries.truncate(keep);
        self.near_degenerate = self
            .entries
            .windows(2)
            .any(|w| (w[1].sigma - w[0].sigma).abs() <= DEGENERACY_TOL);
    }
}

/// Boundary condition for Laplace spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryCondition {
    Dirichlet,
    Neumann,
}
