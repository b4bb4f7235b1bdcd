//! Domain selection from command-line flags or JSON files.

use std::f64::consts::PI;
use std::fs;

use clap::Args;
use dtn_core::bem::CurveSpec;
use dtn_core::{DomainSpec, DtnError, Result};

#[derive(Debug, Clone, Args)]
pub struct DomainArgs {
    /// disk, ball<d> (e.g. ball3), interval, square, rectangle, cuboid,
    /// circle, kite, ellipse, or a JSON file holding a domain or curve.
    #[arg(long, default_value = "disk")]
    pub domain: String,
    /// Radius of disks, balls and circles.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Length of the interval.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// Side length of the square.
    #[arg(long, default_value_t = PI)]
    pub side: f64,
    /// Comma-separated half-widths of a rectangle or cuboid.
    #[arg(long, value_delimiter = ',')]
    pub half_widths: Vec<f64>,
    /// Semi-axes `a,b` of the ellipse.
    #[arg(long, value_delimiter = ',', default_value = "2,1")]
    pub axes: Vec<f64>,
    /// Quadrature nodes for curve domains.
    #[arg(long, default_value_t = 256)]
    pub n_nodes: usize,
}

impl DomainArgs {
    pub fn resolve(&self) -> Result<DomainSpec> {
        let name = self.domain.as_str();
        let d = match name {
            "disk" => DomainSpec::Disk { radius: self.radius },
            "interval" => DomainSpec::interval(self.alpha),
            "square" => DomainSpec::square(self.side),
            "rectangle" | "cuboid" => {
                if self.half_widths.len() < 2 {
                    return Err(DtnError::Input(format!("{name} needs --half-widths with at least two entries")));
                }
                DomainSpec::cuboid(&self.half_widths)
            }
            "circle" => DomainSpec::Curve { curve: CurveSpec::circle(self.radius) },
            "kite" => DomainSpec::Curve { curve: CurveSpec::Kite },
            "ellipse" => match self.axes[..] {
                [a, b] => DomainSpec::Curve { curve: CurveSpec::Ellipse { a, b } },
                _ => return Err(DtnError::Input("--axes takes two values".into())),
            },
            _ => match name.strip_prefix("ball").and_then(|d| d.parse::<u32>().ok()) {
                Some(dim) => DomainSpec::Ball { dim, radius: self.radius },
                None => load_domain_file(name)?,
            },
        };
        d.validate()?;
        Ok(d)
    }
}

/// A JSON file holding either a domain (`"kind"`) or a curve (`"type"`).
pub fn load_domain_file(path: &str) -> Result<DomainSpec> {
    let text = fs::read_to_string(path).map_err(|e| DtnError::Input(format!("unknown domain or unreadable file {path:?}: {e}")))?;
    if let Ok(d) = serde_json::from_str::<DomainSpec>(&text) {
        return Ok(d);
    }
    Ok(DomainSpec::Curve { curve: CurveSpec::from_json(&text)? })
}

pub fn load_curve_file(path: &str) -> Result<CurveSpec> {
    let text = fs::read_to_string(path).map_err(|e| DtnError::Input(format!("cannot read {path:?}: {e}")))?;
    CurveSpec::from_json(&text)
}
