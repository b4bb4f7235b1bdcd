//! `dtn`: spectra of the Dirichlet-to-Neumann map from the command line.
//!
//! Exit codes: 0 success, 1 invalid input or numerical failure, 2 pole,
//! 3 unsupported domain/operation, 4 validation suite not green.

mod commands;
mod domain_arg;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dtn_core::{DtnError, Result};

use domain_arg::{load_curve_file, DomainArgs};
use output::{emit, to_json, Format, Table};

#[derive(Debug, Parser)]
#[command(name = "dtn", version, about = "Dirichlet-to-Neumann spectra for the Helmholtz equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
struct GridArgs {
    /// Explicit comma-separated grid.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["lambda_min", "lambda_max"])]
    lambda_grid: Vec<f64>,
    #[arg(long, allow_hyphen_values = true)]
    lambda_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    lambda_max: Option<f64>,
    /// Number of equispaced points between the bounds.
    #[arg(long, default_value_t = 201)]
    points: usize,
}

impl GridArgs {
    fn grid(&self) -> Result<Vec<f64>> {
        let g = if !self.lambda_grid.is_empty() {
            self.lambda_grid.clone()
        } else {
            let (Some(a), Some(b)) = (self.lambda_min, self.lambda_max) else {
                return Err(DtnError::Input("give --lambda-grid or both --lambda-min and --lambda-max".into()));
            };
            if self.points < 2 {
                return Err(DtnError::Input("--points must be at least 2".into()));
            }
            let n = (self.points - 1) as f64;
            (0..self.points).map(|i| a + (b - a) * i as f64 / n).collect()
        };
        let increasing = g.windows(2).all(|w| w[0] < w[1]);
        let decreasing = g.windows(2).all(|w| w[0] > w[1]);
        if g.iter().any(|x| !x.is_finite()) || !(increasing || decreasing) {
            return Err(DtnError::Input("the Λ grid must be finite and strictly monotone".into()));
        }
        Ok(g)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues σ_1..σ_k at a fixed Λ.
    Spectrum {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, default_value_t = 10)]
        k: usize,
        /// Relative distance to a Dirichlet eigenvalue treated as a pole.
        #[arg(long, default_value_t = 1e-6)]
        pole_tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// One column per analytic branch over a Λ grid.
    BranchSweep {
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Branches taken from the lowest k eigenvalues at each grid point.
        #[arg(long, default_value_t = 6)]
        k: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Robin eigenvalues for ∂_n u + γ u = 0.
    Robin {
        #[command(flatten)]
        domain: DomainArgs,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Boundary-element spectrum of a curve given as JSON.
    Bem {
        #[arg(long)]
        curve: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, default_value_t = 8)]
        k: usize,
        #[arg(long, default_value_t = 512)]
        n_nodes: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Bessel series identity, or the truncated disk factorisation with --lambda0.
    Dmatrix {
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, default_value_t = 1000)]
        terms: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda0: Option<f64>,
        /// Rows of the factorisation.
        #[arg(long, default_value_t = 9)]
        size: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the acceptance criteria and/or the probe battery; JSON report.
    Validate {
        #[arg(long, default_value = "acceptance")]
        suite: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn exit_code(e: &DtnError) -> u8 {
    match e {
        DtnError::Pole { .. } => 2,
        DtnError::Capability(_) => 3,
        _ => 1,
    }
}

fn write_table(t: Table, out: &OutputArgs) -> Result<u8> {
    emit(&t.render(out.format), out.output.as_deref()).map_err(|e| DtnError::Input(format!("cannot write output: {e}")))?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Spectrum { domain, lambda, k, pole_tol, out } => {
            write_table(commands::spectrum(&domain.resolve()?, lambda, k, domain.n_nodes, pole_tol)?, &out)
        }
        Command::BranchSweep { domain, grid, k, out } => {
            write_table(commands::branch_sweep(&domain.resolve()?, &grid.grid()?, k, domain.n_nodes)?, &out)
        }
        Command::Robin { domain, gamma, count, out } => write_table(commands::robin(&domain.resolve()?, gamma, count)?, &out),
        Command::Bem { curve, lambda, k, n_nodes, out } => {
            let curve = load_curve_file(&curve)?.build()?;
            write_table(commands::bem(&curve, lambda, k, n_nodes)?, &out)
        }
        Command::Dmatrix { k, lambda, terms, lambda0, size, out } => {
            let t = match lambda0 {
                Some(l0) => commands::dmatrix_factorization(l0, lambda, size, terms)?,
                None => commands::bessel_identity(k, lambda, terms)?,
            };
            write_table(t, &out)
        }
        Command::Validate { suite, output } => {
            let (doc, green) = commands::validate(&suite)?;
            emit(&to_json(&doc), output.as_deref()).map_err(|e| DtnError::Input(format!("cannot write output: {e}")))?;
            Ok(if green { 0 } else { 4 })
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("DTN_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
        // fails only if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
