//! One function per subcommand; each builds a [`Table`].

use dtn_core::bem::{solve_dtn_spectrum, BoundaryCurve};
use dtn_core::branches::robin_spectrum;
use dtn_core::canonical::{self, eigenvalues_at, laplace_spectrum};
use dtn_core::perturb::{bessel_identity_check, dmatrix_truncated};
use dtn_core::validate::acceptance::run_acceptance;
use dtn_core::validate::{probe_suite, ProbeStatus};
use dtn_core::{BoundaryCondition, BranchId, DomainSpec, DtnError, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::output::{fmt_g17, Cell, Table};

/// Sorted eigenvalues at `Λ`; curves go through the boundary solver.
fn curve_spectrum(curve: &BoundaryCurve, lambda: f64, k: usize, n_nodes: usize) -> Result<Vec<f64>> {
    Ok(solve_dtn_spectrum(curve, lambda, k, n_nodes.max(4 * k))?.sigmas)
}

pub fn spectrum(domain: &DomainSpec, lambda: f64, k: usize, n_nodes: usize, pole_tol: f64) -> Result<Table> {
    if k == 0 {
        return Err(DtnError::Input("--k must be positive".into()));
    }
    let mut t = Table::new("spectrum", &["k", "sigma"]);
    t.meta("domain", domain);
    t.meta("lambda", lambda);
    if let DomainSpec::Curve { curve } = domain {
        let s = solve_dtn_spectrum(&curve.build()?, lambda, k, n_nodes.max(4 * k))?;
        t.rows = s.sigmas.iter().enumerate().map(|(i, &x)| vec![Cell::Int(i as i64 + 1), Cell::Num(x)]).collect();
        t.meta("warning", s.warning);
        return Ok(t);
    }
    check_pole(domain, lambda, pole_tol)?;
    let spec = eigenvalues_at(domain, lambda, k)?;
    let mut branches = Vec::new();
    for e in &spec.entries {
        for _ in 0..e.multiplicity {
            if t.rows.len() < k {
                t.rows.push(vec![Cell::Int(t.rows.len() as i64 + 1), Cell::Num(e.sigma)]);
                branches.push(e.branch.label.short_name());
            }
        }
    }
    t.meta("branches", branches);
    t.meta("near_degenerate", spec.near_degenerate);
    Ok(t)
}

/// Rejects `Λ` within `tol·max(1, λ)` of a Dirichlet eigenvalue.
fn check_pole(domain: &DomainSpec, lambda: f64, tol: f64) -> Result<()> {
    if lambda <= 0.0 {
        return Ok(());
    }
    let slack = tol * lambda.max(1.0);
    let near = laplace_spectrum(domain, BoundaryCondition::Dirichlet, lambda + 2.0 * slack)?
        .into_iter()
        .map(|(v, _)| v)
        .find(|v| (lambda - v).abs() <= slack);
    match near {
        Some(pole) => Err(DtnError::Pole { lambda, pole }),
        None => Ok(()),
    }
}

/// Half-width of the window dropped around each pole in sweeps.
pub const SWEEP_POLE_GAP: f64 = 1e-9;

pub fn branch_sweep(domain: &DomainSpec, grid: &[f64], k: usize, n_nodes: usize) -> Result<Table> {
    if k == 0 {
        return Err(DtnError::Input("--k must be positive".into()));
    }
    if let DomainSpec::Curve { curve } = domain {
        let curve = curve.build()?;
        let values: Vec<Vec<f64>> = grid.par_iter().map(|&l| curve_spectrum(&curve, l, k, n_nodes)).collect::<Result<_>>()?;
        let mut cols = vec!["lambda".to_string()];
        cols.extend((1..=k).map(|i| format!("k{i}")));
        let mut t = Table::new("branch-sweep", &[]);
        t.columns = cols;
        t.rows = grid
            .iter()
            .zip(values)
            .map(|(&l, v)| std::iter::once(Cell::Num(l)).chain(v.into_iter().map(Cell::Num)).collect())
            .collect();
        t.meta("domain", domain);
        return Ok(t);
    }

    let top = grid.iter().copied().fold(0.0, f64::max);
    let poles: Vec<f64> = laplace_spectrum(domain, BoundaryCondition::Dirichlet, top + 1.0)?.into_iter().map(|p| p.0).collect();
    let (kept, dropped): (Vec<f64>, Vec<f64>) =
        grid.iter().partition(|&&l| poles.iter().all(|p| (l - p).abs() > SWEEP_POLE_GAP));

    let ids: Vec<Vec<BranchId>> = kept
        .par_iter()
        .map(|&l| Ok(eigenvalues_at(domain, l, k)?.entries.into_iter().map(|e| e.branch).collect()))
        .collect::<Result<_>>()?;
    let mut columns: Vec<BranchId> = Vec::new();
    for id in ids.into_iter().flatten() {
        if !columns.contains(&id) {
            columns.push(id);
        }
    }
    let rows: Vec<Vec<Cell>> = kept
        .par_iter()
        .map(|&l| {
            let mut row = vec![Cell::Num(l)];
            for c in &columns {
                row.push(if c.contains(l) { Cell::Num(canonical::branch_value(domain, &c.label, l)?) } else { Cell::Blank });
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;

    let mut t = Table::new("branch-sweep", &[]);
    t.columns = std::iter::once("lambda".to_string()).chain(columns.iter().map(column_name)).collect();
    t.rows = rows;
    t.meta("domain", domain);
    t.meta("poles", poles.iter().filter(|p| grid.iter().any(|g| g >= p) && grid.iter().any(|g| g <= p)).collect::<Vec<_>>());
    t.meta("dropped", dropped);
    Ok(t)
}

/// `<label>@<lower end of the continuity interval>`, e.g. `m0@-inf`.
fn column_name(id: &BranchId) -> String {
    let lo = id.continuity.0.map_or("-inf".to_string(), fmt_g17);
    format!("{}@{lo}", id.label.short_name())
}

pub fn robin(domain: &DomainSpec, gamma: f64, count: usize) -> Result<Table> {
    let mut t = Table::new("robin", &["k", "lambda"]);
    t.rows = robin_spectrum(domain, gamma, count)?
        .into_iter()
        .enumerate()
        .map(|(i, x)| vec![Cell::Int(i as i64 + 1), Cell::Num(x)])
        .collect();
    t.meta("domain", domain);
    t.meta("gamma", gamma);
    Ok(t)
}

pub fn bem(curve: &BoundaryCurve, lambda: f64, k: usize, n_nodes: usize) -> Result<Table> {
    let s = solve_dtn_spectrum(curve, lambda, k, n_nodes)?;
    let mut t = Table::new("bem", &["k", "sigma", "residual"]);
    t.rows = s
        .sigmas
        .iter()
        .zip(&s.residuals)
        .enumerate()
        .map(|(i, (&x, &r))| vec![Cell::Int(i as i64 + 1), Cell::Num(x), Cell::Num(r)])
        .collect();
    t.meta("lambda", lambda);
    t.meta("n_nodes", s.n_nodes);
    t.meta("perimeter", s.perimeter());
    t.meta("condition_estimate", s.condition_estimate);
    t.meta("method", s.method);
    t.meta("warning", s.warning);
    Ok(t)
}

pub fn bessel_identity(k: u32, lambda: f64, terms: usize) -> Result<Table> {
    let r = bessel_identity_check(k, lambda, terms)?;
    let mut t = Table::new("dmatrix", &["k", "lambda", "terms", "lhs", "rhs", "tail_bound"]);
    t.rows.push(vec![
        Cell::Int(i64::from(k)),
        Cell::Num(lambda),
        Cell::Int(terms as i64),
        Cell::Num(r.lhs),
        Cell::Num(r.rhs),
        Cell::Num(r.tail_bound),
    ]);
    Ok(t)
}

pub fn dmatrix_factorization(lambda0: f64, lambda: f64, size: usize, terms: usize) -> Result<Table> {
    let f = dmatrix_truncated(lambda0, lambda, size, terms)?;
    let diag = f.reconstruct();
    let mut t = Table::new("dmatrix", &["i", "m", "harmonic", "sigma0", "reconstructed", "exact"]);
    for (i, &(m, sin)) in f.harmonics.iter().enumerate() {
        t.rows.push(vec![
            Cell::Int(i as i64 + 1),
            Cell::Int(i64::from(m)),
            Cell::Text(if sin { "sin" } else { "cos" }.into()),
            Cell::Num(f.d0_diag[i]),
            Cell::Num(diag[i][i]),
            Cell::Num(canonical::disk_branch(m, lambda)?),
        ]);
    }
    t.meta("lambda0", lambda0);
    t.meta("lambda", lambda);
    t.meta("reconstruction_error", f.reconstruction_error()?);
    Ok(t)
}

/// Report and whether it is green.
pub fn validate(suite: &str) -> Result<(Value, bool)> {
    let mut doc = json!({ "command": "validate", "version": env!("CARGO_PKG_VERSION"), "suite": suite });
    let mut green = true;
    if suite == "acceptance" || suite == "all" {
        let report = run_acceptance();
        for c in &report.criteria {
            eprintln!("{}", c.line());
        }
        green &= report.green;
        doc["acceptance"] = serde_json::to_value(&report).expect("report serialises");
    }
    if suite == "probes" || suite == "all" {
        let probes = probe_suite()?;
        let ok = probes.iter().all(|p| p.conjecture || p.status == ProbeStatus::Pass);
        green &= ok;
        doc["probes"] = serde_json::to_value(&probes).expect("probes serialise");
    }
    if !matches!(suite, "acceptance" | "probes" | "all") {
        return Err(DtnError::Input(format!("unknown suite {suite:?}; use acceptance, probes or all")));
    }
    doc["green"] = Value::Bool(green);
    Ok((doc, green))
}
