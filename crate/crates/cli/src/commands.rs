use std::env;

use rayon::prelude::*;
use serde::Serialize;
use sqtele_core::entanglement::{build_ess, entropy_fock, entropy_formula, EssKind};
use sqtele_core::fock::TruncationSpec;
use sqtele_core::gaussian::{verify_case1, verify_case2, SqueezeParam};
use sqtele_core::protocols::{concentrate, concentrate_success_probability, teleport, Outcome, SuperpositionSpec};
use sqtele_core::{ProtocolReport64, SimError};

use crate::args::{BsDemoArgs, Command, Common, ConcentrateArgs, EntropyArgs, Protocol, SweepArgs, TeleportArgs};
use crate::output::{emit, BranchJson, Emit, Params, ProtocolJson, TableJson};

/// Environment variable overriding the default photon-number cutoff.
pub const N_MAX_ENV: &str = "SQTELE_N_MAX";

/// Largest joint Hilbert-space dimension a run may allocate (2²⁵ complex
/// amplitudes, 512 MiB per state vector).
pub const MAX_AMPLITUDES: usize = 1 << 25;

pub const PROBABILITY_TOLERANCE: f64 = 1e-6;
pub const ENTROPY_TOLERANCE: f64 = 1e-8;
pub const FIDELITY_TOLERANCE: f64 = 1e-9;
/// Beam-splitter fidelities are only gated up to this squeezing.
pub const BS_GATED_R: f64 = 0.8;

#[derive(Debug)]
pub enum CliError {
    /// Invalid configuration, rejected before or during setup.
    Usage(String),
    /// The report could not be written.
    Io(std::io::Error),
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// Execute a subcommand, write its report and return whether it passed.
pub fn run(command: &Command) -> CliResult<bool> {
    let (report, common): (Box<dyn Emit>, &Common) = match command {
        Command::Teleport(a) => (Box::new(run_teleport(a)?), &a.common),
        Command::Concentrate(a) => (Box::new(run_concentrate(a)?), &a.common),
        Command::Entropy(a) => (Box::new(run_entropy(a)?), &a.common),
        Command::BsDemo(a) => (Box::new(run_bs_demo(a)?), &a.common),
        Command::Sweep(a) => (Box::new(run_sweep(a)?), &a.common),
    };
    emit(report.as_ref(), common).map_err(CliError::Io)?;
    Ok(report.pass())
}

fn default_n_max(r: f64) -> CliResult<usize> {
    match env::var(N_MAX_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{N_MAX_ENV} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(TruncationSpec::for_squeezing(r)?.n_max()),
    }
}

/// Cutoff for squeezing `r`: the flag, else the environment, else the rule.
fn truncation(r: f64, common: &Common, num_modes: usize) -> CliResult<TruncationSpec> {
    let n_max = match common.n_max {
        Some(n) => n,
        None => default_n_max(r)?,
    };
    let trunc = TruncationSpec::new(n_max, common.tail_tolerance)?;
    match trunc.local_dim().checked_pow(num_modes as u32) {
        Some(d) if d <= MAX_AMPLITUDES => Ok(trunc),
        _ => Err(CliError::Usage(format!(
            "n_max = {n_max} over {num_modes} modes exceeds the {MAX_AMPLITUDES}-amplitude limit; pass a smaller --n-max"
        ))),
    }
}

fn base_params(common: &Common) -> Params {
    Params { tail_tolerance: common.tail_tolerance, seed: common.seed, ..Params::default() }
}

fn protocol_json(
    command: &'static str,
    params: Params,
    report: &ProtocolReport64,
    reference: f64,
    entropy: Option<f64>,
) -> ProtocolJson {
    let branches = report
        .branches
        .iter()
        .map(|b| BranchJson {
            counts: b.counts.clone(),
            probability: b.probability,
            fidelity_to_target: b.fidelity_to_target,
            outcome: match b.outcome {
                Outcome::Success => "success",
                Outcome::Failure => "failure",
            },
        })
        .collect();
    let abs_error = (report.success_probability - reference).abs();
    ProtocolJson {
        command,
        params,
        branches,
        success_probability: report.success_probability,
        analytic_reference: reference,
        abs_error,
        tolerance: PROBABILITY_TOLERANCE,
        truncation_tail: report.truncation_tail,
        mean_success_fidelity: report.mean_success_fidelity,
        min_success_fidelity: report.min_success_fidelity(),
        entropy_after_concentration: entropy,
        pass: abs_error <= PROBABILITY_TOLERANCE,
    }
}

fn run_teleport(a: &TeleportArgs) -> CliResult<ProtocolJson> {
    let xi = SqueezeParam::new(a.r, a.phi)?;
    let spec = SuperpositionSpec::new(a.c_plus.0, a.c_minus.0, xi)?;
    let trunc = truncation(a.r, &a.common, 3)?;
    let report = teleport(&spec, trunc)?;
    let params = Params {
        r: Some(a.r),
        phi: Some(a.phi),
        c_plus: Some(a.c_plus.0.into()),
        c_minus: Some(a.c_minus.0.into()),
        n_max: Some(trunc.n_max()),
        ..base_params(&a.common)
    };
    Ok(protocol_json("teleport", params, &report, 0.25, None))
}

fn run_concentrate(a: &ConcentrateArgs) -> CliResult<ProtocolJson> {
    let xi = SqueezeParam::new(a.r, a.phi)?;
    let trunc = truncation(a.r, &a.common, 4)?;
    let report = concentrate(a.eta, &xi, trunc)?;
    let entropy = report.min_success_entropy()?;
    let params = Params {
        r: Some(a.r),
        phi: Some(a.phi),
        eta: Some(a.eta),
        n_max: Some(trunc.n_max()),
        ..base_params(&a.common)
    };
    let reference = concentrate_success_probability(a.eta, a.r);
    Ok(protocol_json("concentrate", params, &report, reference, entropy))
}

fn sorted(mut grid: Vec<f64>, name: &str) -> CliResult<Vec<f64>> {
    if let Some(bad) = grid.iter().find(|v| !v.is_finite()) {
        return Err(CliError::Usage(format!("{name} contains non-finite value {bad}")));
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    Ok(grid)
}

#[derive(Debug, Clone, Serialize)]
pub struct EntropyRow {
    pub family: &'static str,
    pub r: f64,
    pub n_max: usize,
    pub entropy_fock: f64,
    pub entropy_formula: f64,
    pub abs_delta: f64,
}

fn run_entropy(a: &EntropyArgs) -> CliResult<TableJson<EntropyRow>> {
    let grid = sorted(a.r_grid.clone(), "r grid")?;
    if let Some(bad) = grid.iter().find(|&&r| r <= 0.0) {
        return Err(CliError::Usage(format!("entropy grid needs r > 0 (minus families vanish at r = 0), got {bad}")));
    }
    let points: Vec<(EssKind, f64)> = EssKind::ALL.iter().flat_map(|&k| grid.iter().map(move |&r| (k, r))).collect();
    let rows = points
        .par_iter()
        .map(|&(kind, r)| -> CliResult<EntropyRow> {
            let trunc = truncation(r, &a.common, 2)?;
            let state = build_ess(kind, &SqueezeParam::real(r)?, trunc)?;
            let numeric = entropy_fock(&state, 0)?;
            let formula = entropy_formula(kind, r);
            Ok(EntropyRow {
                family: kind.name(),
                r,
                n_max: trunc.n_max(),
                entropy_fock: numeric,
                entropy_formula: formula,
                abs_delta: (numeric - formula).abs(),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let max_abs_error = rows.iter().map(|r| r.abs_delta).fold(0.0, f64::max);
    Ok(TableJson {
        command: "entropy",
        params: Params { r_grid: Some(grid), n_max: a.common.n_max, ..base_params(&a.common) },
        rows,
        max_abs_error,
        tolerance: ENTROPY_TOLERANCE,
        pass: max_abs_error < ENTROPY_TOLERANCE,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BsRow {
    pub r: f64,
    pub phi: f64,
    pub n_max: usize,
    pub case1_fidelity: f64,
    pub case2_fidelity: f64,
    /// Whether this row counts towards the pass/fail verdict.
    pub gated: bool,
}

fn run_bs_demo(a: &BsDemoArgs) -> CliResult<TableJson<BsRow>> {
    let r_grid = sorted(a.r_grid.clone(), "r grid")?;
    let phi_grid = sorted(a.phi_grid.clone(), "phi grid")?;
    let points: Vec<(f64, f64)> = r_grid.iter().flat_map(|&r| phi_grid.iter().map(move |&p| (r, p))).collect();
    let rows = points
        .par_iter()
        .map(|&(r, phi)| -> CliResult<BsRow> {
            let xi = SqueezeParam::new(r, phi)?;
            let trunc = truncation(r, &a.common, 2)?;
            Ok(BsRow {
                r,
                phi,
                n_max: trunc.n_max(),
                case1_fidelity: verify_case1(&xi, trunc)?,
                case2_fidelity: verify_case2(&xi, trunc)?,
                gated: r <= BS_GATED_R,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let max_abs_error = rows
        .iter()
        .filter(|row| row.gated)
        .map(|row| (1.0 - row.case1_fidelity).max(1.0 - row.case2_fidelity))
        .fold(0.0, f64::max);
    Ok(TableJson {
        command: "bs-demo",
        params: Params {
            r_grid: Some(r_grid),
            phi_grid: Some(phi_grid),
            n_max: a.common.n_max,
            ..base_params(&a.common)
        },
        rows,
        max_abs_error,
        tolerance: FIDELITY_TOLERANCE,
        pass: max_abs_error <= FIDELITY_TOLERANCE,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub r: f64,
    pub eta: Option<f64>,
    pub n_max: usize,
    pub success_probability: f64,
    pub analytic_reference: f64,
    pub abs_error: f64,
    pub min_success_fidelity: Option<f64>,
    pub mean_success_fidelity: f64,
    pub truncation_tail: f64,
    pub pass: bool,
}

/// One sweep coordinate: squeezing and, for concentration, the angle.
type GridPoint = (f64, Option<f64>);

fn run_sweep(a: &SweepArgs) -> CliResult<TableJson<SweepRow>> {
    let r_grid = match (&a.r_grid, a.protocol) {
        (Some(grid), _) => grid.clone(),
        (None, Protocol::Teleport) => vec![0.3, 0.5, 0.7, 0.9],
        (None, Protocol::Concentrate) => vec![0.3, 0.5],
    };
    let r_grid = sorted(r_grid, "r grid")?;
    let (points, eta_grid): (Vec<GridPoint>, _) = match a.protocol {
        Protocol::Teleport => (r_grid.iter().map(|&r| (r, None)).collect(), None),
        Protocol::Concentrate => {
            let etas = sorted(a.eta_grid.clone(), "eta grid")?;
            (r_grid.iter().flat_map(|&r| etas.iter().map(move |&e| (r, Some(e)))).collect(), Some(etas))
        }
    };
    // validate every point before any heavy computation starts
    let setups = points
        .iter()
        .map(|&(r, eta)| -> CliResult<_> {
            let xi = SqueezeParam::new(r, a.phi)?;
            let trunc = truncation(r, &a.common, if eta.is_some() { 4 } else { 3 })?;
            if let Some(e) = eta {
                if !(e > 0.0 && e < std::f64::consts::FRAC_PI_2) {
                    return Err(CliError::Usage(format!("eta must lie in (0, π/2), got {e}")));
                }
            }
            Ok((r, eta, xi, trunc))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let rows = setups
        .par_iter()
        .map(|&(r, eta, xi, trunc)| -> CliResult<SweepRow> {
            let (report, reference) = match eta {
                None => {
                    let spec = SuperpositionSpec::new(a.c_plus.0, a.c_minus.0, xi)?;
                    (teleport(&spec, trunc)?, 0.25)
                }
                Some(e) => (concentrate(e, &xi, trunc)?, concentrate_success_probability(e, r)),
            };
            let abs_error = (report.success_probability - reference).abs();
            Ok(SweepRow {
                r,
                eta,
                n_max: trunc.n_max(),
                success_probability: report.success_probability,
                analytic_reference: reference,
                abs_error,
                min_success_fidelity: report.min_success_fidelity(),
                mean_success_fidelity: report.mean_success_fidelity,
                truncation_tail: report.truncation_tail,
                pass: abs_error <= PROBABILITY_TOLERANCE,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let max_abs_error = rows.iter().map(|row| row.abs_error).fold(0.0, f64::max);
    let (protocol, c_plus, c_minus) = match a.protocol {
        Protocol::Teleport => ("teleport", Some(a.c_plus.0.into()), Some(a.c_minus.0.into())),
        Protocol::Concentrate => ("concentrate", None, None),
    };
    Ok(TableJson {
        command: "sweep",
        params: Params {
            protocol: Some(protocol),
            phi: Some(a.phi),
            c_plus,
            c_minus,
            r_grid: Some(r_grid),
            eta_grid,
            n_max: a.common.n_max,
            ..base_params(&a.common)
        },
        rows,
        max_abs_error,
        tolerance: PROBABILITY_TOLERANCE,
        pass: max_abs_error <= PROBABILITY_TOLERANCE,
    })
}
