//! Experiment front end: configuration, presets and CSV output.
//!
//! Sweep CSV columns:
//! `axis,mean_se_bc,se_stderr,bound_bc,bound_ec,p_ec_watts,p_bc_watts,k_star,ee_bc,ee_ec`.
//!
//! Feasibility CSV columns: `p2,p_unit,regime,feasible,margin_watts`. A
//! point on a regime threshold carries the lower-`P_unit` regime with a
//! `:boundary` suffix, e.g. `20c:boundary`.

mod config;
pub mod csv;
mod presets;

use std::fs;
use std::path::Path;

pub use config::{
    parse_config, ExperimentConfig, FeasibilityConfig, Mode, SweepConfig, DEFAULT_BS_ANTENNAS,
    DEFAULT_NOISE_POWER, DEFAULT_SWEEP_SNR_DB,
};
pub use presets::{preset, PRESET_NAMES};

use crate::design::{p2_feasibility, FeasibilityVerdict};
use crate::error::Result;
use crate::power::PowerParams;
use crate::simkit::{run_sweep, Scenario, SweepResult};
use csv::{format_number, line};

pub const SWEEP_COLUMNS: [&str; 10] = [
    "axis",
    "mean_se_bc",
    "se_stderr",
    "bound_bc",
    "bound_ec",
    "p_ec_watts",
    "p_bc_watts",
    "k_star",
    "ee_bc",
    "ee_ec",
];

pub const FEASIBILITY_COLUMNS: [&str; 5] = ["p2", "p_unit", "regime", "feasible", "margin_watts"];

/// One cell of the `(P2, P_unit)` feasibility map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityRow {
    pub p2: f64,
    pub p_unit: f64,
    pub verdict: FeasibilityVerdict,
}

/// Evaluates the feasibility verdict on every `(P2, P_unit)` pair, `P2` major.
pub fn emit_feasibility_map(
    base: &PowerParams,
    n_elements: usize,
    p2_grid: &[f64],
    p_unit_grid: &[f64],
) -> Result<Vec<FeasibilityRow>> {
    let mut rows = Vec::with_capacity(p2_grid.len() * p_unit_grid.len());
    for &p2 in p2_grid {
        for &p_unit in p_unit_grid {
            let params = PowerParams {
                rotate_circuit_power: p2,
                unit_rotation_power: p_unit,
                ..*base
            };
            rows.push(FeasibilityRow {
                p2,
                p_unit,
                verdict: p2_feasibility(&params, n_elements)?,
            });
        }
    }
    Ok(rows)
}

pub fn feasibility_csv(rows: &[FeasibilityRow]) -> String {
    let mut out = line(FEASIBILITY_COLUMNS);
    for row in rows {
        let v = &row.verdict;
        let regime = if v.on_boundary {
            format!("{}:boundary", v.regime)
        } else {
            v.regime.to_string()
        };
        out.push_str(&line([
            format_number(row.p2),
            format_number(row.p_unit),
            regime,
            v.feasible.to_string(),
            format_number(v.margin),
        ]));
    }
    out
}

pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = line(SWEEP_COLUMNS);
    for p in &result.points {
        out.push_str(&line([
            format_number(p.axis_value),
            format_number(p.mean_se_bc),
            format_number(p.se_std_error_bc),
            format_number(p.bound_bc),
            format_number(p.bound_ec),
            format_number(p.p_ec_watts),
            format_number(p.p_bc_watts),
            p.k_star.to_string(),
            format_number(p.ee_bc),
            format_number(p.ee_ec),
        ]));
    }
    out
}

/// Result of running one configuration.
#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    Sweep(SweepResult),
    Feasibility(Vec<FeasibilityRow>),
}

impl Report {
    pub fn to_csv(&self) -> String {
        match self {
            Report::Sweep(result) => sweep_csv(result),
            Report::Feasibility(rows) => feasibility_csv(rows),
        }
    }
}

/// Runs the sweep or the feasibility map described by `config`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Report> {
    match &config.mode {
        Mode::Sweep {
            geometry,
            segmentation,
            sweep,
        } => {
            let scenario = Scenario {
                geometry: geometry.clone(),
                power: config.power,
                noise_power: config.noise_power,
                segmentation: *segmentation,
            };
            let result = run_sweep(
                &scenario,
                sweep.axis,
                &sweep.grid,
                sweep.snr_db,
                sweep.n_trials,
                sweep.seed,
            )?;
            Ok(Report::Sweep(result))
        }
        Mode::Feasibility(f) => Ok(Report::Feasibility(emit_feasibility_map(
            &config.power,
            f.n_ris_elements,
            &f.p2_grid,
            &f.p_unit_grid,
        )?)),
    }
}

/// Writes the CSV to `path`.
pub fn write_csv(report: &Report, path: &Path) -> Result<()> {
    fs::write(path, report.to_csv())?;
    Ok(())
}
