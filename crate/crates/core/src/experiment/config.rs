//! Experiment configuration: a sectioned TOML document.
//!
//! ```toml
//! [geometry]
//! n_bs_antennas = 32          # default 32
//! n_ris_elements = 32
//! n_blocks = 16               # omit for the power-minimising segmentation
//! aoa_ris = 1.5707963267948966
//! aod_ris = 1.0471975511965976
//! aod_bs = 0.7853981633974483
//! rician_bs_ris = 10.0
//! rician_ris_ue = 10.0
//! los_only = false            # default false
//!
//! [power]
//! static_power = 12.0         # default 12
//! phase_circuit_power = 0.12  # default 0.12
//! rotate_circuit_power = 0.43
//! unit_rotation_power = 0.003
//! amplifier_slope = 1.2       # default 1.2
//! noise_power = 1.0           # default 1
//!
//! [sweep]
//! axis = "snr_db"             # snr_db | kappa | n_ris_elements
//! grid = [-10.0, 0.0, 10.0]
//! snr_db = 10.0               # SNR for the kappa / n_ris_elements axes, default 10
//! n_trials = 10000            # default 10000
//! seed = 0                    # default 0
//!
//! [output]
//! path = "results.csv"        # optional, stdout otherwise
//! format = "csv"
//! ```
//!
//! A `[feasibility]` section (`n_ris_elements`, `p2_grid`, `p_unit_grid`)
//! replaces `[sweep]` to map the rotate-circuit feasibility region; the
//! `geometry` section is then optional. Angles are radians. Unknown keys
//! are rejected.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::channel::SystemGeometry;
use crate::error::{Error, Result};
use crate::power::PowerParams;
use crate::simkit::{Segmentation, SweepAxis, DEFAULT_TRIALS};

pub const DEFAULT_BS_ANTENNAS: usize = 32;
pub const DEFAULT_NOISE_POWER: f64 = 1.0;
pub const DEFAULT_SWEEP_SNR_DB: f64 = 10.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub axis: SweepAxis,
    pub grid: Vec<f64>,
    pub snr_db: f64,
    pub n_trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityConfig {
    pub n_ris_elements: usize,
    pub p2_grid: Vec<f64>,
    pub p_unit_grid: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Mode {
    Sweep {
        geometry: SystemGeometry,
        segmentation: Segmentation,
        sweep: SweepConfig,
    },
    Feasibility(FeasibilityConfig),
}

/// A fully validated experiment with defaults applied.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub mode: Mode,
    /// In feasibility mode `rotate_circuit_power` and `unit_rotation_power` come from the grids.
    pub power: PowerParams,
    pub noise_power: f64,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    geometry: Option<RawGeometry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    power: Option<RawPower>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sweep: Option<RawSweep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    feasibility: Option<RawFeasibility>,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<RawOutput>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGeometry {
    #[serde(skip_serializing_if = "Option::is_none")]
    n_bs_antennas: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_ris_elements: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_blocks: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    aoa_ris: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    aod_ris: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    aod_bs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rician_bs_ris: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rician_ris_ue: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    los_only: Option<bool>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPower {
    #[serde(skip_serializing_if = "Option::is_none")]
    static_power: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phase_circuit_power: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rotate_circuit_power: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    unit_rotation_power: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    amplifier_slope: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    noise_power: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    #[serde(skip_serializing_if = "Option::is_none")]
    axis: Option<SweepAxis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    snr_db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFeasibility {
    #[serde(skip_serializing_if = "Option::is_none")]
    n_ris_elements: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p2_grid: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p_unit_grid: Option<Vec<f64>>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    format: Option<String>,
}

fn required<T>(value: Option<T>, field: &str) -> Result<T> {
    value.ok_or_else(|| Error::config(field, format!("{field} required")))
}

fn check_angle(value: f64, field: &str) -> Result<f64> {
    if !value.is_finite() || !(0.0..=std::f64::consts::PI).contains(&value) {
        return Err(Error::config(
            field,
            format!("angle {value} outside [0, pi]"),
        ));
    }
    Ok(value)
}

fn check_nonnegative(value: f64, field: &str) -> Result<f64> {
    if !value.is_finite() || value < 0.0 {
        return Err(Error::config(
            field,
            format!("{value} must be finite and >= 0"),
        ));
    }
    Ok(value)
}

fn check_grid(grid: Vec<f64>, field: &str) -> Result<Vec<f64>> {
    if grid.is_empty() {
        return Err(Error::config(field, "grid must not be empty"));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(Error::config(field, "grid values must be finite"));
    }
    Ok(grid)
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    resolve(raw)
}

fn resolve(raw: RawConfig) -> Result<ExperimentConfig> {
    let power_raw = raw.power.unwrap_or_default();
    let feasibility_mode = raw.feasibility.is_some();
    if feasibility_mode && raw.sweep.is_some() {
        return Err(Error::config(
            "sweep",
            "a config holds either [sweep] or [feasibility], not both",
        ));
    }

    let static_power = check_nonnegative(
        power_raw
            .static_power
            .unwrap_or(PowerParams::DEFAULT_STATIC),
        "power.static_power",
    )?;
    let phase_circuit_power = check_nonnegative(
        power_raw
            .phase_circuit_power
            .unwrap_or(PowerParams::DEFAULT_PHASE_CIRCUIT),
        "power.phase_circuit_power",
    )?;
    let amplifier_slope = power_raw
        .amplifier_slope
        .unwrap_or(PowerParams::DEFAULT_AMPLIFIER_SLOPE);
    if !amplifier_slope.is_finite() || amplifier_slope < 1.0 {
        return Err(Error::config(
            "power.amplifier_slope",
            "must be finite and >= 1",
        ));
    }
    let noise_power = power_raw.noise_power.unwrap_or(DEFAULT_NOISE_POWER);
    if !noise_power.is_finite() || noise_power <= 0.0 {
        return Err(Error::config("power.noise_power", "must be finite and > 0"));
    }
    let (rotate_circuit_power, unit_rotation_power) = if feasibility_mode {
        (
            check_nonnegative(
                power_raw.rotate_circuit_power.unwrap_or(0.0),
                "power.rotate_circuit_power",
            )?,
            check_nonnegative(
                power_raw.unit_rotation_power.unwrap_or(0.0),
                "power.unit_rotation_power",
            )?,
        )
    } else {
        (
            check_nonnegative(
                required(power_raw.rotate_circuit_power, "power.rotate_circuit_power")?,
                "power.rotate_circuit_power",
            )?,
            check_nonnegative(
                required(power_raw.unit_rotation_power, "power.unit_rotation_power")?,
                "power.unit_rotation_power",
            )?,
        )
    };
    let power = PowerParams::new(
        static_power,
        phase_circuit_power,
        rotate_circuit_power,
        unit_rotation_power,
        amplifier_slope,
    )?;

    let output = match raw.output {
        Some(out) => {
            if let Some(format) = &out.format {
                if format != "csv" {
                    return Err(Error::config(
                        "output.format",
                        format!("unsupported format {format:?}"),
                    ));
                }
            }
            out.path
        }
        None => None,
    };

    let mode = if let Some(f) = raw.feasibility {
        let n_ris_elements = required(f.n_ris_elements, "feasibility.n_ris_elements")?;
        if n_ris_elements == 0 {
            return Err(Error::config(
                "feasibility.n_ris_elements",
                "must be positive",
            ));
        }
        let p2_grid = check_grid(
            required(f.p2_grid, "feasibility.p2_grid")?,
            "feasibility.p2_grid",
        )?;
        let p_unit_grid = check_grid(
            required(f.p_unit_grid, "feasibility.p_unit_grid")?,
            "feasibility.p_unit_grid",
        )?;
        for (field, grid) in [
            ("feasibility.p2_grid", &p2_grid),
            ("feasibility.p_unit_grid", &p_unit_grid),
        ] {
            if grid.iter().any(|&x| x < 0.0) {
                return Err(Error::config(field, "powers must be >= 0"));
            }
        }
        Mode::Feasibility(FeasibilityConfig {
            n_ris_elements,
            p2_grid,
            p_unit_grid,
        })
    } else {
        let s = raw.sweep.unwrap_or_default();
        let axis = required(s.axis, "sweep.axis")?;
        let grid = check_grid(required(s.grid, "sweep.grid")?, "sweep.grid")?;
        let snr_db = s.snr_db.unwrap_or(DEFAULT_SWEEP_SNR_DB);
        if !snr_db.is_finite() {
            return Err(Error::config("sweep.snr_db", "must be finite"));
        }
        let n_trials = s.n_trials.unwrap_or(DEFAULT_TRIALS);
        if n_trials < 2 {
            return Err(Error::config(
                "sweep.n_trials",
                "at least 2 trials are needed",
            ));
        }
        let (geometry, segmentation) = resolve_geometry(required(raw.geometry, "geometry")?)?;
        match axis {
            SweepAxis::Kappa if grid.iter().any(|&k| k < 0.0) => {
                return Err(Error::config("sweep.grid", "Rician factors must be >= 0"));
            }
            SweepAxis::NRisElements => {
                for &n in &grid {
                    if n < 1.0 || n.fract() != 0.0 {
                        return Err(Error::config(
                            "sweep.grid",
                            format!("N_s = {n} is not a positive integer"),
                        ));
                    }
                    if segmentation == Segmentation::Fixed
                        && !(n as usize).is_multiple_of(geometry.n_blocks)
                    {
                        return Err(Error::config(
                            "geometry.n_blocks",
                            format!("K must divide N_s = {n}"),
                        ));
                    }
                }
            }
            _ => {}
        }
        Mode::Sweep {
            geometry,
            segmentation,
            sweep: SweepConfig {
                axis,
                grid,
                snr_db,
                n_trials,
                seed: s.seed.unwrap_or(0),
            },
        }
    };

    Ok(ExperimentConfig {
        mode,
        power,
        noise_power,
        output,
    })
}

fn resolve_geometry(g: RawGeometry) -> Result<(SystemGeometry, Segmentation)> {
    let n_bs_antennas = g.n_bs_antennas.unwrap_or(DEFAULT_BS_ANTENNAS);
    if n_bs_antennas == 0 {
        return Err(Error::config("geometry.n_bs_antennas", "must be positive"));
    }
    let n_ris_elements = required(g.n_ris_elements, "geometry.n_ris_elements")?;
    if n_ris_elements == 0 {
        return Err(Error::config("geometry.n_ris_elements", "must be positive"));
    }
    let (n_blocks, segmentation) = match g.n_blocks {
        Some(k) if k == 0 || n_ris_elements % k != 0 => {
            return Err(Error::config(
                "geometry.n_blocks",
                format!("K must divide N_s (K = {k}, N_s = {n_ris_elements})"),
            ));
        }
        Some(k) => (k, Segmentation::Fixed),
        None => (1, Segmentation::Optimal),
    };
    let aoa_ris = check_angle(required(g.aoa_ris, "geometry.aoa_ris")?, "geometry.aoa_ris")?;
    let aod_ris = check_angle(required(g.aod_ris, "geometry.aod_ris")?, "geometry.aod_ris")?;
    let aod_bs = check_angle(required(g.aod_bs, "geometry.aod_bs")?, "geometry.aod_bs")?;
    let rician_bs_ris = check_nonnegative(
        required(g.rician_bs_ris, "geometry.rician_bs_ris")?,
        "geometry.rician_bs_ris",
    )?;
    let rician_ris_ue = check_nonnegative(
        required(g.rician_ris_ue, "geometry.rician_ris_ue")?,
        "geometry.rician_ris_ue",
    )?;
    let geometry = SystemGeometry::new(
        n_bs_antennas,
        n_ris_elements,
        n_blocks,
        aoa_ris,
        aod_ris,
        aod_bs,
        rician_bs_ris,
        rician_ris_ue,
    )?
    .with_los_only(g.los_only.unwrap_or(false));
    Ok((geometry, segmentation))
}

impl ExperimentConfig {
    /// Renders the resolved configuration, defaults included, as TOML.
    pub fn to_toml(&self) -> String {
        let p = &self.power;
        let mut raw = RawConfig {
            power: Some(RawPower {
                static_power: Some(p.static_power),
                phase_circuit_power: Some(p.phase_circuit_power),
                rotate_circuit_power: Some(p.rotate_circuit_power),
                unit_rotation_power: Some(p.unit_rotation_power),
                amplifier_slope: Some(p.amplifier_slope),
                noise_power: Some(self.noise_power),
            }),
            output: Some(RawOutput {
                path: self.output.clone(),
                format: Some("csv".to_string()),
            }),
            ..RawConfig::default()
        };
        match &self.mode {
            Mode::Sweep {
                geometry: g,
                segmentation,
                sweep,
            } => {
                raw.geometry = Some(RawGeometry {
                    n_bs_antennas: Some(g.n_bs_antennas),
                    n_ris_elements: Some(g.n_ris_elements),
                    n_blocks: (*segmentation == Segmentation::Fixed).then_some(g.n_blocks),
                    aoa_ris: Some(g.aoa_ris),
                    aod_ris: Some(g.aod_ris),
                    aod_bs: Some(g.aod_bs),
                    rician_bs_ris: Some(g.rician_bs_ris),
                    rician_ris_ue: Some(g.rician_ris_ue),
                    los_only: Some(g.los_only),
                });
                raw.sweep = Some(RawSweep {
                    axis: Some(sweep.axis),
                    grid: Some(sweep.grid.clone()),
                    snr_db: Some(sweep.snr_db),
                    n_trials: Some(sweep.n_trials),
                    seed: Some(sweep.seed),
                });
            }
            Mode::Feasibility(f) => {
                raw.feasibility = Some(RawFeasibility {
                    n_ris_elements: Some(f.n_ris_elements),
                    p2_grid: Some(f.p2_grid.clone()),
                    p_unit_grid: Some(f.p_unit_grid.clone()),
                });
            }
        }
        toml::to_string(&raw).expect("config serializes to TOML")
    }

    pub fn set_seed(&mut self, seed: u64) {
        if let Mode::Sweep { sweep, .. } = &mut self.mode {
            sweep.seed = seed;
        }
    }

    pub fn set_trials(&mut self, n_trials: usize) -> Result<()> {
        if n_trials < 2 {
            return Err(Error::config(
                "sweep.n_trials",
                "at least 2 trials are needed",
            ));
        }
        if let Mode::Sweep { sweep, .. } = &mut self.mode {
            sweep.n_trials = n_trials;
        }
        Ok(())
    }
}
