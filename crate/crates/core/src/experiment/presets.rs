//! Bundled experiment setups.
//!
//! All share `N_b = 32`, `xi = 1.2`, `P0 = 12 W`, `P1 = 0.12 W`, unit
//! noise power, `phi_A = pi/2`, `phi_D = pi/3` (common rotation `-pi/12`),
//! BS departure angle `pi/4` and `kappa_1 = kappa_2 = 10`.
//!
//! | name                | mode        | notes                                           |
//! |---------------------|-------------|-------------------------------------------------|
//! | `fig2-tightness`    | kappa sweep | `N_s = 64`, `K = 8`, 10 dB                      |
//! | `fig3-se`           | SNR sweep   | `N_s = 32`, case-1 power, optimal segmentation  |
//! | `fig3-ee-case1`     | SNR sweep   | `P2 = 0.108 W`, `P_unit = 0.821 W`              |
//! | `fig3-ee-case2`     | SNR sweep   | `P2 = 0.215 W`, `P_unit = 0.548 W`              |
//! | `fig3-ee-case3`     | SNR sweep   | `P2 = 0.430 W`, `P_unit = 0.003 W`              |
//! | `feasibility-map`   | feasibility | `N_s = 32`, 50 x 50 `(P2, P_unit)` grid         |

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::config::{ExperimentConfig, FeasibilityConfig, Mode, SweepConfig, DEFAULT_NOISE_POWER};
use crate::channel::SystemGeometry;
use crate::error::{Error, Result};
use crate::power::PowerParams;
use crate::simkit::{Segmentation, SweepAxis, DEFAULT_TRIALS};

pub const PRESET_NAMES: [&str; 6] = [
    "fig2-tightness",
    "fig3-se",
    "fig3-ee-case1",
    "fig3-ee-case2",
    "fig3-ee-case3",
    "feasibility-map",
];

const CASES: [(f64, f64); 3] = [(0.108, 0.821), (0.215, 0.548), (0.430, 0.003)];

fn geometry(n_ris_elements: usize, n_blocks: usize) -> Result<SystemGeometry> {
    SystemGeometry::new(
        32,
        n_ris_elements,
        n_blocks,
        FRAC_PI_2,
        PI / 3.0,
        FRAC_PI_4,
        10.0,
        10.0,
    )
}

fn snr_grid() -> Vec<f64> {
    (0..=10).map(|i| -10.0 + 5.0 * i as f64).collect()
}

fn snr_preset(case: usize) -> Result<ExperimentConfig> {
    let (p2, p_unit) = CASES[case];
    Ok(ExperimentConfig {
        mode: Mode::Sweep {
            geometry: geometry(32, 1)?,
            segmentation: Segmentation::Optimal,
            sweep: SweepConfig {
                axis: SweepAxis::SnrDb,
                grid: snr_grid(),
                snr_db: 0.0,
                n_trials: DEFAULT_TRIALS,
                seed: 0,
            },
        },
        power: PowerParams::with_rotation(p2, p_unit)?,
        noise_power: DEFAULT_NOISE_POWER,
        output: None,
    })
}

/// `{0} U geomspace(1e-4, 1, n - 1)`
pub(crate) fn p_unit_grid(n: usize) -> Vec<f64> {
    let steps = (n - 2) as f64;
    std::iter::once(0.0)
        .chain((0..n - 1).map(|i| 10f64.powf(-4.0 + 4.0 * i as f64 / steps)))
        .collect()
}

pub(crate) fn p2_grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| 0.5 * i as f64 / (n - 1) as f64).collect()
}

/// Looks up a bundled configuration by name.
pub fn preset(name: &str) -> Result<ExperimentConfig> {
    match name {
        "fig2-tightness" => Ok(ExperimentConfig {
            mode: Mode::Sweep {
                geometry: geometry(64, 8)?,
                segmentation: Segmentation::Fixed,
                sweep: SweepConfig {
                    axis: SweepAxis::Kappa,
                    grid: vec![0.0, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0],
                    snr_db: 10.0,
                    n_trials: DEFAULT_TRIALS,
                    seed: 0,
                },
            },
            power: PowerParams::with_rotation(CASES[0].0, CASES[0].1)?,
            noise_power: DEFAULT_NOISE_POWER,
            output: None,
        }),
        "fig3-se" | "fig3-ee-case1" => snr_preset(0),
        "fig3-ee-case2" => snr_preset(1),
        "fig3-ee-case3" => snr_preset(2),
        "feasibility-map" => Ok(ExperimentConfig {
            mode: Mode::Feasibility(FeasibilityConfig {
                n_ris_elements: 32,
                p2_grid: p2_grid(50),
                p_unit_grid: p_unit_grid(50),
            }),
            power: PowerParams::with_rotation(0.0, 0.0)?,
            noise_power: DEFAULT_NOISE_POWER,
            output: None,
        }),
        other => Err(Error::config(
            "preset",
            format!(
                "unknown preset {other:?}; expected one of {}",
                PRESET_NAMES.join(", ")
            ),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::parse_config;

    #[test]
    fn every_preset_round_trips() {
        for name in PRESET_NAMES {
            let cfg = preset(name).unwrap();
            assert_eq!(parse_config(&cfg.to_toml()).unwrap(), cfg, "{name}");
        }
        assert!(preset("fig4").is_err());
    }

    #[test]
    fn grids() {
        let pu = p_unit_grid(50);
        assert_eq!(pu.len(), 50);
        assert_eq!(pu[0], 0.0);
        assert!((pu[1] - 1e-4).abs() < 1e-18);
        assert!((pu[49] - 1.0).abs() < 1e-12);
        let p2 = p2_grid(50);
        assert_eq!((p2[0], p2[49]), (0.0, 0.5));
    }
}
