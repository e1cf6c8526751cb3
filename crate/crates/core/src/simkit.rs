//! Seeded Monte Carlo estimation of the averaged SE and EE.
//!
//! Trial `i` always draws from [`trial_rng`]`(seed, i)`, so a run is fully
//! determined by its seed no matter how rayon schedules the trials. Per-trial
//! values are collected in trial order and reduced serially.
//!
//! Every sweep point uses the same seed (common random numbers), which keeps
//! curves smooth and makes the BC/EC comparison paired.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{
    build_reflection_vector, trial_rng, ChannelSampler, RisConfiguration, SystemGeometry,
};
use crate::design::{optimal_block_count, optimal_phases, optimal_rotation};
use crate::error::{Error, Result};
use crate::metrics::{energy_efficiency, se_instantaneous, se_upper_bound_bc, LinkBudget};
use crate::power::{power_bc_uniform, power_ec, PowerParams};

pub const DEFAULT_TRIALS: usize = 10_000;

/// Sample mean and its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
}

impl Estimate {
    /// Shifted-data estimator: identical samples give exactly `(x, 0)`.
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::invalid("at least two samples are needed"));
        }
        let n = samples.len() as f64;
        let shift = samples[0];
        let (sum, sum_sq) = samples.iter().fold((0.0, 0.0), |(s, q), x| {
            let d = x - shift;
            (s + d, q + d * d)
        });
        let mean = shift + sum / n;
        let var = ((sum_sq - sum * sum / n) / (n - 1.0)).max(0.0);
        Ok(Self {
            mean,
            std_error: (var / n).sqrt(),
        })
    }
}

/// Instantaneous SE of every trial, in trial order.
pub fn sample_se(
    geometry: &SystemGeometry,
    config: &RisConfiguration,
    budget: &LinkBudget,
    n_trials: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    config.check(geometry)?;
    let sampler = ChannelSampler::new(geometry, &config.rotation_angles)?;
    let reflection = build_reflection_vector(config, geometry)?;
    (0..n_trials as u64)
        .into_par_iter()
        .map(|trial| {
            let (g_mat, g_vec) = sampler.sample(&mut trial_rng(seed, trial));
            se_instantaneous(&g_mat, &g_vec, &reflection, budget)
        })
        .collect()
}

/// Monte Carlo mean and standard error of the instantaneous SE.
pub fn estimate_average_se(
    geometry: &SystemGeometry,
    config: &RisConfiguration,
    budget: &LinkBudget,
    n_trials: usize,
    seed: u64,
) -> Result<Estimate> {
    if n_trials < 2 {
        return Err(Error::invalid(format!(
            "n_trials = {n_trials}, need at least 2"
        )));
    }
    Estimate::from_samples(&sample_se(geometry, config, budget, n_trials, seed)?)
}

/// How the block-controlled surface is segmented at each sweep point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Segmentation {
    /// Power-minimising block count for the optimal rotation.
    Optimal,
    /// The geometry's own `K`.
    Fixed,
}

/// Everything a sweep point needs besides the axis value.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub geometry: SystemGeometry,
    pub power: PowerParams,
    pub noise_power: f64,
    pub segmentation: Segmentation,
}

/// Quantity varied along a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    SnrDb,
    /// Applied to both hops: `kappa_1 = kappa_2`.
    Kappa,
    NRisElements,
}

impl SweepAxis {
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::SnrDb => "snr_db",
            SweepAxis::Kappa => "kappa",
            SweepAxis::NRisElements => "n_ris_elements",
        }
    }
}

/// Optimal block and element designs for one geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignPair {
    pub block_geometry: SystemGeometry,
    pub block_config: RisConfiguration,
    pub element_geometry: SystemGeometry,
    pub element_config: RisConfiguration,
    pub rotation: f64,
}

impl DesignPair {
    pub fn new(
        geometry: &SystemGeometry,
        power: &PowerParams,
        segmentation: Segmentation,
    ) -> Result<Self> {
        let rotation = optimal_rotation(geometry.aoa_ris, geometry.aod_ris);
        let block_geometry = match segmentation {
            Segmentation::Fixed => geometry.clone(),
            Segmentation::Optimal => {
                let seg = optimal_block_count(power, geometry.n_ris_elements, rotation)?;
                geometry.with_blocks(seg.chosen_k)?
            }
        };
        let block_config =
            RisConfiguration::uniform_rotation(rotation, optimal_phases(&block_geometry)?);
        let element_geometry = geometry.element_controlled();
        let element_config =
            RisConfiguration::uniform_rotation(0.0, optimal_phases(&element_geometry)?);
        Ok(Self {
            block_geometry,
            block_config,
            element_geometry,
            element_config,
            rotation,
        })
    }
}

/// Results at one axis value.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub axis_value: f64,
    pub mean_se_bc: f64,
    pub se_std_error_bc: f64,
    pub mean_se_ec: f64,
    pub se_std_error_ec: f64,
    pub bound_bc: f64,
    pub bound_ec: f64,
    pub p_ec_watts: f64,
    pub p_bc_watts: f64,
    pub k_star: usize,
    pub ee_bc: f64,
    pub ee_ec: f64,
}

/// A full sweep; every column has the axis length.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axis: SweepAxis,
    pub points: Vec<SweepPoint>,
    pub n_trials: usize,
    pub seed: u64,
}

impl SweepResult {
    fn column(&self, f: impl Fn(&SweepPoint) -> f64) -> Vec<f64> {
        self.points.iter().map(f).collect()
    }

    pub fn axis_values(&self) -> Vec<f64> {
        self.column(|p| p.axis_value)
    }

    pub fn mean_se(&self) -> Vec<f64> {
        self.column(|p| p.mean_se_bc)
    }

    pub fn se_std_error(&self) -> Vec<f64> {
        self.column(|p| p.se_std_error_bc)
    }

    pub fn bound_se(&self) -> Vec<f64> {
        self.column(|p| p.bound_bc)
    }

    pub fn mean_ee_bc(&self) -> Vec<f64> {
        self.column(|p| p.ee_bc)
    }

    pub fn mean_ee_ec(&self) -> Vec<f64> {
        self.column(|p| p.ee_ec)
    }
}

/// Monte Carlo SE, bounds, power and EE for the optimal designs at one point.
pub fn evaluate_point(
    scenario: &Scenario,
    axis_value: f64,
    budget: &LinkBudget,
    n_trials: usize,
    seed: u64,
) -> Result<SweepPoint> {
    let design = DesignPair::new(&scenario.geometry, &scenario.power, scenario.segmentation)?;
    let bc = estimate_average_se(
        &design.block_geometry,
        &design.block_config,
        budget,
        n_trials,
        seed,
    )?;
    let ec = estimate_average_se(
        &design.element_geometry,
        &design.element_config,
        budget,
        n_trials,
        seed,
    )?;
    let bound_bc = se_upper_bound_bc(&design.block_geometry, &design.block_config, budget)?;
    let bound_ec = se_upper_bound_bc(&design.element_geometry, &design.element_config, budget)?;

    let n_s = scenario.geometry.n_ris_elements;
    let p_ec = power_ec(&scenario.power, n_s, budget.transmit_power);
    let p_bc = power_bc_uniform(
        &scenario.power,
        &design.block_geometry,
        design.rotation,
        budget.transmit_power,
    );

    Ok(SweepPoint {
        axis_value,
        mean_se_bc: bc.mean,
        se_std_error_bc: bc.std_error,
        mean_se_ec: ec.mean,
        se_std_error_ec: ec.std_error,
        bound_bc,
        bound_ec,
        p_ec_watts: p_ec,
        p_bc_watts: p_bc,
        k_star: design.block_geometry.n_blocks,
        ee_bc: energy_efficiency(bc.mean, p_bc)?,
        ee_ec: energy_efficiency(ec.mean, p_ec)?,
    })
}

/// Sweeps one axis. `snr_db` fixes the SNR for the non-SNR axes.
pub fn run_sweep(
    scenario: &Scenario,
    axis: SweepAxis,
    grid: &[f64],
    snr_db: f64,
    n_trials: usize,
    seed: u64,
) -> Result<SweepResult> {
    if grid.is_empty() {
        return Err(Error::invalid("sweep grid is empty"));
    }
    let points = grid
        .iter()
        .map(|&value| {
            let mut point = scenario.clone();
            let snr = match axis {
                SweepAxis::SnrDb => value,
                SweepAxis::Kappa => {
                    point.geometry = point.geometry.with_rician(value, value)?;
                    snr_db
                }
                SweepAxis::NRisElements => {
                    point.geometry = resize(&point.geometry, value, scenario.segmentation)?;
                    snr_db
                }
            };
            let budget = LinkBudget::from_snr_db(snr, scenario.noise_power)?;
            evaluate_point(&point, value, &budget, n_trials, seed)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        axis,
        points,
        n_trials,
        seed,
    })
}

fn resize(
    geometry: &SystemGeometry,
    value: f64,
    segmentation: Segmentation,
) -> Result<SystemGeometry> {
    if value < 1.0 || value.fract() != 0.0 {
        return Err(Error::invalid(format!(
            "N_s = {value} is not a positive integer"
        )));
    }
    let n_s = value as usize;
    let n_blocks = match segmentation {
        Segmentation::Optimal => 1,
        Segmentation::Fixed => geometry.n_blocks,
    };
    let mut g = geometry.clone();
    g.n_ris_elements = n_s;
    g.with_blocks(n_blocks)
}

/// SNR sweep with unit noise power and power-minimising segmentation.
pub fn run_snr_sweep(
    geometry: &SystemGeometry,
    power: &PowerParams,
    snr_grid: &[f64],
    n_trials: usize,
    seed: u64,
) -> Result<SweepResult> {
    let scenario = Scenario {
        geometry: geometry.clone(),
        power: *power,
        noise_power: 1.0,
        segmentation: Segmentation::Optimal,
    };
    run_sweep(&scenario, SweepAxis::SnrDb, snr_grid, 0.0, n_trials, seed)
}

/// One row of a bound-tightness study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TightnessRow {
    pub n_ris_elements: usize,
    pub kappa: f64,
    pub bound: f64,
    pub mean_se: f64,
    pub std_error: f64,
}

impl TightnessRow {
    /// `bound - mean_se`
    pub fn gap(&self) -> f64 {
        self.bound - self.mean_se
    }

    pub fn relative_gap(&self) -> f64 {
        self.gap() / self.bound
    }
}

/// Gap between the bound and the Monte Carlo average for each geometry and
/// each `kappa` (applied to both hops), under the optimal block design.
pub fn bound_tightness_study(
    geometries: &[SystemGeometry],
    kappa_grid: &[f64],
    budget: &LinkBudget,
    n_trials: usize,
    seed: u64,
) -> Result<Vec<TightnessRow>> {
    if kappa_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::invalid("kappa grid must be strictly ascending"));
    }
    let mut rows = Vec::with_capacity(geometries.len() * kappa_grid.len());
    for geometry in geometries {
        for &kappa in kappa_grid {
            let g = geometry.clone().with_rician(kappa, kappa)?;
            let theta = optimal_rotation(g.aoa_ris, g.aod_ris);
            let config = RisConfiguration::uniform_rotation(theta, optimal_phases(&g)?);
            let est = estimate_average_se(&g, &config, budget, n_trials, seed)?;
            rows.push(TightnessRow {
                n_ris_elements: g.n_ris_elements,
                kappa,
                bound: se_upper_bound_bc(&g, &config, budget)?,
                mean_se: est.mean,
                std_error: est.std_error,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn geometry(n_s: usize, k: usize) -> SystemGeometry {
        SystemGeometry::new(8, n_s, k, FRAC_PI_2, PI / 3.0, PI / 4.0, 10.0, 10.0).unwrap()
    }

    fn optimal(g: &SystemGeometry) -> RisConfiguration {
        RisConfiguration::uniform_rotation(
            optimal_rotation(g.aoa_ris, g.aod_ris),
            optimal_phases(g).unwrap(),
        )
    }

    #[test]
    fn estimate_of_constant_samples() {
        let e = Estimate::from_samples(&[0.1; 1000]).unwrap();
        assert_eq!(e.mean, 0.1);
        assert_eq!(e.std_error, 0.0);
        assert!(Estimate::from_samples(&[1.0]).is_err());
        let e = Estimate::from_samples(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_abs_diff_eq!(e.mean, 2.5);
        assert_abs_diff_eq!(e.std_error, (5.0f64 / 3.0 / 4.0).sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn los_only_has_zero_spread() {
        let g = geometry(16, 4).with_los_only(true);
        let budget = LinkBudget::from_snr_db(0.0, 1.0).unwrap();
        let est = estimate_average_se(&g, &optimal(&g), &budget, 50, 1).unwrap();
        assert_eq!(est.std_error, 0.0);
        let bound = se_upper_bound_bc(&g, &optimal(&g), &budget).unwrap();
        assert_abs_diff_eq!(est.mean, bound, epsilon = 1e-9);
    }

    #[test]
    fn same_seed_same_estimate() {
        let g = geometry(16, 4);
        let budget = LinkBudget::from_snr_db(5.0, 1.0).unwrap();
        let a = estimate_average_se(&g, &optimal(&g), &budget, 500, 9).unwrap();
        let b = estimate_average_se(&g, &optimal(&g), &budget, 500, 9).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
        assert!(estimate_average_se(&g, &optimal(&g), &budget, 1, 9).is_err());
    }

    #[test]
    fn average_gain_matches_bound_terms() {
        // E ||h||^2 = C1 |S|^2 + C2, checked without the log
        use crate::metrics::SeBoundTerms;
        let g = geometry(16, 4).with_rician(2.0, 3.0).unwrap();
        let config = RisConfiguration::uniform_rotation(0.2, vec![0.3, -0.4, 1.0, 2.0]);
        let sampler = ChannelSampler::new(&g, &config.rotation_angles).unwrap();
        let v = build_reflection_vector(&config, &g).unwrap();
        let gains: Vec<f64> = (0..20_000)
            .map(|t| {
                let (gm, gv) = sampler.sample(&mut trial_rng(77, t));
                crate::channel::effective_channel(&gm, &gv, &v)
                    .unwrap()
                    .norm_squared()
            })
            .collect();
        let est = Estimate::from_samples(&gains).unwrap();
        let expected = SeBoundTerms::new(&g, &config).unwrap().average_gain();
        assert!(
            (est.mean - expected).abs() < 4.0 * est.std_error,
            "{est:?} vs {expected}"
        );
    }

    #[test]
    fn single_point_sweep_is_composition() {
        let g = geometry(16, 4);
        let power = PowerParams::with_rotation(0.43, 0.003).unwrap();
        let sweep = run_snr_sweep(&g, &power, &[3.0], 300, 5).unwrap();
        let p = &sweep.points[0];
        let design = DesignPair::new(&g, &power, Segmentation::Optimal).unwrap();
        let budget = LinkBudget::from_snr_db(3.0, 1.0).unwrap();
        let est = estimate_average_se(
            &design.block_geometry,
            &design.block_config,
            &budget,
            300,
            5,
        )
        .unwrap();
        assert_eq!(p.mean_se_bc, est.mean);
        assert_eq!(p.k_star, design.block_geometry.n_blocks);
        assert_eq!(p.p_ec_watts, power_ec(&power, 16, budget.transmit_power));
        assert_abs_diff_eq!(p.ee_bc, est.mean / p.p_bc_watts);
        assert!(run_snr_sweep(&g, &power, &[], 300, 5).is_err());
    }

    #[test]
    fn kappa_sweep_rejects_descending_tightness_grid() {
        let budget = LinkBudget::from_snr_db(0.0, 1.0).unwrap();
        assert!(bound_tightness_study(&[geometry(8, 2)], &[10.0, 1.0], &budget, 10, 0).is_err());
    }

    #[test]
    fn element_axis_resizes_surface() {
        let scenario = Scenario {
            geometry: geometry(16, 4),
            power: PowerParams::with_rotation(0.43, 0.003).unwrap(),
            noise_power: 1.0,
            segmentation: Segmentation::Optimal,
        };
        let sweep =
            run_sweep(&scenario, SweepAxis::NRisElements, &[8.0, 32.0], 0.0, 50, 3).unwrap();
        assert_eq!(sweep.points.len(), 2);
        assert!(sweep.points[1].bound_bc > sweep.points[0].bound_bc);
        assert!(run_sweep(&scenario, SweepAxis::NRisElements, &[7.5], 0.0, 50, 3).is_err());
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let g = geometry(16, 4);
        let budget = LinkBudget::from_snr_db(0.0, 1.0).unwrap();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| sample_se(&g, &optimal(&g), &budget, 400, 12).unwrap())
        };
        let one = run(1);
        let many = run(4);
        assert!(one
            .iter()
            .zip(&many)
            .all(|(a, b)| a.to_bits() == b.to_bits()));
    }
}
