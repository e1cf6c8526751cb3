//! Spectral and energy efficiency.
//!
//! With MRT the instantaneous SE is `log2(1 + P/sigma^2 * ||h||^2)`. Its
//! average over the Rician draws is bounded through Jensen by
//! `log2(1 + P/sigma^2 * (C1 |S|^2 + C2))` where
//!
//! ```text
//! S = sum_k e^{j R1_k} sum_i e^{-j R2_{k,i}}
//! R1_k     = gamma_k + (k-1) M pi (cos phi_D + cos phi_A)
//! R2_{k,i} = pi/2 (M - 2i + 1) (cos(phi_D - theta_k) + cos(phi_A - theta_k))
//! ```
//!
//! The double sum is evaluated term by term so arbitrary per-block rotations
//! are handled; angles are never reduced modulo `2 pi`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::channel::{effective_channel, CMatrix, CVector, RisConfiguration, SystemGeometry};
use crate::design::optimal_phases;
use crate::error::{Error, Result};

/// Transmit power, noise power and the SNR they imply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub transmit_power: f64,
    pub noise_power: f64,
    /// `10 log10(P / sigma^2)`; `-inf` when `P = 0`.
    pub snr_db: f64,
}

impl LinkBudget {
    pub fn new(transmit_power: f64, noise_power: f64) -> Result<Self> {
        if !transmit_power.is_finite() || transmit_power < 0.0 {
            return Err(Error::invalid("transmit power must be finite and >= 0"));
        }
        if !noise_power.is_finite() || noise_power <= 0.0 {
            return Err(Error::invalid("noise power must be finite and > 0"));
        }
        Ok(Self {
            transmit_power,
            noise_power,
            snr_db: 10.0 * (transmit_power / noise_power).log10(),
        })
    }

    /// `P = 10^(snr/10) * sigma^2`.
    pub fn from_snr_db(snr_db: f64, noise_power: f64) -> Result<Self> {
        if !snr_db.is_finite() {
            return Err(Error::invalid("SNR must be finite"));
        }
        let mut budget = Self::new(10f64.powf(snr_db / 10.0) * noise_power, noise_power)?;
        budget.snr_db = snr_db;
        Ok(budget)
    }

    pub fn snr_linear(&self) -> f64 {
        self.transmit_power / self.noise_power
    }
}

/// Constants and phase terms of the averaged-SE upper bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SeBoundTerms {
    pub c1: f64,
    pub c2: f64,
    /// `R1_k`, one per block.
    pub r1: Vec<f64>,
    /// `R2_{k,i}`, `K` rows of `M` entries.
    pub r2: Vec<Vec<f64>>,
}

impl SeBoundTerms {
    pub fn new(geometry: &SystemGeometry, config: &RisConfiguration) -> Result<Self> {
        geometry.validate()?;
        config.check(geometry)?;
        let n_b = geometry.n_bs_antennas as f64;
        let n_s = geometry.n_ris_elements as f64;
        let (c1, c2) = if geometry.los_only {
            // kappa -> infinity on both hops
            (n_b, 0.0)
        } else {
            let (k1, k2) = (geometry.rician_bs_ris, geometry.rician_ris_ue);
            let denom = (k1 + 1.0) * (k2 + 1.0);
            (n_b * k1 * k2 / denom, n_b * n_s * (k2 + k1 + 1.0) / denom)
        };

        let (phi_a, phi_d) = (geometry.aoa_ris, geometry.aod_ris);
        let m = geometry.block_size;
        let progression = m as f64 * PI * (phi_d.cos() + phi_a.cos());
        let r1 = config
            .reflection_phases
            .iter()
            .enumerate()
            .map(|(k, gamma)| gamma + k as f64 * progression)
            .collect();
        let r2 = config
            .rotation_angles
            .iter()
            .map(|theta| {
                let specular = (phi_d - theta).cos() + (phi_a - theta).cos();
                (1..=m)
                    .map(|i| FRAC_PI_2 * (m as f64 - 2.0 * i as f64 + 1.0) * specular)
                    .collect()
            })
            .collect();
        Ok(Self { c1, c2, r1, r2 })
    }

    /// `sum_i e^{-j R2_{k,i}}` for every block.
    pub fn inner_sums(&self) -> Vec<Complex64> {
        self.r2
            .iter()
            .map(|row| row.iter().map(|r| Complex64::from_polar(1.0, -r)).sum())
            .collect()
    }

    /// The complex double sum `S`.
    pub fn coherent_sum(&self) -> Complex64 {
        self.r1
            .iter()
            .zip(self.inner_sums())
            .map(|(r1, inner)| Complex64::from_polar(1.0, *r1) * inner)
            .sum()
    }

    /// `C1 |S|^2 + C2`, which equals `E ||h||^2`.
    pub fn average_gain(&self) -> f64 {
        self.c1 * self.coherent_sum().norm_sqr() + self.c2
    }
}

/// Unit-norm maximum ratio transmission precoder `h / ||h||`.
pub fn mrt_precoder(h: &CVector) -> Result<CVector> {
    let norm = h.norm();
    if norm == 0.0 {
        return Err(Error::DegenerateChannel);
    }
    Ok(h.unscale(norm))
}

/// `log2(1 + P/sigma^2 * ||g^T diag(v) G||^2)`.
pub fn se_instantaneous(
    bs_ris: &CMatrix,
    ris_ue: &CVector,
    reflection: &CVector,
    budget: &LinkBudget,
) -> Result<f64> {
    let h = effective_channel(bs_ris, ris_ue, reflection)?;
    Ok((1.0 + budget.snr_linear() * h.norm_squared()).log2())
}

/// Upper bound on the averaged SE of a block-controlled RIS.
pub fn se_upper_bound_bc(
    geometry: &SystemGeometry,
    config: &RisConfiguration,
    budget: &LinkBudget,
) -> Result<f64> {
    let terms = SeBoundTerms::new(geometry, config)?;
    Ok((1.0 + budget.snr_linear() * terms.average_gain()).log2())
}

/// Upper bound for an element-controlled RIS with per-element `phases`.
///
/// This is the block bound with `K = N_s`, `M = 1`; rotations play no role
/// there and are set to zero.
pub fn se_upper_bound_ec(
    geometry: &SystemGeometry,
    phases: &[f64],
    budget: &LinkBudget,
) -> Result<f64> {
    if phases.len() != geometry.n_ris_elements {
        return Err(Error::invalid(format!(
            "{} phases for N_s = {} elements",
            phases.len(),
            geometry.n_ris_elements
        )));
    }
    let ec = geometry.element_controlled();
    let config = RisConfiguration::uniform_rotation(0.0, phases.to_vec());
    se_upper_bound_bc(&ec, &config, budget)
}

/// SE loss `S_EC,u - S_BC,u` when both surfaces use their optimal phases and
/// the blocks are rotated by `rotations`.
pub fn se_gap(geometry: &SystemGeometry, rotations: &[f64], budget: &LinkBudget) -> Result<f64> {
    let bc_config = RisConfiguration::new(rotations.to_vec(), optimal_phases(geometry)?);
    let bc = se_upper_bound_bc(geometry, &bc_config, budget)?;
    let ec = se_upper_bound_ec(
        geometry,
        &optimal_phases(&geometry.element_controlled())?,
        budget,
    )?;
    Ok(ec - bc)
}

/// The same loss written as a single logarithm:
///
/// ```text
/// log2( (P (C1 N_s^2 + C2) + sigma^2) / (P (C1 |sum_k sum_i e^{-j R2_{k,i}}|^2 + C2) + sigma^2) )
/// ```
///
/// With a common rotation the denominator's sum is `K^2 |sum_i e^{-j R2_i}|^2`.
pub fn se_gap_single_log(
    geometry: &SystemGeometry,
    rotations: &[f64],
    budget: &LinkBudget,
) -> Result<f64> {
    // R1 vanishes under optimal phases, so only the rotation terms matter
    let config = RisConfiguration::new(rotations.to_vec(), vec![0.0; geometry.n_blocks]);
    let terms = SeBoundTerms::new(geometry, &config)?;
    let block_sum: Complex64 = terms.inner_sums().into_iter().sum();
    let n_s = geometry.n_ris_elements as f64;
    let (p, noise) = (budget.transmit_power, budget.noise_power);
    let num = p * (terms.c1 * n_s * n_s + terms.c2) + noise;
    let den = p * (terms.c1 * block_sum.norm_sqr() + terms.c2) + noise;
    Ok((num / den).log2())
}

/// `se / total_power` in bits/s/Hz per watt.
pub fn energy_efficiency(se: f64, total_power: f64) -> Result<f64> {
    if !(total_power > 0.0) || !total_power.is_finite() {
        return Err(Error::invalid(format!(
            "total power {total_power} must be positive"
        )));
    }
    Ok(se / total_power)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{build_reflection_vector, trial_rng, ChannelSampler};
    use crate::design::optimal_rotation;
    use approx::assert_abs_diff_eq;

    fn geo(n_b: usize, n_s: usize, k: usize, phi_a: f64, phi_d: f64, kappa: f64) -> SystemGeometry {
        SystemGeometry::new(n_b, n_s, k, phi_a, phi_d, 0.9, kappa, kappa).unwrap()
    }

    fn optimal(geometry: &SystemGeometry) -> RisConfiguration {
        let theta = optimal_rotation(geometry.aoa_ris, geometry.aod_ris);
        RisConfiguration::uniform_rotation(theta, optimal_phases(geometry).unwrap())
    }

    #[test]
    fn mrt_cases() {
        let f = mrt_precoder(&CVector::from_vec(vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 0.0),
        ]))
        .unwrap();
        assert_abs_diff_eq!(f[0].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(f[1].norm(), 0.0);

        let f = mrt_precoder(&CVector::from_vec(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
        ]))
        .unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(f[0].re, s, epsilon = 1e-15);
        assert_abs_diff_eq!(f[1].im, s, epsilon = 1e-15);

        let mut rng = trial_rng(5, 0);
        let g = geo(6, 4, 2, 1.0, 2.0, 1.0);
        let (gm, gv) = ChannelSampler::new(&g, &[0.0, 0.0])
            .unwrap()
            .sample(&mut rng);
        let h = effective_channel(
            &gm,
            &gv,
            &CVector::from_element(4, Complex64::new(1.0, 0.0)),
        )
        .unwrap();
        let f = mrt_precoder(&h).unwrap();
        assert_abs_diff_eq!(h.dotc(&f).norm(), h.norm(), epsilon = 1e-12);

        assert!(matches!(
            mrt_precoder(&CVector::zeros(3)),
            Err(Error::DegenerateChannel)
        ));
    }

    #[test]
    fn zero_power_gives_zero_se() {
        let g = geo(4, 8, 2, 1.0, 2.0, 3.0);
        let budget = LinkBudget::new(0.0, 1.0).unwrap();
        let (gm, gv) = ChannelSampler::new(&g, &[0.0, 0.0])
            .unwrap()
            .sample(&mut trial_rng(1, 1));
        let v = CVector::from_element(8, Complex64::new(1.0, 0.0));
        assert_eq!(se_instantaneous(&gm, &gv, &v, &budget).unwrap(), 0.0);
        assert_eq!(se_upper_bound_bc(&g, &optimal(&g), &budget).unwrap(), 0.0);
    }

    #[test]
    fn se_matches_expanded_cascade() {
        let g = geo(2, 4, 2, 1.2, 0.6, 2.0);
        let budget = LinkBudget::from_snr_db(3.0, 1.0).unwrap();
        let (gm, gv) = ChannelSampler::new(&g, &[0.1, -0.2])
            .unwrap()
            .sample(&mut trial_rng(11, 2));
        let config = RisConfiguration::new(vec![0.1, -0.2], vec![0.4, -1.1]);
        let v = build_reflection_vector(&config, &g).unwrap();
        let mut power = 0.0;
        for b in 0..2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for n in 0..4 {
                acc += gv[n] * v[n] * gm[(n, b)];
            }
            power += acc.norm_sqr();
        }
        let expected = (1.0 + budget.snr_linear() * power).log2();
        assert_abs_diff_eq!(
            se_instantaneous(&gm, &gv, &v, &budget).unwrap(),
            expected,
            epsilon = 1e-12
        );
    }

    #[test]
    fn coherent_bound_value() {
        // N_b=32, N_s=16, kappa=10, unit SNR; frozen from an independent script
        let g = geo(32, 16, 16, 0.3, 0.3, 10.0);
        let budget = LinkBudget::new(1.0, 1.0).unwrap();
        let terms = SeBoundTerms::new(&g, &optimal(&g)).unwrap();
        assert_abs_diff_eq!(terms.c1, 3200.0 / 121.0, epsilon = 1e-12);
        assert_abs_diff_eq!(terms.c2, 32.0 * 16.0 * 21.0 / 121.0, epsilon = 1e-12);
        let bound = se_upper_bound_bc(&g, &optimal(&g), &budget).unwrap();
        assert_abs_diff_eq!(bound, 12.744015455678234, epsilon = 1e-9);
    }

    #[test]
    fn optimal_design_reaches_coherent_maximum() {
        for (k, m) in [(1, 16), (4, 4), (16, 1), (2, 8)] {
            let g = geo(8, k * m, k, 1.9, 0.8, 4.0);
            let budget = LinkBudget::from_snr_db(5.0, 1.0).unwrap();
            let terms = SeBoundTerms::new(&g, &optimal(&g)).unwrap();
            let n_s = (k * m) as f64;
            let max = (1.0 + budget.snr_linear() * (terms.c1 * n_s * n_s + terms.c2)).log2();
            assert_abs_diff_eq!(
                se_upper_bound_bc(&g, &optimal(&g), &budget).unwrap(),
                max,
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn ec_bound_is_block_bound_with_unit_blocks() {
        let g = geo(8, 12, 12, 1.3, 2.2, 3.0);
        let budget = LinkBudget::from_snr_db(0.0, 1.0).unwrap();
        let phases: Vec<f64> = (0..12).map(|i| (i as f64 * 0.77).sin() * 3.0).collect();
        let ec = se_upper_bound_ec(&g, &phases, &budget).unwrap();
        let bc = se_upper_bound_bc(
            &g,
            &RisConfiguration::uniform_rotation(0.4, phases.clone()),
            &budget,
        )
        .unwrap();
        assert_eq!(ec.to_bits(), bc.to_bits());
        assert!(se_upper_bound_ec(&g, &phases[..5], &budget).is_err());
    }

    #[test]
    fn random_ec_phases_never_beat_coherent() {
        use rand::Rng;
        let g = geo(4, 8, 8, 1.0, 2.5, 2.0);
        let budget = LinkBudget::new(1.0, 1.0).unwrap();
        let best = se_upper_bound_ec(&g, &optimal_phases(&g).unwrap(), &budget).unwrap();
        let mut rng = trial_rng(3, 0);
        for _ in 0..10_000 {
            let phases: Vec<f64> = (0..8).map(|_| rng.random_range(-PI..PI)).collect();
            assert!(se_upper_bound_ec(&g, &phases, &budget).unwrap() <= best + 1e-12);
        }
    }

    #[test]
    fn gap_vanishes_under_optimal_rotation_or_unit_blocks() {
        let budget = LinkBudget::from_snr_db(10.0, 1.0).unwrap();
        let g = geo(8, 32, 4, 1.4, 0.9, 5.0);
        let theta = optimal_rotation(g.aoa_ris, g.aod_ris);
        assert_abs_diff_eq!(
            se_gap(&g, &[theta; 4], &budget).unwrap(),
            0.0,
            epsilon = 1e-12
        );

        let ec = g.element_controlled();
        assert_abs_diff_eq!(
            se_gap(&ec, &vec![0.37; 32], &budget).unwrap(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn gap_at_broadside_arrival() {
        // theta = 0, phi_A = pi/2, phi_D = pi/3, K = M = 8, N_b = 32, kappa = 10, unit SNR
        let g = geo(32, 64, 8, FRAC_PI_2, PI / 3.0, 10.0);
        let budget = LinkBudget::new(1.0, 1.0).unwrap();
        let gap = se_gap(&g, &[0.0; 8], &budget).unwrap();
        assert_abs_diff_eq!(gap, 8.252224912766998, epsilon = 1e-9);
        assert_abs_diff_eq!(
            gap,
            se_gap_single_log(&g, &[0.0; 8], &budget).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn bound_is_periodic_in_angles() {
        let g = geo(4, 12, 3, 1.1, 2.0, 1.5);
        let budget = LinkBudget::from_snr_db(2.0, 1.0).unwrap();
        let base = RisConfiguration::new(vec![0.1, -0.3, 0.2], vec![1.0, -2.0, 0.5]);
        let mut shifted = base.clone();
        shifted.rotation_angles[1] += 2.0 * PI;
        shifted.reflection_phases[2] += 2.0 * PI;
        let a = se_upper_bound_bc(&g, &base, &budget).unwrap();
        let b = se_upper_bound_bc(&g, &shifted, &budget).unwrap();
        assert_abs_diff_eq!(a, b, epsilon = 1e-12);
    }

    #[test]
    fn energy_efficiency_cases() {
        assert_eq!(energy_efficiency(0.0, 5.0).unwrap(), 0.0);
        assert_abs_diff_eq!(
            energy_efficiency(10.0, 20.88).unwrap(),
            0.4789272030651341,
            epsilon = 1e-12
        );
        let e1 = energy_efficiency(7.0, 3.0).unwrap();
        let e2 = energy_efficiency(7.0, 6.0).unwrap();
        assert_abs_diff_eq!(e1, 2.0 * e2, epsilon = 1e-15);
        assert!(energy_efficiency(1.0, 0.0).is_err());
        assert!(energy_efficiency(1.0, -2.0).is_err());
    }

    #[test]
    fn link_budget_from_snr() {
        let b = LinkBudget::from_snr_db(20.0, 1.0).unwrap();
        assert_abs_diff_eq!(b.transmit_power, 100.0, epsilon = 1e-9);
        let b = LinkBudget::from_snr_db(-10.0, 2.0).unwrap();
        assert_abs_diff_eq!(b.transmit_power, 0.2, epsilon = 1e-12);
        assert!(LinkBudget::new(1.0, 0.0).is_err());
        assert!(LinkBudget::new(-1.0, 1.0).is_err());
    }
}
