//! Total power consumption of element- and block-controlled surfaces.
//!
//! ```text
//! P_EC = P0 + xi P + N_s P1
//! P_BC = P0 + xi P + K (P1 + P2) + sum_k (M^2 - 1)/4 |theta_k| P_unit
//! ```
//!
//! Rotating an `M`-element block about its midpoint by `|theta|` costs
//! `2 sum_{m=0}^{(M-1)/2} m |theta| P_unit`. For odd `M` that sum is exactly
//! `(M^2 - 1)/4`; the closed form is used for every `M`. With `M = 1` there
//! is no rotation mechanism and the `P2` term is dropped.

use serde::{Deserialize, Serialize};

use crate::channel::SystemGeometry;
use crate::error::{Error, Result};

/// Power coefficients in watts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerParams {
    /// `P0`: BS, UE and RIS static circuits.
    pub static_power: f64,
    /// `P1`: one reflection-phase control circuit.
    pub phase_circuit_power: f64,
    /// `P2`: one rotate control circuit.
    pub rotate_circuit_power: f64,
    /// `P_unit`: per element-unit-distance per radian of rotation.
    pub unit_rotation_power: f64,
    /// `xi`: power amplifier slope.
    pub amplifier_slope: f64,
}

impl PowerParams {
    pub const DEFAULT_STATIC: f64 = 12.0;
    pub const DEFAULT_PHASE_CIRCUIT: f64 = 0.12;
    pub const DEFAULT_AMPLIFIER_SLOPE: f64 = 1.2;

    pub fn new(
        static_power: f64,
        phase_circuit_power: f64,
        rotate_circuit_power: f64,
        unit_rotation_power: f64,
        amplifier_slope: f64,
    ) -> Result<Self> {
        let params = Self {
            static_power,
            phase_circuit_power,
            rotate_circuit_power,
            unit_rotation_power,
            amplifier_slope,
        };
        params.validate()?;
        Ok(params)
    }

    /// `P0 = 12 W`, `P1 = 0.12 W`, `xi = 1.2` with the given rotation coefficients.
    pub fn with_rotation(rotate_circuit_power: f64, unit_rotation_power: f64) -> Result<Self> {
        Self::new(
            Self::DEFAULT_STATIC,
            Self::DEFAULT_PHASE_CIRCUIT,
            rotate_circuit_power,
            unit_rotation_power,
            Self::DEFAULT_AMPLIFIER_SLOPE,
        )
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("static_power", self.static_power),
            ("phase_circuit_power", self.phase_circuit_power),
            ("rotate_circuit_power", self.rotate_circuit_power),
            ("unit_rotation_power", self.unit_rotation_power),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::invalid(format!(
                    "{name} = {v} must be finite and >= 0"
                )));
            }
        }
        if !self.amplifier_slope.is_finite() || self.amplifier_slope < 1.0 {
            return Err(Error::invalid(format!(
                "amplifier_slope = {} must be finite and >= 1",
                self.amplifier_slope
            )));
        }
        Ok(())
    }

    /// `(P1 + P2) / P_unit`; infinite when `P_unit = 0`.
    pub fn p_ratio(&self) -> f64 {
        (self.phase_circuit_power + self.rotate_circuit_power) / self.unit_rotation_power
    }
}

/// `(M^2 - 1) / 4`, the lever-arm factor of one block rotation.
pub fn rotation_lever_factor(block_size: usize) -> f64 {
    let m = block_size as f64;
    (m * m - 1.0) / 4.0
}

/// `2 sum_{m=0}^{(M-1)/2} m` for odd `M`.
pub fn rotation_lever_sum(block_size: usize) -> Option<u64> {
    if block_size.is_multiple_of(2) {
        return None;
    }
    let half = (block_size as u64 - 1) / 2;
    Some(2 * (0..=half).sum::<u64>())
}

/// Total power with an element-controlled RIS of `n_elements` elements.
pub fn power_ec(params: &PowerParams, n_elements: usize, transmit_power: f64) -> f64 {
    params.static_power
        + params.amplifier_slope * transmit_power
        + n_elements as f64 * params.phase_circuit_power
}

fn circuit_power(params: &PowerParams, n_blocks: usize, block_size: usize) -> f64 {
    let per_block = if block_size == 1 {
        params.phase_circuit_power
    } else {
        params.phase_circuit_power + params.rotate_circuit_power
    };
    n_blocks as f64 * per_block
}

/// Total power with a rotatable block-controlled RIS and per-block rotations.
pub fn power_bc(
    params: &PowerParams,
    geometry: &SystemGeometry,
    rotations: &[f64],
    transmit_power: f64,
) -> Result<f64> {
    if rotations.len() != geometry.n_blocks {
        return Err(Error::invalid(format!(
            "{} rotations for K = {} blocks",
            rotations.len(),
            geometry.n_blocks
        )));
    }
    let lever = rotation_lever_factor(geometry.block_size);
    let rotation: f64 = rotations
        .iter()
        .map(|theta| lever * theta.abs() * params.unit_rotation_power)
        .sum();
    Ok(params.static_power
        + params.amplifier_slope * transmit_power
        + circuit_power(params, geometry.n_blocks, geometry.block_size)
        + rotation)
}

/// [`power_bc`] with every block at the same angle `theta`.
pub fn power_bc_uniform(
    params: &PowerParams,
    geometry: &SystemGeometry,
    theta: f64,
    transmit_power: f64,
) -> f64 {
    power_bc_segmented(
        params,
        geometry.n_blocks,
        geometry.block_size,
        theta,
        transmit_power,
    )
}

/// Uniform-rotation block power for an explicit `K x M` segmentation.
pub fn power_bc_segmented(
    params: &PowerParams,
    n_blocks: usize,
    block_size: usize,
    theta: f64,
    transmit_power: f64,
) -> f64 {
    params.static_power
        + params.amplifier_slope * transmit_power
        + circuit_power(params, n_blocks, block_size)
        + n_blocks as f64
            * rotation_lever_factor(block_size)
            * theta.abs()
            * params.unit_rotation_power
}
