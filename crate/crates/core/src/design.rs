//! Closed-form design rules for the rotatable block-controlled RIS.
//!
//! * reflection phases that make the block LoS contributions add coherently,
//! * the common rotation that turns every block into a specular reflector,
//! * the block count minimising the block-controlled power, together with an
//!   exhaustive divisor search used as its oracle,
//! * the rotate-circuit power regimes under which the block design draws
//!   less power than the element-controlled one.
//!
//! A segmentation `K x M` is admissible when `K` divides `N_s` and
//! `M >= 2`; an `M = 1` surface is element-controlled and has no rotation
//! mechanism. The only exception is `N_s = 1`, where `K = 1` is kept.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::channel::SystemGeometry;
use crate::error::{Error, Result};
use crate::power::{power_bc_segmented, power_ec, PowerParams};

/// Number of interior grid steps over `|theta| in [0, pi/6]` for the feasibility margin.
pub const FEASIBILITY_GRID_STEPS: usize = 1000;

const MAX_BRUTE_FORCE_ELEMENTS: usize = 1 << 20;
const BOUNDARY_RTOL: f64 = 1e-12;

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_phase(x: f64) -> f64 {
    let w = (x + PI).rem_euclid(2.0 * PI) - PI;
    if w <= -PI {
        w + 2.0 * PI
    } else {
        w
    }
}

/// `gamma_k = -(k-1) M pi (cos phi_D + cos phi_A)`, wrapped into `(-pi, pi]`.
///
/// Pass the element-controlled geometry (`K = N_s`, `M = 1`) for per-element phases.
pub fn optimal_phases(geometry: &SystemGeometry) -> Result<Vec<f64>> {
    geometry.validate()?;
    let step = geometry.block_size as f64 * PI * (geometry.aod_ris.cos() + geometry.aoa_ris.cos());
    Ok((0..geometry.n_blocks)
        .map(|k| wrap_phase(-(k as f64) * step))
        .collect())
}

/// `theta = (phi_D + phi_A)/2 - pi/2`, so `cos(phi_D - theta) + cos(phi_A - theta) = 0`.
pub fn optimal_rotation(aoa: f64, aod: f64) -> f64 {
    (aod + aoa) / 2.0 - FRAC_PI_2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SegmentationBranch {
    /// `K = N_s / 2`, pairs of elements.
    FullSplit,
    Interior,
    /// `K = 1`, the whole surface is one block.
    SingleBlock,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentationResult {
    /// Optimum of the continuous relaxation, before divisor rounding.
    pub continuous_k: f64,
    pub chosen_k: usize,
    pub chosen_m: usize,
    /// Block-controlled power at zero transmit power (`P0` + circuits + rotation).
    pub power_at_chosen: f64,
    pub branch: SegmentationBranch,
    /// `(P1 + P2) / P_unit`
    pub p_ratio: f64,
}

/// All divisors of `n` in ascending order.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            low.push(d);
            if d * d != n {
                high.push(n / d);
            }
        }
        d += 1;
    }
    low.extend(high.into_iter().rev());
    low
}

/// Block counts `K` with `K | N_s` and `N_s / K >= 2` (or `[1]` for `N_s = 1`).
pub fn admissible_block_counts(n_elements: usize) -> Vec<usize> {
    if n_elements == 1 {
        return vec![1];
    }
    divisors(n_elements)
        .into_iter()
        .filter(|k| n_elements / k >= 2)
        .collect()
}

/// Piecewise continuous optimum of the block count and the branch it falls in.
pub fn continuous_block_count(
    params: &PowerParams,
    n_elements: usize,
    theta: f64,
) -> (f64, SegmentationBranch) {
    if params.unit_rotation_power == 0.0 {
        return (1.0, SegmentationBranch::SingleBlock);
    }
    let ratio = params.p_ratio();
    let n = n_elements as f64;
    let a = theta.abs();
    if 0.8 * ratio <= a {
        (n / 2.0, SegmentationBranch::FullSplit)
    } else if a <= 4.0 * ratio / (n * n + 1.0) {
        (1.0, SegmentationBranch::SingleBlock)
    } else {
        (
            (n * n * a / (4.0 * ratio - a)).sqrt(),
            SegmentationBranch::Interior,
        )
    }
}

fn segmentation_power(params: &PowerParams, n_elements: usize, k: usize, theta: f64) -> f64 {
    power_bc_segmented(params, k, n_elements / k, theta, 0.0)
}

fn round_to_admissible(
    params: &PowerParams,
    n_elements: usize,
    admissible: &[usize],
    continuous_k: f64,
    theta: f64,
) -> usize {
    let below = admissible.iter().rev().find(|&&k| k as f64 <= continuous_k);
    let above = admissible.iter().find(|&&k| k as f64 >= continuous_k);
    match (below, above) {
        (Some(&lo), Some(&hi)) if lo != hi => {
            let p_lo = segmentation_power(params, n_elements, lo, theta);
            let p_hi = segmentation_power(params, n_elements, hi, theta);
            if p_hi <= p_lo {
                hi
            } else {
                lo
            }
        }
        (Some(&k), _) | (None, Some(&k)) => k,
        (None, None) => 1,
    }
}

fn segment(
    params: &PowerParams,
    n_elements: usize,
    admissible: &[usize],
    theta: f64,
) -> SegmentationResult {
    let (continuous_k, branch) = continuous_block_count(params, n_elements, theta);
    let chosen_k = round_to_admissible(params, n_elements, admissible, continuous_k, theta);
    SegmentationResult {
        continuous_k,
        chosen_k,
        chosen_m: n_elements / chosen_k,
        power_at_chosen: segmentation_power(params, n_elements, chosen_k, theta),
        branch,
        p_ratio: params.p_ratio(),
    }
}

/// Power-minimising block count for a common rotation `theta`.
///
/// The continuous optimum is
///
/// ```text
/// K* = N_s / 2                                  for 4/5 P_ratio <= |theta| <= pi/6
/// K* = sqrt(N_s^2 |theta| / (4 P_ratio - |theta|))   in between
/// K* = 1                                        for |theta| <= 4 P_ratio / (N_s^2 + 1)
/// ```
///
/// and is rounded to whichever bracketing admissible divisor draws less
/// power (the larger one on a tie).
pub fn optimal_block_count(
    params: &PowerParams,
    n_elements: usize,
    theta: f64,
) -> Result<SegmentationResult> {
    params.validate()?;
    if n_elements == 0 {
        return Err(Error::invalid("N_s must be positive"));
    }
    if !theta.is_finite() {
        return Err(Error::invalid("rotation must be finite"));
    }
    if theta.abs() > FRAC_PI_6 {
        return Err(Error::OutOfSector { theta: theta.abs() });
    }
    let admissible = admissible_block_counts(n_elements);
    Ok(segment(params, n_elements, &admissible, theta))
}

/// Exhaustive search over every admissible divisor.
pub fn brute_force_block_count(
    params: &PowerParams,
    n_elements: usize,
    theta: f64,
) -> Result<SegmentationResult> {
    params.validate()?;
    if n_elements == 0 || n_elements > MAX_BRUTE_FORCE_ELEMENTS {
        return Err(Error::invalid(format!(
            "N_s = {n_elements} outside 1..={MAX_BRUTE_FORCE_ELEMENTS}"
        )));
    }
    let admissible = admissible_block_counts(n_elements);
    let mut best = (
        admissible[0],
        segmentation_power(params, n_elements, admissible[0], theta),
    );
    for &k in &admissible[1..] {
        let p = segmentation_power(params, n_elements, k, theta);
        if p <= best.1 {
            best = (k, p);
        }
    }
    let (chosen_k, power_at_chosen) = best;
    let branch = if chosen_k == 1 {
        SegmentationBranch::SingleBlock
    } else if Some(&chosen_k) == admissible.last() {
        SegmentationBranch::FullSplit
    } else {
        SegmentationBranch::Interior
    };
    Ok(SegmentationResult {
        continuous_k: chosen_k as f64,
        chosen_k,
        chosen_m: n_elements / chosen_k,
        power_at_chosen,
        branch,
        p_ratio: params.p_ratio(),
    })
}

/// The `P_unit` ranges under which the rotate-circuit condition is stated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// `P_unit >= 24 (P1+P2) / (5 pi)`: blocks of two at the sector edge.
    A,
    /// Between the two thresholds: interior block count.
    B,
    /// `P_unit <= 24 (P1+P2) / (pi (N_s^2 + 1))`: a single block.
    C,
    /// No block segmentation exists (`N_s < 2`).
    None,
}

impl Regime {
    pub fn label(&self) -> &'static str {
        match self {
            Regime::A => "20a",
            Regime::B => "20b",
            Regime::C => "20c",
            Regime::None => "none",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityVerdict {
    pub regime: Regime,
    /// The regime's closed-form `P2` inequality holds (or, for [`Regime::None`], `margin > 0`).
    pub feasible: bool,
    /// `P_EC - max_theta P_BC` with `K` from [`optimal_block_count`] (divisor-rounded).
    pub margin: f64,
    /// Same margin with the unrounded continuous block count.
    pub relaxed_margin: f64,
    /// `P_unit` sits on a regime threshold; the lower-`P_unit` regime was reported.
    pub on_boundary: bool,
}

impl FeasibilityVerdict {
    /// `feasible` is backed by a positive divisor-rounded margin.
    pub fn consistent(&self) -> bool {
        !self.feasible || self.margin > 0.0
    }
}

/// `P_unit` thresholds `(lower, upper)` separating the three regimes.
pub fn regime_thresholds(params: &PowerParams, n_elements: usize) -> (f64, f64) {
    let s = params.phase_circuit_power + params.rotate_circuit_power;
    let n = n_elements as f64;
    (24.0 * s / (PI * (n * n + 1.0)), 24.0 * s / (5.0 * PI))
}

fn near(x: f64, boundary: f64) -> bool {
    (x - boundary).abs() <= BOUNDARY_RTOL * boundary.abs()
}

fn classify(params: &PowerParams, n_elements: usize) -> (Regime, bool) {
    if n_elements < 2 {
        return (Regime::None, false);
    }
    let (lower, upper) = regime_thresholds(params, n_elements);
    let pu = params.unit_rotation_power;
    if near(pu, lower) {
        (Regime::C, true)
    } else if near(pu, upper) {
        (Regime::B, true)
    } else if pu > upper {
        (Regime::A, false)
    } else if pu > lower {
        (Regime::B, false)
    } else {
        (Regime::C, false)
    }
}

fn closed_form_holds(regime: Regime, params: &PowerParams, n_elements: usize) -> Option<bool> {
    let (p1, p2, pu) = (
        params.phase_circuit_power,
        params.rotate_circuit_power,
        params.unit_rotation_power,
    );
    let n = n_elements as f64;
    match regime {
        Regime::A => Some(p2 < p1 - PI * pu / 8.0),
        Regime::B => Some(p2 < (pu - 12.0 * p1 / PI).powi(2) * PI / (24.0 * pu)),
        Regime::C => Some(p2 < (n - 1.0) * p1 - (n * n - 1.0) * PI * pu / 24.0),
        Regime::None => None,
    }
}

/// `|theta|` grid over the sector: `FEASIBILITY_GRID_STEPS + 1` points with both endpoints exact.
pub fn sector_grid() -> impl Iterator<Item = f64> {
    (0..=FEASIBILITY_GRID_STEPS).map(|i| {
        if i == FEASIBILITY_GRID_STEPS {
            FRAC_PI_6
        } else {
            FRAC_PI_6 * i as f64 / FEASIBILITY_GRID_STEPS as f64
        }
    })
}

fn relaxed_power(params: &PowerParams, n_elements: usize, k: f64, theta: f64) -> f64 {
    let m = n_elements as f64 / k;
    params.static_power
        + k * (params.phase_circuit_power + params.rotate_circuit_power)
        + k * (m * m - 1.0) / 4.0 * theta.abs() * params.unit_rotation_power
}

/// Checks whether rotatable blocks can undercut the element-controlled power
/// for every rotation in the sector, both by the closed-form `P2` bound of
/// the applicable regime and by brute force over the `|theta|` grid.
pub fn p2_feasibility(params: &PowerParams, n_elements: usize) -> Result<FeasibilityVerdict> {
    params.validate()?;
    if n_elements == 0 {
        return Err(Error::invalid("N_s must be positive"));
    }
    let (regime, on_boundary) = classify(params, n_elements);
    let admissible = admissible_block_counts(n_elements);
    let ec = power_ec(params, n_elements, 0.0);

    let mut worst = f64::NEG_INFINITY;
    let mut worst_relaxed = f64::NEG_INFINITY;
    for theta in sector_grid() {
        let seg = segment(params, n_elements, &admissible, theta);
        worst = worst.max(seg.power_at_chosen);
        let relaxed = if seg.chosen_m == 1 {
            seg.power_at_chosen
        } else {
            relaxed_power(params, n_elements, seg.continuous_k, theta)
        };
        worst_relaxed = worst_relaxed.max(relaxed);
    }
    let margin = ec - worst;
    let relaxed_margin = ec - worst_relaxed;
    let feasible = closed_form_holds(regime, params, n_elements).unwrap_or(margin > 0.0);
    Ok(FeasibilityVerdict {
        regime,
        feasible,
        margin,
        relaxed_margin,
        on_boundary,
    })
}
