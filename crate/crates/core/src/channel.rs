//! Channel synthesis for a rotated-block RIS link.
//!
//! The BS uses a half-wavelength ULA with `N_b` antennas, the RIS a ULA of
//! `N_s = K * M` elements split into `K` blocks that can each rotate by
//! `theta_k` about their midpoint. Both hops are Rician:
//!
//! ```text
//! G = sqrt(k1/(k1+1)) * sqrt(N_b N_s) a_s(phi_A, theta) a_b(phi_D_bs)^H + sqrt(1/(k1+1)) * G~
//! g = sqrt(k2/(k2+1)) * sqrt(N_s)     a_s(phi_D, theta)                 + sqrt(1/(k2+1)) * g~
//! ```
//!
//! and the end-to-end channel satisfies `h^H = g^T diag(v) G` for the
//! reflection vector `v`.
//!
//! # Indexing
//!
//! Externally every vector is 0-indexed. Inside a block the local phase uses
//! the 1-based element index `m = 1..=M`, so element `i` (0-based) of block
//! `k` (0-based) sits at `m = i + 1` and has local phase
//! `(m - (M+1)/2) * pi * cos(angle - theta_k)`. For even `M` the rotation
//! centre falls between two elements.
//!
//! # Random draws
//!
//! Trial `i` of a run seeded with `seed` uses [`trial_rng`], a ChaCha8 stream
//! keyed by `seed` with stream id `i`. NLoS entries are drawn as
//! `CN(0, 1)`: real and imaginary parts are each `N(0, 1/2)`, produced by
//! `rand_distr::StandardNormal` (ziggurat) scaled by `1/sqrt(2)`. The draw
//! order is `G~` row-major (element, antenna) with the real part first, then
//! `g~` in element order.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type CVector = DVector<Complex64>;
pub type CMatrix = DMatrix<Complex64>;

/// Array sizes, block segmentation, LoS angles and Rician factors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemGeometry {
    /// `N_b`
    pub n_bs_antennas: usize,
    /// `N_s`
    pub n_ris_elements: usize,
    /// `K`
    pub n_blocks: usize,
    /// `M`
    pub block_size: usize,
    /// AoA at the RIS, `phi_A`.
    pub aoa_ris: f64,
    /// AoD at the RIS towards the UE, `phi_D`.
    pub aod_ris: f64,
    /// AoD at the BS.
    pub aod_bs: f64,
    /// `kappa_1`
    pub rician_bs_ris: f64,
    /// `kappa_2`
    pub rician_ris_ue: f64,
    /// Infinite Rician factor on both hops: channels equal their LoS parts.
    #[serde(default)]
    pub los_only: bool,
}

impl SystemGeometry {
    /// Builds a validated geometry with `K` blocks of `M = N_s / K` elements.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        n_bs_antennas: usize,
        n_ris_elements: usize,
        n_blocks: usize,
        aoa_ris: f64,
        aod_ris: f64,
        aod_bs: f64,
        rician_bs_ris: f64,
        rician_ris_ue: f64,
    ) -> Result<Self> {
        if n_blocks == 0 || !n_ris_elements.is_multiple_of(n_blocks) {
            return Err(Error::invalid(format!(
                "K = {n_blocks} must divide N_s = {n_ris_elements}"
            )));
        }
        let geometry = Self {
            n_bs_antennas,
            n_ris_elements,
            n_blocks,
            block_size: n_ris_elements / n_blocks,
            aoa_ris,
            aod_ris,
            aod_bs,
            rician_bs_ris,
            rician_ris_ue,
            los_only: false,
        };
        geometry.validate()?;
        Ok(geometry)
    }

    pub fn with_los_only(mut self, los_only: bool) -> Self {
        self.los_only = los_only;
        self
    }

    pub fn with_rician(mut self, kappa_bs_ris: f64, kappa_ris_ue: f64) -> Result<Self> {
        self.rician_bs_ris = kappa_bs_ris;
        self.rician_ris_ue = kappa_ris_ue;
        self.validate()?;
        Ok(self)
    }

    /// Same surface re-segmented into `n_blocks` blocks.
    pub fn with_blocks(&self, n_blocks: usize) -> Result<Self> {
        if n_blocks == 0 || !self.n_ris_elements.is_multiple_of(n_blocks) {
            return Err(Error::invalid(format!(
                "K = {n_blocks} must divide N_s = {}",
                self.n_ris_elements
            )));
        }
        let mut g = self.clone();
        g.n_blocks = n_blocks;
        g.block_size = self.n_ris_elements / n_blocks;
        Ok(g)
    }

    /// The element-controlled counterpart: `K = N_s`, `M = 1`.
    pub fn element_controlled(&self) -> Self {
        let mut g = self.clone();
        g.n_blocks = self.n_ris_elements;
        g.block_size = 1;
        g
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_bs_antennas == 0 {
            return Err(Error::invalid("N_b must be positive"));
        }
        if self.n_ris_elements == 0 || self.n_blocks == 0 || self.block_size == 0 {
            return Err(Error::invalid("N_s, K and M must be positive"));
        }
        if self.n_blocks * self.block_size != self.n_ris_elements {
            return Err(Error::invalid(format!(
                "N_s = {} is not K x M = {} x {}",
                self.n_ris_elements, self.n_blocks, self.block_size
            )));
        }
        for (name, angle) in [
            ("aoa_ris", self.aoa_ris),
            ("aod_ris", self.aod_ris),
            ("aod_bs", self.aod_bs),
        ] {
            if !angle.is_finite() || !(0.0..=PI).contains(&angle) {
                return Err(Error::invalid(format!("{name} = {angle} outside [0, pi]")));
            }
        }
        for (name, kappa) in [
            ("rician_bs_ris", self.rician_bs_ris),
            ("rician_ris_ue", self.rician_ris_ue),
        ] {
            if !kappa.is_finite() || kappa < 0.0 {
                return Err(Error::invalid(format!(
                    "{name} = {kappa} must be finite and >= 0"
                )));
            }
        }
        Ok(())
    }
}

/// Per-block rotation angles `theta_k` and common reflection phases `gamma_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RisConfiguration {
    pub rotation_angles: Vec<f64>,
    pub reflection_phases: Vec<f64>,
}

impl RisConfiguration {
    pub fn new(rotation_angles: Vec<f64>, reflection_phases: Vec<f64>) -> Self {
        Self {
            rotation_angles,
            reflection_phases,
        }
    }

    /// All blocks rotated by the same `theta`.
    pub fn uniform_rotation(theta: f64, reflection_phases: Vec<f64>) -> Self {
        let rotation_angles = vec![theta; reflection_phases.len()];
        Self::new(rotation_angles, reflection_phases)
    }

    pub fn check(&self, geometry: &SystemGeometry) -> Result<()> {
        let k = geometry.n_blocks;
        if self.rotation_angles.len() != k || self.reflection_phases.len() != k {
            return Err(Error::invalid(format!(
                "configuration has {} rotations and {} phases, geometry has K = {k}",
                self.rotation_angles.len(),
                self.reflection_phases.len()
            )));
        }
        if self
            .rotation_angles
            .iter()
            .chain(&self.reflection_phases)
            .any(|x| !x.is_finite())
        {
            return Err(Error::invalid("configuration angles must be finite"));
        }
        Ok(())
    }
}

/// One sampled `(G, g)` pair plus the cascaded channel `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    /// `G`, `N_s x N_b`.
    pub bs_ris_matrix: CMatrix,
    /// `g`, length `N_s`.
    pub ris_ue_vector: CVector,
    /// `h`, length `N_b`, with `h^H = g^T diag(v) G`.
    pub effective_channel: CVector,
}

impl ChannelRealization {
    pub fn new(
        bs_ris_matrix: CMatrix,
        ris_ue_vector: CVector,
        reflection: &CVector,
    ) -> Result<Self> {
        let effective_channel = effective_channel(&bs_ris_matrix, &ris_ue_vector, reflection)?;
        Ok(Self {
            bs_ris_matrix,
            ris_ue_vector,
            effective_channel,
        })
    }
}

/// Normalised BS steering vector: entry `m` is `exp(j m pi cos(aod)) / sqrt(N)`.
pub fn bs_array_response(aod: f64, n_antennas: usize) -> Result<CVector> {
    if n_antennas == 0 {
        return Err(Error::invalid("antenna count must be positive"));
    }
    if !aod.is_finite() {
        return Err(Error::invalid("angle must be finite"));
    }
    let scale = 1.0 / (n_antennas as f64).sqrt();
    let step = PI * aod.cos();
    Ok(CVector::from_fn(n_antennas, |m, _| {
        Complex64::from_polar(scale, m as f64 * step)
    }))
}

/// Phase of element `i` (0-based) in block `k` (0-based) for a wave at `angle`.
pub(crate) fn element_phase(
    k: usize,
    i: usize,
    block_size: usize,
    angle: f64,
    theta_k: f64,
) -> f64 {
    let m = (i + 1) as f64;
    let global = (k * block_size) as f64 * PI * angle.cos();
    let local = (m - (block_size as f64 + 1.0) / 2.0) * PI * (angle - theta_k).cos();
    global + local
}

/// Normalised response of the rotated-block RIS towards `angle`.
pub fn ris_array_response(
    angle: f64,
    rotations: &[f64],
    geometry: &SystemGeometry,
) -> Result<CVector> {
    if rotations.len() != geometry.n_blocks {
        return Err(Error::invalid(format!(
            "{} rotations for K = {} blocks",
            rotations.len(),
            geometry.n_blocks
        )));
    }
    if !angle.is_finite() || rotations.iter().any(|t| !t.is_finite()) {
        return Err(Error::invalid("angles must be finite"));
    }
    let m = geometry.block_size;
    let scale = 1.0 / (geometry.n_ris_elements as f64).sqrt();
    Ok(CVector::from_fn(geometry.n_ris_elements, |idx, _| {
        let (k, i) = (idx / m, idx % m);
        Complex64::from_polar(scale, element_phase(k, i, m, angle, rotations[k]))
    }))
}

/// Kronecker-expanded reflection vector `[e^{j gamma_1}..e^{j gamma_K}] (x) 1_M`.
pub fn build_reflection_vector(
    config: &RisConfiguration,
    geometry: &SystemGeometry,
) -> Result<CVector> {
    if config.reflection_phases.len() != geometry.n_blocks {
        return Err(Error::invalid(format!(
            "{} reflection phases for K = {} blocks",
            config.reflection_phases.len(),
            geometry.n_blocks
        )));
    }
    let m = geometry.block_size;
    Ok(CVector::from_fn(geometry.n_ris_elements, |idx, _| {
        Complex64::from_polar(1.0, config.reflection_phases[idx / m])
    }))
}

/// Returns `h` with `h^H = g^T diag(v) G`.
pub fn effective_channel(
    bs_ris: &CMatrix,
    ris_ue: &CVector,
    reflection: &CVector,
) -> Result<CVector> {
    let n_s = bs_ris.nrows();
    if ris_ue.len() != n_s || reflection.len() != n_s {
        return Err(Error::invalid(format!(
            "G has {n_s} rows but g has {} and the reflection vector {} entries",
            ris_ue.len(),
            reflection.len()
        )));
    }
    let weighted = ris_ue.component_mul(reflection);
    Ok(bs_ris.tr_mul(&weighted).map(|z| z.conj()))
}

/// Independent random stream for Monte Carlo trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
}

/// Precomputed LoS structure for repeated draws at a fixed geometry and rotation.
#[derive(Debug, Clone)]
pub struct ChannelSampler {
    los_bs_ris: CMatrix,
    los_ris_ue: CVector,
    nlos_bs_ris: f64,
    nlos_ris_ue: f64,
    los_only: bool,
}

impl ChannelSampler {
    pub fn new(geometry: &SystemGeometry, rotations: &[f64]) -> Result<Self> {
        geometry.validate()?;
        let n_b = geometry.n_bs_antennas as f64;
        let n_s = geometry.n_ris_elements as f64;

        let a_arrival = ris_array_response(geometry.aoa_ris, rotations, geometry)?;
        let a_departure = ris_array_response(geometry.aod_ris, rotations, geometry)?;
        let a_bs = bs_array_response(geometry.aod_bs, geometry.n_bs_antennas)?;

        let los_g = (&a_arrival * a_bs.adjoint()) * Complex64::from((n_b * n_s).sqrt());
        let los_h = a_departure * Complex64::from(n_s.sqrt());

        let (k1, k2) = (geometry.rician_bs_ris, geometry.rician_ris_ue);
        let (los_w1, nlos_w1, los_w2, nlos_w2) = if geometry.los_only {
            (1.0, 0.0, 1.0, 0.0)
        } else {
            (
                (k1 / (k1 + 1.0)).sqrt(),
                (1.0 / (k1 + 1.0)).sqrt(),
                (k2 / (k2 + 1.0)).sqrt(),
                (1.0 / (k2 + 1.0)).sqrt(),
            )
        };

        Ok(Self {
            los_bs_ris: los_g * Complex64::from(los_w1),
            los_ris_ue: los_h * Complex64::from(los_w2),
            nlos_bs_ris: nlos_w1,
            nlos_ris_ue: nlos_w2,
            los_only: geometry.los_only,
        })
    }

    /// Draws one `(G, g)` pair. LoS-only samplers consume no randomness.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> (CMatrix, CVector) {
        if self.los_only {
            return (self.los_bs_ris.clone(), self.los_ris_ue.clone());
        }
        let (rows, cols) = self.los_bs_ris.shape();
        let mut g_mat = self.los_bs_ris.clone();
        for r in 0..rows {
            for c in 0..cols {
                g_mat[(r, c)] += complex_normal(rng) * self.nlos_bs_ris;
            }
        }
        let mut g_vec = self.los_ris_ue.clone();
        for r in 0..rows {
            g_vec[r] += complex_normal(rng) * self.nlos_ris_ue;
        }
        (g_mat, g_vec)
    }
}

/// Draws one Rician `(G, g)` pair for the given block rotations.
pub fn sample_channels<R: Rng + ?Sized>(
    geometry: &SystemGeometry,
    rotations: &[f64],
    rng: &mut R,
) -> Result<(CMatrix, CVector)> {
    Ok(ChannelSampler::new(geometry, rotations)?.sample(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn geometry(n_s: usize, k: usize) -> SystemGeometry {
        SystemGeometry::new(4, n_s, k, FRAC_PI_2, PI / 3.0, PI / 4.0, 10.0, 10.0).unwrap()
    }

    fn close(a: Complex64, b: Complex64) {
        assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-12);
        assert_abs_diff_eq!(a.im, b.im, epsilon = 1e-12);
    }

    #[test]
    fn bs_response_broadside_is_flat() {
        let a = bs_array_response(FRAC_PI_2, 4).unwrap();
        for z in a.iter() {
            close(*z, Complex64::new(0.5, 0.0));
        }
    }

    #[test]
    fn bs_response_single_antenna() {
        let a = bs_array_response(1.234, 1).unwrap();
        assert_eq!(a.len(), 1);
        close(a[0], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn bs_response_quarter_turns() {
        let a = bs_array_response(PI / 3.0, 4).unwrap();
        let expected = [(0.5, 0.0), (0.0, 0.5), (-0.5, 0.0), (0.0, -0.5)];
        for (z, (re, im)) in a.iter().zip(expected) {
            close(*z, Complex64::new(re, im));
        }
    }

    #[test]
    fn bs_response_rejects_bad_input() {
        assert!(bs_array_response(f64::NAN, 4).is_err());
        assert!(bs_array_response(0.3, 0).is_err());
    }

    #[test]
    fn ris_response_specular_rotation_zeroes_local_phase() {
        let geo = geometry(12, 3);
        let angle = 1.1;
        let rot = vec![angle - FRAC_PI_2; 3];
        let a = ris_array_response(angle, &rot, &geo).unwrap();
        let scale = 1.0 / 12f64.sqrt();
        for k in 0..3 {
            let phi = (k * 4) as f64 * PI * angle.cos();
            for i in 0..4 {
                close(a[k * 4 + i], Complex64::from_polar(scale, phi));
            }
        }
    }

    #[test]
    fn ris_response_two_by_two_phases() {
        // frozen from a hand evaluation of the rotated-block phase formula
        let geo = geometry(4, 2);
        let a = ris_array_response(PI / 3.0, &[0.0, 0.0], &geo).unwrap();
        let phases = [-PI / 4.0, PI / 4.0, 3.0 * PI / 4.0, 5.0 * PI / 4.0];
        for (z, p) in a.iter().zip(phases) {
            close(*z, Complex64::from_polar(0.5, p));
        }
    }

    #[test]
    fn ris_response_with_unit_blocks_is_a_ula() {
        let geo = geometry(8, 8);
        let rot = [0.3, -0.2, 0.1, 0.0, 0.5, 0.4, -0.1, 0.2];
        let a = ris_array_response(0.7, &rot, &geo).unwrap();
        let ula = bs_array_response(0.7, 8).unwrap();
        for (x, y) in a.iter().zip(ula.iter()) {
            close(*x, *y);
        }
    }

    #[test]
    fn ris_response_length_mismatch() {
        let geo = geometry(8, 4);
        assert!(ris_array_response(0.7, &[0.0; 3], &geo).is_err());
    }

    #[test]
    fn reflection_vector_cases() {
        let geo = geometry(4, 2);
        let ones = build_reflection_vector(
            &RisConfiguration::uniform_rotation(0.0, vec![0.0, 0.0]),
            &geo,
        )
        .unwrap();
        assert!(ones.iter().all(|z| *z == Complex64::new(1.0, 0.0)));

        let v = build_reflection_vector(
            &RisConfiguration::uniform_rotation(0.0, vec![0.0, PI]),
            &geo,
        )
        .unwrap();
        for (z, re) in v.iter().zip([1.0, 1.0, -1.0, -1.0]) {
            close(*z, Complex64::new(re, 0.0));
        }

        let ec = geometry(4, 4);
        let phases = vec![0.1, 0.2, 0.3, 0.4];
        let v = build_reflection_vector(
            &RisConfiguration::uniform_rotation(0.0, phases.clone()),
            &ec,
        )
        .unwrap();
        for (z, p) in v.iter().zip(phases) {
            close(*z, Complex64::from_polar(1.0, p));
        }

        assert!(build_reflection_vector(
            &RisConfiguration::uniform_rotation(0.0, vec![0.0; 3]),
            &geo
        )
        .is_err());
    }

    #[test]
    fn effective_channel_zero_and_scalar() {
        let g_mat = CMatrix::from_fn(3, 2, |r, c| Complex64::new(r as f64 + 1.0, c as f64 - 0.5));
        let v = CVector::from_element(3, Complex64::new(1.0, 0.0));
        let h = effective_channel(&g_mat, &CVector::zeros(3), &v).unwrap();
        assert!(h.iter().all(|z| z.norm() == 0.0));

        let g_row = CMatrix::from_row_slice(
            1,
            2,
            &[Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.25)],
        );
        let g = CVector::from_element(1, Complex64::new(0.3, -0.7));
        let gamma = 0.9;
        let v = CVector::from_element(1, Complex64::from_polar(1.0, gamma));
        let h = effective_channel(&g_row, &g, &v).unwrap();
        for b in 0..2 {
            close(
                h[b].conj(),
                g[0] * Complex64::from_polar(1.0, gamma) * g_row[(0, b)],
            );
        }
    }

    #[test]
    fn effective_channel_matches_triple_loop() {
        let mut rng = trial_rng(7, 0);
        let g_mat = CMatrix::from_fn(4, 2, |_, _| complex_normal(&mut rng));
        let g = CVector::from_fn(4, |_, _| complex_normal(&mut rng));
        let v = CVector::from_fn(4, |i, _| Complex64::from_polar(1.0, 0.4 * i as f64));
        let h = effective_channel(&g_mat, &g, &v).unwrap();
        for b in 0..2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for n in 0..4 {
                for l in 0..4 {
                    // diag(v) as an explicit matrix
                    let d = if n == l {
                        v[n]
                    } else {
                        Complex64::new(0.0, 0.0)
                    };
                    acc += g[n] * d * g_mat[(l, b)];
                }
            }
            close(h[b], acc.conj());
        }
        assert!(effective_channel(&g_mat, &CVector::zeros(3), &v).is_err());
    }

    #[test]
    fn los_only_sampling_is_deterministic() {
        let geo = geometry(8, 2).with_los_only(true);
        let rot = [0.1, -0.1];
        let sampler = ChannelSampler::new(&geo, &rot).unwrap();
        let (g1, v1) = sampler.sample(&mut trial_rng(1, 0));
        let (g2, v2) = sampler.sample(&mut trial_rng(99, 5));
        assert_eq!(g1, g2);
        assert_eq!(v1, v2);

        let a_s = ris_array_response(geo.aoa_ris, &rot, &geo).unwrap();
        let a_b = bs_array_response(geo.aod_bs, 4).unwrap();
        let expected = (a_s * a_b.adjoint()) * Complex64::from((4.0f64 * 8.0).sqrt());
        for (x, y) in g1.iter().zip(expected.iter()) {
            close(*x, *y);
        }
    }

    #[test]
    fn same_stream_gives_identical_draws() {
        let geo = geometry(8, 4);
        let rot = [0.0; 4];
        let a = sample_channels(&geo, &rot, &mut trial_rng(42, 3)).unwrap();
        let b = sample_channels(&geo, &rot, &mut trial_rng(42, 3)).unwrap();
        assert_eq!(a, b);
        let c = sample_channels(&geo, &rot, &mut trial_rng(42, 4)).unwrap();
        assert_ne!(a.0, c.0);
    }

    #[test]
    fn rayleigh_entries_have_unit_variance() {
        let geo = geometry(2, 1).with_rician(0.0, 0.0).unwrap();
        let geo = SystemGeometry {
            n_bs_antennas: 2,
            ..geo
        };
        let sampler = ChannelSampler::new(&geo, &[0.0]).unwrap();
        let n = 100_000;
        let mut sum = [Complex64::new(0.0, 0.0); 4];
        let mut sum_sq = [0.0; 4];
        let mut sum_quad = [0.0; 4];
        for t in 0..n {
            let (g, _) = sampler.sample(&mut trial_rng(2024, t as u64));
            for (e, z) in g.iter().enumerate() {
                sum[e] += z;
                sum_sq[e] += z.norm_sqr();
                sum_quad[e] += z.norm_sqr().powi(2);
            }
        }
        let nf = n as f64;
        for e in 0..4 {
            let var = sum_sq[e] / nf;
            let se = ((sum_quad[e] / nf - var * var) / nf).sqrt();
            assert!((var - 1.0).abs() < 3.0 * se, "entry {e}: var {var} se {se}");
            let mean = sum[e] / nf;
            let mean_se = (0.5 / nf).sqrt();
            assert!(mean.re.abs() < 3.0 * mean_se && mean.im.abs() < 3.0 * mean_se);
        }
    }

    #[test]
    fn geometry_validation() {
        assert!(SystemGeometry::new(4, 64, 7, 1.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(SystemGeometry::new(4, 8, 2, 4.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(SystemGeometry::new(4, 8, 2, 1.0, 1.0, 1.0, -1.0, 1.0).is_err());
        assert!(SystemGeometry::new(0, 8, 2, 1.0, 1.0, 1.0, 1.0, 1.0).is_err());
        let g = SystemGeometry::new(4, 8, 2, 1.0, 1.0, 1.0, 1.0, f64::INFINITY);
        assert!(g.is_err());
        let ec = geometry(8, 2).element_controlled();
        assert_eq!((ec.n_blocks, ec.block_size), (8, 1));
    }
}
