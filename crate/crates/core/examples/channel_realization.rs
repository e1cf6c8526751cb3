//! Draws one Rician channel, applies the optimal block design and compares
//! the instantaneous SE with a random-phase surface.

use std::f64::consts::PI;

use rand::Rng;
use rotaris::channel::{build_reflection_vector, effective_channel, trial_rng, ChannelSampler};
use rotaris::design::{optimal_phases, optimal_rotation};
use rotaris::metrics::se_instantaneous;
use rotaris::{LinkBudget, RisConfiguration, SystemGeometry};

fn main() -> rotaris::Result<()> {
    let geometry = SystemGeometry::new(32, 64, 8, PI / 2.0, PI / 3.0, PI / 4.0, 10.0, 10.0)?;
    let budget = LinkBudget::from_snr_db(0.0, 1.0)?;
    let theta = optimal_rotation(geometry.aoa_ris, geometry.aod_ris);
    let optimal = RisConfiguration::uniform_rotation(theta, optimal_phases(&geometry)?);

    let mut rng = trial_rng(7, 0);
    let (g_mat, g_vec) = ChannelSampler::new(&geometry, &optimal.rotation_angles)?.sample(&mut rng);
    let v = build_reflection_vector(&optimal, &geometry)?;
    let h = effective_channel(&g_mat, &g_vec, &v)?;
    println!("theta = {theta:.4} rad, ||h||^2 = {:.1}", h.norm_squared());
    println!(
        "optimal design SE: {:.3} bit/s/Hz",
        se_instantaneous(&g_mat, &g_vec, &v, &budget)?
    );

    let random: Vec<f64> = (0..geometry.n_blocks)
        .map(|_| rng.random_range(-PI..PI))
        .collect();
    let config = RisConfiguration::uniform_rotation(theta, random);
    let v = build_reflection_vector(&config, &geometry)?;
    println!(
        "random phases SE:  {:.3} bit/s/Hz",
        se_instantaneous(&g_mat, &g_vec, &v, &budget)?
    );
    Ok(())
}
