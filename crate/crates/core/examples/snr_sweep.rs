//! SE and EE against SNR for the three power cases.

use std::f64::consts::PI;

use rotaris::simkit::run_snr_sweep;
use rotaris::{PowerParams, SystemGeometry};

fn main() -> rotaris::Result<()> {
    let geometry = SystemGeometry::new(32, 32, 1, PI / 2.0, PI / 3.0, PI / 4.0, 10.0, 10.0)?;
    let grid: Vec<f64> = (0..=5).map(|i| -10.0 + 10.0 * i as f64).collect();
    for (case, (p2, pu)) in [(0.108, 0.821), (0.215, 0.548), (0.430, 0.003)]
        .into_iter()
        .enumerate()
    {
        let result = run_snr_sweep(
            &geometry,
            &PowerParams::with_rotation(p2, pu)?,
            &grid,
            2000,
            1,
        )?;
        println!("case {}", case + 1);
        for p in &result.points {
            println!(
                "  {:>4} dB  SE {:>7.3}  K {:>2}  EE_BC {:.4}  EE_EC {:.4}",
                p.axis_value, p.mean_se_bc, p.k_star, p.ee_bc, p.ee_ec
            );
        }
    }
    Ok(())
}
