//! Power-minimising block count across rotation angles, checked against
//! exhaustive search over the divisors of N_s.

use std::f64::consts::FRAC_PI_6;

use rotaris::design::{brute_force_block_count, optimal_block_count};
use rotaris::power::power_ec;
use rotaris::PowerParams;

fn main() -> rotaris::Result<()> {
    let n_s = 64;
    for (p2, pu) in [(0.108, 0.821), (0.215, 0.548), (0.430, 0.003)] {
        let params = PowerParams::with_rotation(p2, pu)?;
        println!(
            "P2 = {p2} W, P_unit = {pu} W, P_EC - P0 = {:.2} W",
            power_ec(&params, n_s, 0.0) - params.static_power
        );
        for step in 0..=4 {
            let theta = FRAC_PI_6 * step as f64 / 4.0;
            let best = optimal_block_count(&params, n_s, theta)?;
            let brute = brute_force_block_count(&params, n_s, theta)?;
            println!(
                "  theta {theta:.3}: K* = {:>5.2} ({:?}) -> K = {:>2}, circuits {:.3} W, search K = {}",
                best.continuous_k,
                best.branch,
                best.chosen_k,
                best.power_at_chosen - params.static_power,
                brute.chosen_k
            );
        }
    }
    Ok(())
}
