//! Block control with optimal rotation reaches the element-controlled SE
//! bound; without rotation it leaves a gap.

use std::f64::consts::PI;

use rotaris::design::{optimal_phases, optimal_rotation};
use rotaris::metrics::{se_gap, se_upper_bound_bc, se_upper_bound_ec};
use rotaris::{LinkBudget, RisConfiguration, SystemGeometry};

fn main() -> rotaris::Result<()> {
    let budget = LinkBudget::from_snr_db(10.0, 1.0)?;
    println!(
        "{:>4} {:>10} {:>10} {:>10} {:>12}",
        "K", "bound_bc", "bound_ec", "gap(0)", "gap(opt)"
    );
    for k in [1, 2, 4, 8, 16, 64] {
        let g = SystemGeometry::new(32, 64, k, PI / 2.0, PI / 3.0, PI / 4.0, 10.0, 10.0)?;
        let theta = optimal_rotation(g.aoa_ris, g.aod_ris);
        let bc = se_upper_bound_bc(
            &g,
            &RisConfiguration::uniform_rotation(theta, optimal_phases(&g)?),
            &budget,
        )?;
        let ec = se_upper_bound_ec(&g, &optimal_phases(&g.element_controlled())?, &budget)?;
        let unrotated = se_gap(&g, &vec![0.0; k], &budget)?;
        let rotated = se_gap(&g, &vec![theta; k], &budget)?;
        println!("{k:>4} {bc:>10.4} {ec:>10.4} {unrotated:>10.4} {rotated:>12.2e}");
    }
    Ok(())
}
