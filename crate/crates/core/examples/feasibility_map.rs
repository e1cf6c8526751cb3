//! Coarse text rendering of the rotate-circuit feasibility region for N_s = 32.
//! `#` feasible, `.` infeasible, `!` closed form and power comparison disagree.

use rotaris::design::p2_feasibility;
use rotaris::PowerParams;

fn main() -> rotaris::Result<()> {
    let p_units: Vec<f64> = (0..=40)
        .map(|i| 10f64.powf(-4.0 + i as f64 / 10.0))
        .collect();
    println!("P_unit from 1e-4 (left) to 1 (right)");
    for row in (0..=20).rev() {
        let p2 = 0.5 * row as f64 / 20.0;
        let mut line = String::new();
        for &pu in &p_units {
            let v = p2_feasibility(&PowerParams::with_rotation(p2, pu)?, 32)?;
            line.push(match (v.consistent(), v.feasible) {
                (false, _) => '!',
                (true, true) => '#',
                (true, false) => '.',
            });
        }
        println!("P2 {p2:.3} {line}");
    }
    Ok(())
}
