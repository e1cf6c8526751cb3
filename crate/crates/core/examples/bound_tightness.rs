//! Gap between the averaged-SE bound and Monte Carlo means as the Rician
//! factor and surface size grow.

use std::f64::consts::PI;

use rotaris::simkit::bound_tightness_study;
use rotaris::{LinkBudget, SystemGeometry};

fn main() -> rotaris::Result<()> {
    let geometries = [16, 64, 256]
        .map(|n| SystemGeometry::new(32, n, n / 8, PI / 2.0, PI / 3.0, PI / 4.0, 1.0, 1.0))
        .into_iter()
        .collect::<rotaris::Result<Vec<_>>>()?;
    let budget = LinkBudget::from_snr_db(0.0, 1.0)?;
    let rows = bound_tightness_study(&geometries, &[0.0, 1.0, 10.0, 100.0], &budget, 4000, 3)?;
    println!(
        "{:>5} {:>7} {:>9} {:>9} {:>10}",
        "N_s", "kappa", "bound", "mean", "gap"
    );
    for r in rows {
        println!(
            "{:>5} {:>7} {:>9.4} {:>9.4} {:>10.2e}",
            r.n_ris_elements,
            r.kappa,
            r.bound,
            r.mean_se,
            r.gap()
        );
    }
    Ok(())
}
