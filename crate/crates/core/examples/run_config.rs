//! Parses a TOML experiment and prints its CSV, the library route behind the binary.

use rotaris::experiment::{parse_config, run_experiment};

const CONFIG: &str = r#"
[geometry]
n_ris_elements = 16
aoa_ris = 1.5707963267948966
aod_ris = 1.0471975511965976
aod_bs = 0.7853981633974483
rician_bs_ris = 5.0
rician_ris_ue = 5.0

[power]
rotate_circuit_power = 0.215
unit_rotation_power = 0.548

[sweep]
axis = "n_ris_elements"
grid = [8, 16, 32, 64]
snr_db = 0.0
n_trials = 1000
seed = 11
"#;

fn main() -> rotaris::Result<()> {
    let config = parse_config(CONFIG)?;
    print!("{}", run_experiment(&config)?.to_csv());
    Ok(())
}
