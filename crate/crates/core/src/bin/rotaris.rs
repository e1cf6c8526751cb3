use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};
use log::{info, warn};

use rotaris::experiment::{self, parse_config, preset, Mode, PRESET_NAMES};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
}

/// Runs a rotatable block-controlled RIS experiment and emits CSV.
#[derive(Debug, Parser)]
#[command(version, group(ArgGroup::new("source").required(true).args(["config", "preset", "list_presets"])))]
struct Args {
    /// TOML experiment configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Bundled experiment name.
    #[arg(long)]
    preset: Option<String>,
    /// Print the bundled preset names and exit.
    #[arg(long)]
    list_presets: bool,
    /// Overrides sweep.seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides sweep.n_trials.
    #[arg(long)]
    trials: Option<usize>,
    /// CSV destination; stdout when neither this nor output.path is set.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

fn run(args: Args) -> rotaris::Result<()> {
    if args.list_presets {
        for name in PRESET_NAMES {
            println!("{name}");
        }
        return Ok(());
    }
    let mut config = match (&args.config, &args.preset) {
        (Some(path), _) => parse_config(&fs::read_to_string(path)?)?,
        (None, Some(name)) => preset(name)?,
        (None, None) => unreachable!("clap requires a source"),
    };
    if let Some(seed) = args.seed {
        config.set_seed(seed);
    }
    if let Some(trials) = args.trials {
        config.set_trials(trials)?;
    }
    if args.output.is_some() {
        config.output = args.output.clone();
    }
    if matches!(config.mode, Mode::Feasibility(_)) && (args.seed.is_some() || args.trials.is_some())
    {
        warn!("--seed/--trials have no effect on a feasibility map");
    }
    let Format::Csv = args.format;
    info!("resolved config:\n{}", config.to_toml());

    let report = experiment::run_experiment(&config)?;
    match &config.output {
        Some(path) => {
            experiment::write_csv(&report, path)?;
            info!("wrote {}", path.display());
        }
        None => std::io::stdout().write_all(report.to_csv().as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .target(env_logger::Target::Stderr)
        .init();
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
