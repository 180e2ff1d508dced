use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qbeats::scenario::{
    emit, parse_config, preset, report_beats, run_scenario, OutputFormat, Preset, RunOptions,
    ScenarioConfig, ScenarioError,
};
use qbeats::SystemParams;

#[derive(Parser)]
#[command(name = "qbeats", version, about = "Time-dependent spectra of quantum beats")]
struct Cli {
    /// Worker threads for the grid (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario described by a TOML file.
    Run {
        config: PathBuf,
        /// Use quadrature even for free decay.
        #[arg(long)]
        numeric: bool,
        /// Directory for the output files.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Run one of the built-in parameter sets.
    Preset {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(["fig1b", "fig2", "fig3", "fig4a", "fig4c"]))]
        name: String,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long)]
        numeric: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Print the generalized Rabi frequencies and a filter recommendation.
    Beats {
        #[arg(long, allow_negative_numbers = true)]
        omega: f64,
        #[arg(long = "Delta", allow_negative_numbers = true, default_value_t = 0.0)]
        laser_detuning: f64,
        #[arg(long, allow_negative_numbers = true)]
        delta: f64,
        #[arg(long)]
        json: bool,
    },
}

fn execute(cfg: &ScenarioConfig, numeric: bool, out: Option<&Path>, format: Option<Format>) -> Result<(), ScenarioError> {
    let opts = RunOptions { numeric, ..RunOptions::default() };
    let (grid, manifest) = run_scenario(cfg, &opts)?;
    let stem = match out {
        Some(dir) => dir.join(cfg.output.path.file_name().unwrap_or("spectrum".as_ref())),
        None => cfg.output.path.clone(),
    };
    let format = format.map(OutputFormat::from).unwrap_or(cfg.output.format);
    let written = emit(&grid, &manifest, format, &stem)?;
    println!("{}", written.data.display());
    println!("{}", written.manifest.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }

    let result = match cli.command {
        Command::Run { config, numeric, out, format } => fs::read_to_string(&config)
            .map_err(|source| ScenarioError::Io { path: config.clone(), source })
            .and_then(|text| parse_config(&text).map_err(ScenarioError::from))
            .and_then(|cfg| execute(&cfg, numeric, out.as_deref(), format)),
        Command::Preset { name, out, numeric, format } => {
            let p: Preset = name.parse().expect("restricted by clap");
            execute(&preset(p), numeric, Some(&out), format)
        }
        Command::Beats { omega, laser_detuning, delta, json } => {
            match SystemParams::new(omega, laser_detuning, delta) {
                Ok(params) => {
                    let report = report_beats(&params);
                    if json {
                        println!("{}", serde_json::to_string_pretty(&report).expect("finite report"));
                    } else {
                        print!("{}", report.to_text());
                    }
                    Ok(())
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
        }
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
