use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bdris_cli::preset::PresetKind;
use bdris_cli::{config, report, sweep, CliError, Preset};
use bdris_core::channel::{build_channels, ScenarioConfig};
use bdris_core::oracle::{model_consistency_check, phase_grid_oracle, random_unitary_oracle, OracleReport};
use bdris_core::ris::build_projection_targets;
use bdris_core::PortLayout;

#[derive(Parser)]
#[command(name = "bdris", version, about = "BD-RIS aided full-duplex link simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment preset and write its reports
    Run {
        /// Preset name; `bdris run help` lists them
        preset: String,
        /// Scenario file overriding the baseline parameters
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Both)]
        format: Format,
    },
    /// Run a validation oracle and print its report
    Oracle {
        /// One of: random-unitary, phase-grid, model-consistency
        name: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Trial count (random-unitary, model-consistency) or phase steps per
        /// element (phase-grid)
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Run the full invariant and acceptance suite
    Check,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error[{}]: {}", e.category(), e);
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Run { preset, config, out, format } => run_preset(&preset, config, out, format),
        Command::Oracle { name, seed, trials } => run_oracle(&name, seed, trials),
        Command::Check => Ok(run_check()),
    }
}

fn load_config(path: Option<PathBuf>) -> Result<ScenarioConfig<f64>, CliError> {
    match path {
        Some(p) => config::parse_config(&p),
        None => Ok(ScenarioConfig::default()),
    }
}

fn run_preset(name: &str, config: Option<PathBuf>, out: PathBuf, format: Format) -> Result<ExitCode, CliError> {
    if name == "help" || name == "list" {
        for p in Preset::ALL {
            println!("{:<20} {}", p.name(), p.describe());
        }
        return Ok(ExitCode::SUCCESS);
    }
    let preset = Preset::from_name(name).ok_or_else(|| CliError::UnknownPreset { name: name.to_string() })?;
    let cfg = load_config(config)?;
    std::fs::create_dir_all(&out)
        .map_err(|e| CliError::Io { path: out.display().to_string(), message: e.to_string() })?;

    let csv_path = out.join(format!("{}.csv", preset.name()));
    let svg_path = out.join(format!("{}.svg", preset.name()));
    let wants_csv = matches!(format, Format::Csv | Format::Both);
    let wants_svg = matches!(format, Format::Svg | Format::Both);

    match preset.kind() {
        PresetKind::Beams { .. } => {
            let beams = sweep::run_beams(&cfg, preset)?;
            if wants_csv {
                report::emit_beam_csv(&beams, &csv_path)?;
                println!("wrote {}", csv_path.display());
            }
            if wants_svg {
                report::emit_beam_svg(&beams, &svg_path)?;
                println!("wrote {}", svg_path.display());
            }
        }
        PresetKind::Strength | PresetKind::Rates => {
            let results = sweep::run_sweep(&cfg, preset)?;
            if wants_csv {
                report::emit_csv(&results, &csv_path)?;
                println!("wrote {}", csv_path.display());
            }
            if wants_svg {
                report::emit_svg(&results, preset, &svg_path)?;
                println!("wrote {}", svg_path.display());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_report(name: &str, r: &OracleReport<f64>) {
    println!("oracle:      {name}");
    println!("best value:  {:.17e}", r.best_value);
    println!("trials:      {}", r.trials);
    println!("skipped:     {}", r.skipped);
    println!("seed:        {}", r.seed);
    println!("best found:  {}", r.descriptor);
}

fn run_oracle(name: &str, seed: u64, trials: Option<usize>) -> Result<ExitCode, CliError> {
    match name {
        "random-unitary" => {
            // default scenario targets at a 16-element surface
            let cfg = ScenarioConfig::<f64> { n_i: 16, ..Default::default() };
            let ch = build_channels(&cfg)?;
            let t = build_projection_targets(&ch, cfg.design_with_ss);
            let report = random_unitary_oracle(&t.x, &t.y, trials.unwrap_or(100_000), seed);
            print_report(name, &report);
        }
        "phase-grid" => {
            // a 2-element surface keeps the enumeration inside the budget
            let cfg = ScenarioConfig::<f64> { n_i: 2, ..Default::default() };
            let ch = build_channels(&cfg)?;
            let report = phase_grid_oracle(&ch, trials.unwrap_or(360), cfg.design_with_ss)
                .map_err(|e| CliError::Oracle { message: e.to_string() })?;
            print_report(name, &report);
        }
        "model-consistency" => {
            let layout = PortLayout::single_antenna(4);
            let report = model_consistency_check::<f64>(&layout, seed, trials.unwrap_or(100));
            print_report(name, &report);
        }
        other => {
            return Err(CliError::Oracle {
                message: format!("unknown oracle {other:?}; available: random-unitary, phase-grid, model-consistency"),
            });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_check() -> ExitCode {
    let results = bdris_cli::acceptance::run_all();
    let mut all_passed = true;
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("[{status}] criterion {:>2}: {} — {}", r.id, r.name, r.detail);
        all_passed &= r.passed;
    }
    if all_passed {
        println!("all {} criteria passed", results.len());
        ExitCode::SUCCESS
    } else {
        eprintln!("error[check.failed]: one or more criteria failed");
        ExitCode::FAILURE
    }
}
