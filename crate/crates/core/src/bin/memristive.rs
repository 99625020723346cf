use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use memristive::commands::{self, Figure, EXIT_USAGE};
use memristive::{parse_config, DeviceKind, Error, RunConfig};

/// Simulate memristive and memoryless resistor models and classify them.
#[derive(Debug, Parser)]
#[command(version)]
struct Cli {
    /// JSON run configuration; reference defaults with a memristor when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (overrides `output_dir`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Integration step in seconds at the base drive period.
    #[arg(long, global = true)]
    dt: Option<f64>,
    /// Initial state: memristor x0 in [0, 1]; type 1 takes 0 (r_off) or 1 (r_on).
    #[arg(long = "seed-state", global = true)]
    seed_state: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write trace.csv and summary.json for the configured device.
    Simulate,
    /// Sweep drive frequencies and label the device; exit 0 if memristive, 2 if not.
    Classify,
    /// Write CSV data and a gnuplot script for one figure.
    Reproduce {
        #[arg(value_parser = |s: &str| s.parse::<Figure>())]
        figure: Figure,
    },
}

fn load(cli: &Cli) -> Result<RunConfig, Error> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            parse_config(&text)?
        }
        None => RunConfig::new(DeviceKind::Memristor),
    };
    if let Some(out) = &cli.out {
        cfg.output_dir = out.clone();
    }
    if let Some(dt) = cli.dt {
        cfg.sim.dt_s = Some(dt);
    }
    if let Some(x0) = cli.seed_state {
        cfg.device_params.initial_state = x0;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<i32, Error> {
    let cfg = match load(cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            // any failure to obtain a valid config is a usage error
            eprintln!("error: {e}");
            return Ok(EXIT_USAGE);
        }
    };
    match &cli.command {
        Command::Simulate => {
            let out = commands::cmd_simulate(&cfg)?;
            println!(
                "wrote {} ({} samples) and {}",
                out.trace_path.display(),
                out.trace.len(),
                out.summary_path.display()
            );
            Ok(commands::EXIT_OK)
        }
        Command::Classify => {
            let report = commands::cmd_classify(&cfg)?;
            if let Some(v) = &report.verdict {
                let note = if v.inconclusive {
                    " (inconclusive)"
                } else {
                    ""
                };
                println!("{}: {}{note}", cfg.device, v.label);
                for e in &v.evidence {
                    let mark = if e.passed { "yes" } else { "no " };
                    println!(
                        "  [{mark}] {} = {:.6e} (threshold {:e})",
                        e.criterion, e.value, e.threshold
                    );
                }
            }
            Ok(report.exit_code())
        }
        Command::Reproduce { figure } => {
            let out = commands::cmd_reproduce(&cfg, *figure)?;
            for f in &out.files {
                println!("wrote {}", f.display());
            }
            Ok(commands::EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
