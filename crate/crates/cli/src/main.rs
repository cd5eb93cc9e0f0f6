use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use geoleo_cli::config::{emit_config, parse_config, ConfigFile, SweepMode};
use geoleo_cli::output::{emit_plotdata, manifest_path, write_csv, PlotStyle, RunManifest};
use geoleo_cli::sweep::{run_sweep, RunOptions};

/// Coverage of a terminal served by a hybrid GEO-LEO satellite network.
#[derive(Parser)]
#[command(name = "geoleo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the analytic model over the configured sweep.
    Analytic(Common),
    /// Estimate every probability by simulation.
    Montecarlo(Common),
    /// Run both and compare; exits with status 2 if any |z| exceeds the
    /// threshold.
    Validate {
        #[command(flatten)]
        common: Common,
        /// Largest acceptable |z| (default: validate.z_threshold, else 4).
        #[arg(long)]
        z_threshold: Option<f64>,
    },
    /// Run the sweep in the mode named by the configuration.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long)]
        z_threshold: Option<f64>,
    },
    /// Print the default configuration.
    DefaultConfig,
}

#[derive(Args)]
struct Common {
    /// Scenario file; built-in defaults when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Simulation seed (default: montecarlo.seed).
    #[arg(long)]
    seed: Option<u64>,
    /// Simulated snapshots per scenario [default: 100000].
    #[arg(long)]
    trials: Option<u64>,
    /// Result table; standard output when omitted. A manifest is written
    /// next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Also write plot-ready data here.
    #[arg(long)]
    plot_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = StyleArg::Csv)]
    plot_style: StyleArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Analytic,
    Montecarlo,
    Validate,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Csv,
    Gnuplot,
    Vega,
}

fn run(name: &str, common: &Common, mode: Option<SweepMode>, z_threshold: Option<f64>) -> Result<ExitCode> {
    let mut config = match &common.config {
        Some(p) => parse_config(p)?,
        None => ConfigFile::default(),
    };
    let mode = mode.unwrap_or(config.sweep.mode);
    config.sweep.mode = mode;
    if let Some(t) = common.trials {
        config.trials = t;
    }
    if let Some(z) = z_threshold {
        config.z_threshold = z;
    }
    config.validate()?;
    let seed = common.seed.unwrap_or(config.seed);
    let opts = RunOptions {
        mode,
        seed,
        trials: config.trials,
        workers: common.workers,
    };
    let out = run_sweep(&config, &opts);

    let mut manifest = RunManifest::new(name, &config, &out, seed, config.trials, common.workers);
    match &common.out {
        Some(path) => {
            let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            write_csv(&out, BufWriter::new(f))?;
            manifest.outputs.push(path.display().to_string());
        }
        None => write_csv(&out, std::io::stdout().lock())?,
    }
    if let Some(path) = &common.plot_out {
        let style = match common.plot_style {
            StyleArg::Csv => PlotStyle::Csv,
            StyleArg::Gnuplot => PlotStyle::Gnuplot,
            StyleArg::Vega => PlotStyle::Vega,
        };
        let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
        let mut w = BufWriter::new(f);
        emit_plotdata(&out, style, &mut w)?;
        w.flush()?;
        manifest.outputs.push(path.display().to_string());
    }
    if let Some(path) = common.out.as_ref().or(common.plot_out.as_ref()) {
        manifest.write(&manifest_path(path))?;
    }

    let errors = out.error_count();
    if errors > 0 {
        eprintln!("{errors} of {} rows failed; see the error column", out.rows.len());
    }
    if mode == SweepMode::Validate {
        if out.gate_failed(config.z_threshold) {
            eprintln!("validation FAILED: some |z| exceeds {}", config.z_threshold);
            return Ok(ExitCode::from(2));
        }
        eprintln!("validation passed: every |z| <= {}", config.z_threshold);
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analytic(c) => run("analytic", c, Some(SweepMode::Analytic), None),
        Command::Montecarlo(c) => run("montecarlo", c, Some(SweepMode::MonteCarlo), None),
        Command::Validate { common, z_threshold } => run("validate", common, Some(SweepMode::Validate), *z_threshold),
        Command::Sweep {
            common,
            mode,
            z_threshold,
        } => {
            let mode = mode.map(|m| match m {
                ModeArg::Analytic => SweepMode::Analytic,
                ModeArg::Montecarlo => SweepMode::MonteCarlo,
                ModeArg::Validate => SweepMode::Validate,
            });
            run("sweep", common, mode, *z_threshold)
        }
        Command::DefaultConfig => {
            print!("{}", emit_config(&ConfigFile::default()));
            Ok(ExitCode::SUCCESS)
        }
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::FAILURE
    })
}
