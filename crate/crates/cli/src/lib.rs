//! Command-line front end: scenario files, parameter sweeps and result
//! files for the hybrid GEO-LEO coverage model.

pub mod config;
pub mod output;
pub mod sweep;

pub use config::{emit_config, parse_config, parse_config_str, ConfigError, ConfigFile, SweepMode, SweepSpec, SweepVariable};
pub use output::{emit_plotdata, write_csv, PlotStyle, RunManifest};
pub use sweep::{run_sweep, RunOptions, SweepOutput};
