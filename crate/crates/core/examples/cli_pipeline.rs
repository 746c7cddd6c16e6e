//! Driving the command-line pipeline from code: resolve a configuration,
//! evaluate the grid and render CSV and JSON.
//!
//!     cargo run --example cli_pipeline

use osc3d::cli::{compute, render, CommandKind, ConfigFile, Format, RunConfig};

fn main() -> Result<(), osc3d::cli::CliError> {
    let raw = ConfigFile { grid: vec!["phi:0:3.141592653589793:5".into()], ..Default::default() };
    let config = RunConfig::resolve(CommandKind::Borders, raw.clone())?;
    print!("{}", render(&config, &compute(&config)?));

    let config = RunConfig::resolve(CommandKind::Borders, ConfigFile { format: Some(Format::Json), ..raw })?;
    print!("{}", render(&config, &compute(&config)?));
    Ok(())
}
