//! Library surface of the command-line tool, split out so integration
//! tests can drive the subcommands in-process.

pub mod args;
pub mod commands;
pub mod output;
pub mod overlay;
pub mod verify;

use anyhow::Result;

use args::{Cli, Command};
use overlay::FileConfig;

/// Dispatch a parsed command line. Returns the process exit code.
pub fn run(cli: &Cli) -> Result<u8> {
    let file = FileConfig::load(cli.config.as_deref())?;
    match &cli.command {
        Command::ResolventScan(args) => commands::resolvent_scan(cli, args, &file),
        Command::RegionMap(args) => commands::region_map(cli, args, &file),
        Command::Witness(args) => commands::witness(cli, args, &file),
        Command::Evolve(args) => commands::evolve(cli, args, &file),
        Command::Inequalities(args) => commands::inequalities(cli, args, &file),
        Command::Verify(args) => commands::run_verify(cli, args, &file),
    }
}
