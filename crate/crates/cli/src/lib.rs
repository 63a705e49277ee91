//! Command-line surface for the exact sextic-oscillator spectrum: config
//! resolution, CSV tables and the exit-code contract (0 success, 1
//! verification or computation failure, 2 usage or config error).

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod table;

pub use args::{Cli, Command, Overrides};
pub use commands::{run, Outcome};
pub use config::{FileConfig, RunConfig};
pub use error::{CliError, Result};
