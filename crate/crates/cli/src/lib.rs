//! Library half of the `zkclaim` command-line tool.

pub mod bench;
pub mod commands;
pub mod error;
pub mod files;

pub use commands::{rng, Ctx, Report};
pub use error::{CliError, CliResult};
