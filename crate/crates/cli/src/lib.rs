//! File formats, seeded sampling and the command-line front end for
//! `randers-core`.

pub mod cli;
pub mod commands;
pub mod definition;
pub mod error;
pub mod format;
pub mod sampling;

pub use commands::{Format, Report, Setup};
pub use definition::{Definition, DefinitionError, Location};
pub use error::{exit, CliError};
pub use sampling::Sampler;
