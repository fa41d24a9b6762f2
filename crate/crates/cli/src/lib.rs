//! The `picalc` command line as a library, so tests can drive it in-process.

pub mod algo;
mod app;
pub mod bench;
mod error;
pub mod verify;

pub use app::{context_for_digits, run, GUARD_BITS_ENV};
pub use error::{CliError, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
