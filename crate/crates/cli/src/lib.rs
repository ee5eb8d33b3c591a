//! Command-line front end: the `.set` input language, the JSON report and
//! the subcommands of the `boundring` binary.

pub mod app;
pub mod dsl;
pub mod report;

pub use app::{run, EXIT_CONTRADICTION, EXIT_INVALID, EXIT_OK, EXIT_USAGE};
