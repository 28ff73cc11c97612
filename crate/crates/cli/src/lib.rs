//! Command-line front end: JSON input documents and command dispatch.

pub mod commands;
pub mod io;

pub use commands::{run, Cli, Command, Outcome};
