//! Command-line front end for chk-core: flag parsing, CSV and JSON output,
//! and the numerical checks driven by `chk verify` and the acceptance run.

pub mod args;
pub mod checks;
pub mod cli;
pub mod commands;
pub mod output;
