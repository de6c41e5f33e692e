//! Command-line front end: single exclusions, table reproduction, oracle
//! runs and dataset ingestion.

pub mod args;
pub mod commands;
pub mod input;
pub mod reproduce;
pub mod tables;

pub use args::Cli;
pub use commands::run;
