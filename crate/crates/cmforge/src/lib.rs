//! Parallel evaluation, reports and file formats on top of `cmforge-core`.
//!
//! Everything that needs threads, files or JSON lives here; the binary in
//! `src/bin/cmforge.rs` is a thin clap layer over [`commands`].

pub mod commands;
pub mod config;
pub mod parallel;
pub mod polyfile;
pub mod report;

pub use config::{InvariantName, JobConfig, OutputFormat};
