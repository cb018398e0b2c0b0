//! Command implementations behind the `measuring-lab` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod spec;
pub mod truncation;
