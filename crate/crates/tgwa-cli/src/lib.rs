//! Command-line front end for the TGWA engine: datum files, bundled
//! examples, command implementations, and deterministic reports.

pub mod commands;
pub mod fixtures;
pub mod report;
pub mod schema;
