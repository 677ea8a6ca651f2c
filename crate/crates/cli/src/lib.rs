//! Command implementations and the experiment harness behind the `measiso` binary.

pub mod commands;
pub mod io;
pub mod report;
pub mod suites;
