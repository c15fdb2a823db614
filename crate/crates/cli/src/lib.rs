//! Fixture suites and helpers behind the `modform` command.

pub mod curve;
pub mod fixtures;
