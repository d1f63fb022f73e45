//! Library side of the `corner-mixvol` binary: subcommands as functions and
//! the sweep report format.

pub mod commands;
pub mod report;
