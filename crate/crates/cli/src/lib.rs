//! Command-line front end for `graph-lefschetz`: input resolution, the
//! subcommands, and the serializable report they produce.

pub mod commands;
pub mod input;
pub mod report;
