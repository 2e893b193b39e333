//! Front end for Weil polynomial analysis: labels, JSON records and the
//! `weil` subcommands.

pub mod commands;
pub mod label;
pub mod report;

pub use commands::{
    cmd_analyze, cmd_batch, cmd_oracle_check, cmd_validate, BatchFormat, BatchSummary, CliError,
    Input,
};
pub use label::{Label, LabelConvention};
