//! Scenario files, CSV and SVG output, and the `skylink` command line.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bands;
pub mod cli;
pub mod config;
pub mod error;
pub mod format;
pub mod output;
pub mod svg;

pub use error::{CliError, Result};
