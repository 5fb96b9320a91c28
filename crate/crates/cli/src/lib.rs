// SPDX-License-Identifier: Apache-2.0

//! Mesh and profile export, verification reports and the `darboux` command.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod io;
pub mod report;
pub mod suites;

pub use error::{CliError, CliResult};
