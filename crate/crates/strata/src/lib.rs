//! File formats, JSON reports and the `strata` command line.

pub mod cli;
pub mod format;
pub mod report;
