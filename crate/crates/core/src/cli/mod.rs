//! Scripts, reports and the command-line entry points.

mod runner;
mod script;

pub use runner::{execute, run, run_source, Outcome, Report, RunOptions};
pub use script::{parse_script, Diagnostic, PrintItem, Script, SeriesSource, Statement};
