//! Definition-file front end for `qhilbert`: parse workspaces, run check
//! suites, emit reports.

pub mod checks;
pub mod parse;
pub mod report;

pub use checks::{run_checks, Options, SUITES};
pub use parse::{parse_workspace, serialize, CliError, Item, Kind, Workspace};
pub use report::{emit_report, Format, Record, Report, Verdict};

/// Exit status for a finished run.
pub fn exit_code(report: &Report) -> i32 {
    if report.has_failures() {
        1
    } else {
        0
    }
}

/// Exit status for parse and validation errors.
pub const EXIT_INVALID: i32 = 2;
