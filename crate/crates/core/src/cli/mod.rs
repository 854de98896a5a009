//! The `hyperdual` command line.
//!
//! Exit codes: 0 when every cell passes, 1 on a mismatch, 2 on invalid
//! configuration, an invalid cell or exhausted resampling.

pub mod config;
pub mod report;
pub mod run;

use std::io::Write;

use clap::Parser;

pub use config::{Args, Format, RunConfig, Suite, Target};
pub use report::{digest, CellRecord, RunReport};
pub use run::{build_cells, run_cells, Cell, Check};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Builds and runs every cell of `config`.
pub fn execute(config: &RunConfig) -> std::result::Result<RunReport, run::CellFailure> {
    let cells = build_cells(config);
    let outcomes = run_cells(&cells, config)?;
    Ok(RunReport::new(config, &cells, &outcomes))
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let config = match args.resolve() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("hyperdual: {e}");
            return EXIT_ERROR;
        }
    };
    match execute(&config) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.render(config.format).as_bytes());
            if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            }
        }
        Err(failure) => {
            eprintln!("hyperdual: {failure}");
            EXIT_ERROR
        }
    }
}
