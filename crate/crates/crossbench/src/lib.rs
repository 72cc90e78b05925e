//! Configuration, verification suites, reports and a CLI for
//! `crossbench-core`.

pub mod config;
pub mod error;
pub mod oracle;
pub mod report;
pub mod suites;

pub use config::{Config, FunctionSpec};
pub use error::{HarnessError, Result};
pub use report::{CheckRecord, Format, Report, Status};
pub use suites::{run_suite, RunOptions, Suite};
