//! Job model, persistence, sweep harness and acceptance battery behind the
//! `kummer` binary.

pub mod battery;
pub mod error;
pub mod jobs;
pub mod store;
pub mod sweep;

pub use error::{CliError, CliResult};
pub use jobs::{run_job, JobRecord, JobResult, JobSpec};
