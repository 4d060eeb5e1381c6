//! Grid data model for the LASCOPF solver.
//!
//! Parses case files (native JSON format or a MATPOWER-style subset), builds
//! the devices-terminals-nets representation used by the message-passing
//! solver, generates N-1 contingency scenarios, and serves the per-interval
//! load forecast.
//!
//! All file quantities are in MW on the case's MVA base; per-unit conversion
//! happens once, in [`DtnNetwork::build`]. Everything here is immutable after
//! construction and safe to share across worker threads.

pub mod case;
pub mod dtn;
pub mod matpower;
pub mod scenario;
#[cfg(test)]
pub(crate) mod testdata;

pub use case::{parse_case_file, CaseSpec, Forecast, Generator, Line, Load};
pub use dtn::{Device, DeviceKind, DtnNetwork, Net, Terminal};
pub use scenario::{connectivity_check, generate_scenarios, ScenarioSet};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("parse error at {context}: {message}")]
    Parse { context: String, message: String },
    #[error("validation error for {record}: {message}")]
    Validation { record: String, message: String },
    #[error("build error: {0}")]
    Build(String),
    #[error("outage of line {line} (buses {from}-{to}) islands the network")]
    Islanding { line: usize, from: usize, to: usize },
    #[error("interval {0} out of range 1..={1} (interval 0 is the current running interval, fixed)")]
    IntervalOutOfRange(usize, usize),
}

pub type Result<T> = std::result::Result<T, GridError>;
