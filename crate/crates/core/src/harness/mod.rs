//! Experiment pipelines: exhaustive runs over normalized triples, mining of
//! minimal forbidden tagged patterns, and comparison with the published
//! table of forbidden triples of size 6.

pub mod enumerate;
pub mod mining;
pub mod records;
pub mod table;

use thiserror::Error;

use crate::decider::DecideError;
use crate::geometry::GeometryError;
use crate::model::ParseError;

pub use enumerate::{run_enumeration, EnumerationConfig, Summary};
pub use mining::mine_minimal_forbidden;
pub use records::{RecordVerdict, ResultRecord};
pub use table::{compare_forbidden_list, load_forbidden_size6, parse_table, DiffReport, ForbiddenTable};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("record on line {line}: {message}")]
    Record { line: usize, message: String },
    #[error("certificate for {0} fails verification")]
    Unverified(String),
    #[error(transparent)]
    Decide(#[from] DecideError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("table line {line}: {message}")]
    Table { line: usize, message: String },
    #[error("invalid GP_THREADS value {0:?}")]
    Threads(String),
}

/// Worker count from `GP_THREADS`, defaulting to the available parallelism.
pub fn threads_from_env() -> Result<usize, HarnessError> {
    match std::env::var("GP_THREADS") {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(k),
            _ => Err(HarnessError::Threads(s)),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |k| k.get())),
    }
}
