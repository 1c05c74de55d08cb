//! File formats, request dispatch and reports for the `commring` tool.
//!
//! The algebra lives in `commring-core`; this crate turns text requests
//! into calls, re-verifies every answer and renders a plain-text report
//! whose header can be replayed.

pub mod parse;
pub mod report;
pub mod request;
pub mod run;

pub use report::{Outcome, Report};
pub use request::{Command, Request};
pub use run::run;

/// Anything that makes a request unanswerable. Maps to exit status 2.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error(transparent)]
    Parse(#[from] parse::ParseError),
    #[error("{0}")]
    Core(#[from] commring_core::Error),
    #[error("{0}")]
    Request(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
