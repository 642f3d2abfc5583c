//! Scene-file plumbing and command implementations behind the
//! `confusability` binary.
//!
//! Exit-code contract: 0 when every requested analysis passes or is not
//! applicable, 1 when a verification fails, 2 for input errors (unreadable
//! or malformed scenes, inconsistent dimensions, missing inputs for a
//! selected check, bad flags).

use thiserror::Error;

pub mod commands;
pub mod scene;

/// Input-side failures; every variant maps to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },

    #[error("{0}")]
    Scene(String),

    #[error("report rendering failed: {0}")]
    Render(#[from] serde_json::Error),

    #[error(transparent)]
    Library(#[from] confusability::Error),
}
