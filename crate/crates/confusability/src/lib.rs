//! Confusability structure of finite-group orbits.

use serde::Serialize;

pub mod channel;
pub mod error;
pub mod estimation;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod graph;
pub mod group;
pub mod linalg;
pub mod representation;
pub mod subspace;

pub use error::{Error, Result};
pub use linalg::Tolerance;

/// Outcome of a verification check.
///
/// `NotApplicable` marks checks whose premise fails (for example a normality
/// claim that is only asserted for class states); it is not a failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn passed(self) -> bool {
        matches!(self, Self::Pass | Self::NotApplicable)
    }
}
