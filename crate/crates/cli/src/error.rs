//! Failure type mapping core errors onto the CLI exit-code contract:
//! 2 for bad flags or unreadable input, 3 for degenerate data.

use synthbench::{DataError, ExperimentError, MetricsError, ModelError};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<DataError> for Failure {
    fn from(e: DataError) -> Failure {
        Failure {
            code: if e.is_degenerate() { EXIT_DEGENERATE } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Failure {
        Failure {
            code: if e.is_degenerate() { EXIT_DEGENERATE } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

impl From<MetricsError> for Failure {
    fn from(e: MetricsError) -> Failure {
        Failure {
            code: if e.is_degenerate() { EXIT_DEGENERATE } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Failure {
        Failure {
            code: if e.is_degenerate() { EXIT_DEGENERATE } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}
