//! Library surface of the `swaptest` binary: file formats, report
//! rendering and the failure-to-exit-code mapping, kept separate so
//! integration tests can drive them directly.

pub mod files;
pub mod render;

use swaptest_core::pipeline::PipelineError;

/// A failed run with its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub code: u8,
}

impl Failure {
    pub fn new(message: impl Into<String>, code: u8) -> Self {
        Failure { message: message.into(), code }
    }

    /// Unreadable or malformed input: exit 3.
    pub fn input(message: impl Into<String>) -> Self {
        Failure::new(message, 3)
    }

    /// A violated run precondition (e.g. missing --sign): exit 4.
    pub fn precondition(message: impl Into<String>) -> Self {
        Failure::new(message, 4)
    }
}

impl From<PipelineError> for Failure {
    fn from(err: PipelineError) -> Failure {
        let code = match err {
            PipelineError::MissingSignPrecondition | PipelineError::PadRequired { .. } => 4,
            _ => 3,
        };
        Failure::new(err.to_string(), code)
    }
}
