use rotoshift_core::Error as CoreError;

/// Failure classes of a run; each maps to one process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("out of regime: {0}")]
    OutOfRegime(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Validation(_) | Self::Io { .. } => 2,
            Self::OutOfRegime(_) => 3,
        }
    }

    /// Classify a library error raised while handling `context`.
    pub fn from_core(context: &str, err: CoreError) -> Self {
        match err {
            CoreError::OutOfRegime(_) | CoreError::ResonanceSingularity { .. } => {
                Self::OutOfRegime(format!("{context}: {err}"))
            }
            _ => Self::Validation(format!("{context}: {err}")),
        }
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Self::Io {
            context: context.into(),
            source,
        }
    }
}
