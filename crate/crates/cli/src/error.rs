use subdisc_core::Error as CoreError;

/// Failures surfaced by the command layer, each tied to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed input: bad numbers, unreadable or invalid files.
    #[error("{0}")]
    Parse(String),
    /// `k` out of range or a size guard tripped.
    #[error("{0}")]
    Range(String),
    /// An identity or suite check did not hold.
    #[error("{0}")]
    Identity(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Range(_) => 3,
            CliError::Identity(_) => 4,
            CliError::Other(_) => 1,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let msg = e.to_string();
        match e {
            CoreError::KOutOfRange { .. } | CoreError::DimensionOutOfRange { .. } | CoreError::SizeGuard(_) => {
                CliError::Range(msg)
            }
            CoreError::IdentityFailed(_) => CliError::Identity(msg),
            CoreError::NotSquare { .. }
            | CoreError::NotSymmetricMatrix { .. }
            | CoreError::InvalidArgument(_)
            | CoreError::VariableMismatch => CliError::Parse(msg),
            CoreError::NotSymmetric(_) | CoreError::Singular | CoreError::Overflow => CliError::Other(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(format!("invalid JSON: {e}"))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
