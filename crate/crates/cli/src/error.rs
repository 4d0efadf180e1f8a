use std::fmt;
use std::process::ExitCode;

use verkle_gas::gas::GasError;
use verkle_gas::harness::HarnessError;
use verkle_gas::merkle::MerkleError;
use verkle_gas::pc::{DecodeError, KzgError};
use verkle_gas::verkle::VerkleError;

/// Failures that map onto the process exit-code contract.
#[derive(Debug)]
pub enum CliError {
    /// Bad input, malformed encodings, inconsistent files. Exit 2.
    Malformed(String),
    /// Filesystem failures. Exit 3.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Malformed(_) => ExitCode::from(2),
            CliError::Io(_) => ExitCode::from(3),
        }
    }

    pub fn malformed(msg: impl Into<String>) -> Self {
        CliError::Malformed(msg.into())
    }

    pub fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        CliError::Io(format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Malformed(m) => write!(f, "error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<GasError> for CliError {
    fn from(e: GasError) -> Self {
        match e {
            GasError::Io(e) => CliError::Io(e.to_string()),
            other => CliError::Malformed(other.to_string()),
        }
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Io(e) => CliError::Io(e.to_string()),
            HarnessError::Gas(e) => e.into(),
            other => CliError::Malformed(other.to_string()),
        }
    }
}

macro_rules! malformed_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Malformed(e.to_string())
            }
        })*
    };
}

malformed_from!(KzgError, DecodeError, VerkleError, MerkleError, serde_json::Error, hex::FromHexError);
