//! File formats, exporters, and the deterministic test corpus behind the
//! `tropjac` command-line tool.
//!
//! The mathematics lives in `tropjac-core`; this crate owns everything that
//! touches strings, files, and exit codes. All serialization is designed to
//! round-trip: a document we emit re-parses to an equal value, and identical
//! inputs always produce byte-identical output.

pub mod corpus;
pub mod dot;
pub mod formats;
pub mod output;
pub mod svg;

use std::fmt;

use tropjac_core::Error as CoreError;

/// Process-level failure classes. Each class owns one exit code so scripts
/// can tell broken input from size guards from mathematical rejections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// A file could not be read or written.
    Io(String),
    /// Syntactically or structurally invalid input: bad JSON, a rational
    /// not of the shape `p/q` with positive coprime denominator, an index
    /// out of range, mismatched lengths.
    Malformed(String),
    /// A desk-scale size guard was exceeded.
    Guard(String),
    /// The canonical polarization is undefined for this input (genus below
    /// two, or a component whose degree share is not an integer).
    DegenerateGenus(String),
    /// A well-formed request the mathematics rejects: disconnected graph,
    /// degree mismatch, non-semistable divisor, and so on.
    Domain(String),
}

impl CliError {
    /// The exit code for this failure class. `0` is success and `2` is
    /// reserved for command-line usage errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 3,
            CliError::Malformed(_) => 4,
            CliError::Guard(_) => 5,
            CliError::DegenerateGenus(_) => 6,
            CliError::Domain(_) => 7,
        }
    }

    /// Classify a core error raised while building values from an input
    /// file. Size guards keep their own class; everything else means the
    /// file content itself was invalid.
    pub fn from_input(e: CoreError) -> CliError {
        match e {
            CoreError::SizeGuard { .. } | CoreError::LpTooLarge { .. } => {
                CliError::Guard(e.to_string())
            }
            other => CliError::Malformed(other.to_string()),
        }
    }
}

impl From<CoreError> for CliError {
    /// Classify a core error raised during computation on valid inputs.
    fn from(e: CoreError) -> CliError {
        match e {
            CoreError::SizeGuard { .. } | CoreError::LpTooLarge { .. } => {
                CliError::Guard(e.to_string())
            }
            CoreError::GenusTooSmall { .. } | CoreError::DegeneratePolarization { .. } => {
                CliError::DegenerateGenus(e.to_string())
            }
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(msg) => write!(f, "io: {msg}"),
            CliError::Malformed(msg) => write!(f, "malformed input: {msg}"),
            CliError::Guard(msg) => write!(f, "size guard: {msg}"),
            CliError::DegenerateGenus(msg) => write!(f, "degenerate polarization: {msg}"),
            CliError::Domain(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

pub type CliResult<T> = Result<T, CliError>;
