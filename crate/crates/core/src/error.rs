use std::path::PathBuf;

use thiserror::Error;

/// Content problems in frames, recordings and the CSV formats.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormatError {
    #[error("frame {frame}: expected {expected} values, found {found}")]
    Arity {
        frame: usize,
        expected: usize,
        found: usize,
    },
    #[error("frame {frame}: non-finite value at pixel {pixel}")]
    NonFinite { frame: usize, pixel: usize },
    #[error("frame {frame}: temperature {value} at pixel {pixel} outside [-20, 120] C")]
    OutOfBand {
        frame: usize,
        pixel: usize,
        value: f64,
    },
    #[error("frame index {found} where {expected} was expected")]
    NonContiguous { expected: usize, found: usize },
    #[error("fps must be positive, got {0}")]
    Fps(f64),
    #[error("frame {frame}: zero delta")]
    ZeroDelta { frame: usize },
    #[error("frame {frame}: duplicate row")]
    DuplicateFrame { frame: usize },
    #[error("frame {frame}: delta outside recording of {n_frames} frames")]
    DeltaOutOfRange { frame: usize, n_frames: usize },
    #[error("bad header: expected `{expected}`")]
    Header { expected: String },
    #[error("line {line}: {message}")]
    Malformed { line: u64, message: String },
}

/// Top-level error for file-backed operations and the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Format {
        path: PathBuf,
        #[source]
        source: FormatError,
    },
    #[error(transparent)]
    Invalid(#[from] FormatError),
    #[error(transparent)]
    Config(#[from] crate::config::ConfigError),
    #[error(transparent)]
    Params(#[from] crate::ParamError),
    #[error(transparent)]
    Metrics(#[from] crate::metrics::MetricsError),
    #[error(transparent)]
    Scenario(#[from] crate::synthgen::ScenarioError),
}

impl Error {
    /// Input problems as opposed to I/O or internal failures.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Io { source, .. } if source.kind() != std::io::ErrorKind::NotFound)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
