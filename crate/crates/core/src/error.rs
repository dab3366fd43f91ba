//! Error type shared by all modules of the crate.

use std::path::PathBuf;
use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the vocoder pipeline.
#[derive(Debug, Error)]
pub enum Error {
    /// Underlying I/O failure, tagged with the path that was being accessed.
    #[error("i/o failure on {path}: {source}")]
    IoFailure {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Audio file uses a layout this crate does not read (multi-channel,
    /// compressed codec, unexpected bit depth).
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    /// Structurally broken RIFF/WAVE header.
    #[error("corrupt header: {0}")]
    CorruptHeader(String),

    /// Feature file does not start with the `MSB1` magic.
    #[error("bad magic: expected \"MSB1\", found {found:?}")]
    BadMagic { found: [u8; 4] },

    /// Feature file ends before the declared payload.
    #[error("truncated file: {0}")]
    TruncatedFile(String),

    /// Non-numeric line in a text F0 file.
    #[error("parse failure at line {line}: {text:?}")]
    ParseFailure { line: usize, text: String },

    /// Negative value in a text F0 file.
    #[error("negative f0 at line {line}: {value}")]
    NegativeF0 { line: usize, value: f64 },

    /// Input shorter than one analysis window.
    #[error("audio too short: {got} samples, need at least {need}")]
    AudioTooShort { got: usize, need: usize },

    /// Band layout would leave some band without a DFT bin.
    #[error("too many bands: {n_bands} bands require fft_size >= {min_fft}, got {fft_size}")]
    TooManyBands {
        n_bands: usize,
        fft_size: usize,
        min_fft: usize,
    },

    /// Voiced frame carries a non-positive fundamental frequency.
    #[error("invalid f0 for voiced frame: {0}")]
    InvalidF0(f64),

    /// Two pipeline stages disagree on the frame shift.
    #[error("frame shift mismatch: {left} ms vs {right} ms")]
    FrameShiftMismatch { left: f64, right: f64 },

    /// Frame value outside the strictly positive domain.
    #[error("non-positive input value: {0}")]
    NonPositiveInput(f64),

    /// Envelope magnitude outside the strictly positive domain.
    #[error("non-positive envelope value at bin {bin}: {value}")]
    NonPositiveEnvelope { bin: usize, value: f64 },

    /// Buffer lengths do not line up.
    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    /// Feature track and f0 contour have different frame counts.
    #[error("frame count mismatch: track has {track} frames, f0 contour has {f0}")]
    FrameCountMismatch { track: usize, f0: usize },

    /// Operation received a log-domain track where a linear one is required.
    #[error("log-domain mismatch: {0}")]
    LogDomainMismatch(String),

    /// Two spectral envelopes live on different frequency grids.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// Analysis configuration violates its own invariants.
    #[error("invalid config: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::IoFailure {
            path: path.into(),
            source,
        }
    }
}
