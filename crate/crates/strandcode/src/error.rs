//! Crate-wide error type with stable process exit codes.
//!
//! Exit code ranges: 10-19 spectrum, 20-29 codec, 30-39 parameters, 40+ I/O.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    /// Requested window length exceeds the string it is applied to.
    #[error("window length {ell} exceeds string length {len}")]
    WindowTooLong { ell: usize, len: usize },

    /// A duplicate prefix/suffix key was found while stitching, so the
    /// source multiset cannot have had pairwise-distinct windows.
    #[error("ambiguous spectrum: window key {key:?} occurs more than once")]
    AmbiguousSpectrum { key: String },

    /// The spectrum is structurally inconsistent with any strand multiset
    /// of the stated dimensions.
    #[error("malformed spectrum: {reason}")]
    MalformedSpectrum { reason: String },

    /// Decoder input fails a structural check of the codec.
    #[error("malformed codeword: {reason}")]
    MalformedCodeword { reason: String },

    /// Internal safety bound on an elimination loop was exceeded.
    /// Indicates an implementation bug, never a property of valid input.
    #[error("elimination loop exceeded safety bound of {bound} iterations")]
    NonTermination { bound: usize },

    /// The requested codec scheme needs a larger alphabet.
    #[error("alphabet size {q} too small: {needed}")]
    AlphabetTooSmall { q: u32, needed: String },

    /// The run bound is too small for the requested scheme.
    #[error("run bound {m} too small: {needed}")]
    RunBoundTooSmall { m: usize, needed: String },

    /// Repeat-free window too short for the requested codeword length.
    #[error("window {ell} too short: need at least {needed}")]
    WindowTooShort { ell: usize, needed: usize },

    /// No admissible elimination step exists; the encoder cannot proceed.
    #[error("encoder stuck: {reason}")]
    EncoderStuck { reason: String },

    /// Index prefixes recovered by the decoder are not a permutation of 1..=k.
    #[error("index set broken: strand index prefixes are not a permutation of 1..={k}")]
    IndexSetBroken { k: usize },

    /// Fixed-width expansion cannot represent the value.
    #[error("width {width} too small to expand value {value} in base {q}")]
    WidthTooSmall { width: usize, value: usize, q: u32 },

    /// Construction A requires k to divide the repeat-free codeword length.
    #[error("divisibility violation: k = {k} does not divide n' = {n_prime}")]
    DivisibilityViolation { k: usize, n_prime: usize },

    /// Parameter derivation failed; names the violated inequality.
    #[error("infeasible parameters: {reason}")]
    InfeasibleParams { reason: String },

    /// An exact computation would exceed the configured budget.
    #[error("scale too large: {reason}")]
    ScaleTooLarge { reason: String },

    /// The distinct-strand space X*_{n,k} is empty (k > q^n).
    #[error("empty space: k = {k} exceeds q^n = {space}")]
    EmptySpace { k: usize, space: String },

    /// Payload does not fit the derived information length.
    #[error("payload too large: {reason}")]
    PayloadTooLarge { reason: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),

    /// A file did not parse as the expected format.
    #[error("parse error: {reason}")]
    Parse { reason: String },

    /// File header disagrees with the supplied parameters.
    #[error("parameter mismatch: {reason}")]
    ParamMismatch { reason: String },
}

impl Error {
    /// Stable exit code for the CLI. 0 is success and never returned here.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::WindowTooLong { .. } => 10,
            Error::AmbiguousSpectrum { .. } => 11,
            Error::MalformedSpectrum { .. } => 12,
            Error::IndexSetBroken { .. } => 13,
            Error::MalformedCodeword { .. } => 21,
            Error::NonTermination { .. } => 22,
            Error::AlphabetTooSmall { .. } => 23,
            Error::RunBoundTooSmall { .. } => 24,
            Error::WindowTooShort { .. } => 25,
            Error::EncoderStuck { .. } => 26,
            Error::InfeasibleParams { .. } => 31,
            Error::WidthTooSmall { .. } => 32,
            Error::DivisibilityViolation { .. } => 33,
            Error::ScaleTooLarge { .. } => 34,
            Error::EmptySpace { .. } => 35,
            Error::PayloadTooLarge { .. } => 36,
            Error::Io(_) => 40,
            Error::Json(_) => 43,
            Error::Parse { .. } => 41,
            Error::ParamMismatch { .. } => 42,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
