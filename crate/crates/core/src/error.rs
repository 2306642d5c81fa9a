use std::fmt;

use crate::chunk::ChunkId;
use crate::validate::Violation;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while reading, writing or transforming GMS data.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("truncated {context} at byte offset {offset}: needed {needed} bytes, {available} available")]
    Truncated {
        context: String,
        offset: u64,
        needed: u64,
        available: u64,
    },

    #[error("malformed chunk id {} at byte offset {offset}", HexBytes(.bytes))]
    MalformedId { offset: u64, bytes: [u8; 4] },

    #[error("{kind} needs exactly {expected} bytes, got {found}")]
    LengthMismatch {
        kind: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("payload of {len} bytes does not fit in a chunk")]
    Oversize { len: u64 },

    #[error("bad magic {} at byte offset {offset}: expected {expected}", HexBytes(.found))]
    BadMagic {
        offset: u64,
        found: [u8; 4],
        expected: &'static str,
    },

    #[error("unsupported format version {major}.{minor}")]
    UnsupportedVersion { major: u16, minor: u16 },

    #[error("structural error in {chunk} chunk at byte offset {offset}: {reason}")]
    Structure {
        chunk: ChunkId,
        offset: u64,
        reason: String,
    },

    /// An enumeration field holds a code this version does not define.
    #[error("illegal {field} code {code}{}", at_offset(.offset))]
    IllegalCode {
        field: &'static str,
        code: u16,
        offset: Option<u64>,
    },

    #[error("scene is invalid: {}", join_violations(.0))]
    Validation(Vec<Violation>),

    #[error("frame width mismatch: expected {expected} tracks, got {found}")]
    WidthMismatch { expected: usize, found: usize },

    #[error("sample {value} cannot be stored as {sample_type}")]
    Unrepresentable { value: f64, sample_type: &'static str },

    #[error("frame writer already finalized")]
    AlreadyFinalized,

    #[error("decimation factor must be at least 1")]
    ZeroFactor,

    #[error("no channel {unit}.{channel} in scene")]
    UnknownPath { unit: String, channel: String },

    #[error("axis {axis} out of range for channel {unit}.{channel} with {tracks} track(s)")]
    AxisOutOfRange {
        unit: String,
        channel: String,
        axis: usize,
        tracks: usize,
    },

    #[error("signal has no samples")]
    EmptySignal,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("manifest mismatch: {0}")]
    ManifestMismatch(String),

    #[error("cannot parse {what}: {reason}")]
    Parse { what: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True when the input was readable but its content breaks a rule, as
    /// opposed to I/O failures and corrupt or truncated byte streams.
    pub fn is_semantic(&self) -> bool {
        matches!(
            self,
            Error::Structure { .. }
                | Error::IllegalCode { .. }
                | Error::UnsupportedVersion { .. }
                | Error::Validation(_)
                | Error::WidthMismatch { .. }
                | Error::Unrepresentable { .. }
                | Error::ZeroFactor
                | Error::UnknownPath { .. }
                | Error::AxisOutOfRange { .. }
                | Error::EmptySignal
                | Error::InvalidArgument(_)
                | Error::ManifestMismatch(_)
        )
    }
}

struct HexBytes<'a>(&'a [u8]);

impl fmt::Display for HexBytes<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{b:02X}")?;
        }
        Ok(())
    }
}

fn at_offset(offset: &Option<u64>) -> String {
    match offset {
        Some(o) => format!(" at byte offset {o}"),
        None => String::new(),
    }
}

fn join_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
