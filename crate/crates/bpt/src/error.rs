use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("OBJ parse error at line {line}: {msg}")]
    ObjParse { line: usize, msg: String },

    #[error("mesh has no faces")]
    EmptyMesh,

    #[error("mesh has no vertices")]
    NoVertices,

    #[error("non-finite vertex coordinate")]
    NonFinite,

    #[error("bounding box has zero extent on all three axes")]
    ZeroExtent,

    #[error("coordinate {value} outside [0,1); normalize the mesh first")]
    NotNormalized { value: f64 },

    #[error("vertex coordinate {value} does not fit a {bits}-bit grid")]
    GridOutOfRange { value: u32, bits: u8 },

    #[error("face {face} references vertex {index}, but only {len} vertices exist")]
    FaceIndexOutOfRange {
        face: usize,
        index: usize,
        len: usize,
    },

    #[error("all faces were dropped during canonicalization")]
    AllFacesDropped,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("malformed token sequence: {0}")]
    Malformed(#[from] MalformedSequence),

    #[error("bad magic bytes: not a .bpt file")]
    BadMagic,

    #[error("empty point cloud")]
    EmptyCloud,

    #[error("mesh has zero total surface area")]
    ZeroArea,

    #[error("vertex stream shorter than 2")]
    StreamTooShort,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Structural violations found while decoding a token sequence.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MalformedSequence {
    #[error("sequence does not begin with BOS")]
    MissingBos,

    #[error("first content token {0} is not a center-block id")]
    ExpectedCenterBlock(u32),

    #[error("offset token {0} appeared before any block context")]
    OffsetBeforeBlock(u32),

    #[error("patch ring has fewer than 2 vertices")]
    RingTooShort,

    #[error("block token {0} is not followed by an offset")]
    DanglingBlock(u32),

    #[error("truncated sequence: missing EOS")]
    Truncated,

    #[error("token id {id} out of range for vocabulary of size {vocab}")]
    TokenOutOfRange { id: u32, vocab: u32 },

    #[error("unexpected token {0}")]
    Unexpected(u32),

    #[error("content length {len} is not a multiple of {unit}")]
    BadContentLength { len: usize, unit: usize },

    #[error("trailing data after token payload")]
    TrailingData,
}
