use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{labels} labels supplied for a {dim}x{dim} distance matrix")]
    LabelCount { labels: usize, dim: usize },

    #[error("distance matrix row {row} has {found} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        found: usize,
        expected: usize,
    },

    #[error("coordinate list has {found} entries, expected {expected}")]
    CoordCount { found: usize, expected: usize },

    #[error("permutation length {perm} does not match space size {points}")]
    PermLength { perm: usize, points: usize },

    #[error("map endpoints have different sizes: {source_len} vs {target_len}")]
    MapSizeMismatch {
        source_len: usize,
        target_len: usize,
    },

    #[error("permutation is not a bijection: target index {index} is repeated or out of range")]
    NotBijection { index: usize },

    #[error("composed maps do not share a middle space")]
    ComposeMismatch,

    #[error("epsilon must be nonnegative, got {0}")]
    NegativeEpsilon(f64),

    #[error("invalid character '{ch}' at position {position}: the {family} family uses alphabet {alphabet}")]
    SignVectorChar {
        ch: char,
        position: usize,
        family: &'static str,
        alphabet: &'static str,
    },

    #[error("entry {value} at position {position} is outside the {family} alphabet {alphabet}")]
    SignVectorEntry {
        value: u8,
        position: usize,
        family: &'static str,
        alphabet: &'static str,
    },

    #[error("sign vector must have at least one entry")]
    EmptySignVector,

    #[error("sign vector length {len} does not match discretization depth {depth}")]
    DepthMismatch { len: usize, depth: usize },

    #[error("discretization depth must be at least 1")]
    ZeroDepth,

    #[error("discretization depth {depth} exceeds the supported maximum {cap}")]
    TooDeep { depth: usize, cap: usize },

    #[error("sign vectors have different lengths: {left} vs {right}")]
    SignLengthMismatch { left: usize, right: usize },

    #[error("samples per block must be at least 2, got {0}")]
    TooFewSamples(usize),

    #[error("pulse slope must lie in (0, 1], got {0}")]
    SlopeOutOfRange(f64),

    #[error("x = {0} lies outside every retained block")]
    OutsideBlocks(f64),

    #[error("spaces have different cardinalities: {left} vs {right}")]
    CardinalityMismatch { left: usize, right: usize },

    #[error("exhaustive enumeration is limited to {cap} points, got {n}")]
    EnumerationCap { n: usize, cap: usize },

    #[error("exhaustive mode would build {count} spaces; the per-run limit is {cap}")]
    TooManyVectors { count: usize, cap: usize },

    #[error("experiment '{experiment}' requires the {expected} family")]
    WrongFamily {
        experiment: &'static str,
        expected: &'static str,
    },

    #[error("epsilon list must be strictly decreasing within (0, 1]")]
    BadEpsilonList,

    #[error("certified bound violated: {context} = {value} exceeds {limit}")]
    BoundViolated {
        context: String,
        value: f64,
        limit: f64,
    },

    #[error("unsupported format version {0}")]
    FormatVersion(u32),

    #[error("distance list has {found} entries, expected {expected} for {n} points")]
    DistanceListLen {
        found: usize,
        expected: usize,
        n: usize,
    },

    #[error("map file names space '{expected}' but '{found}' was supplied")]
    MapSpaceName { expected: String, found: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
