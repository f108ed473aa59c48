use thiserror::Error;

/// Errors produced by circuit construction, simulation and analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gate {kind} expects {expected} control line(s), got {got}")]
    ArityMismatch {
        kind: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("line {0} appears more than once in a gate")]
    DuplicateLine(usize),
    #[error("line index {index} out of range for width {width}")]
    IndexOutOfRange { index: usize, width: usize },
    #[error("circuit width must be positive")]
    ZeroWidth,
    #[error("width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },
    #[error("line map is not injective: lines {first} and {second} both map to {target}")]
    NonInjectiveMap {
        first: usize,
        second: usize,
        target: usize,
    },
    #[error("line map has {got} entries, circuit width is {width}")]
    MapLengthMismatch { got: usize, width: usize },
    #[error("image line {target} out of range for new width {width}")]
    ImageOutOfRange { target: usize, width: usize },
    #[error("interface role partition violated: {0}")]
    RolePartition(String),
    #[error("region length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("source and destination regions overlap at line {0}")]
    OverlappingRegions(usize),
    #[error("input region of {bits} bits exceeds the exhaustive bound of {bound}")]
    TooWide { bits: usize, bound: usize },
    #[error("restored line {line} expected {expected} but ended as {actual} for input {input}")]
    RestorationViolation {
        line: usize,
        input: u64,
        expected: bool,
        actual: bool,
    },
    #[error("machines are not mutually inverse: {0}")]
    NotInversePair(String),
    #[error("machines have incompatible region widths: {0}")]
    WidthIncompatible(String),
    #[error("bit count {got} too small, need at least {min}")]
    BitsTooSmall { got: usize, min: usize },
    #[error("no garbage configuration reproduces the declared presets; value is not in the image")]
    NoConfigMatches,
    #[error("trial budget of {0} exhausted before presets matched")]
    TrialBudgetExhausted(u64),
    #[error("growth report needs at least {needed} distinct sizes, got {got}")]
    InsufficientPoints { needed: usize, got: usize },
    #[error("invalid bit string {0:?}")]
    InvalidBits(String),
    #[error("value {value} does not fit in {bits} bits")]
    ValueTooLarge { value: u64, bits: usize },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
