use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("color array is empty")]
    EmptyArray,
    #[error("color {0} has no priority")]
    MissingPriority(u32),
    #[error("color {color} is outside [0, {sigma})")]
    ColorOutOfRange { color: u32, sigma: u32 },
    #[error("invalid query range a={a} b={b} k={k} for length {len}")]
    InvalidRange {
        a: usize,
        b: usize,
        k: usize,
        len: usize,
    },
    #[error("color {0} is not in the color set")]
    ColorNotInSet(u32),
    #[error("index {index} out of bounds for length {len}")]
    OutOfBounds { index: usize, len: usize },
    #[error("bad parameter: {0}")]
    BadParameter(&'static str),
    #[error("document {0} contains the separator byte")]
    SeparatorInContent(usize),
    #[error("document collection is empty")]
    EmptyCollection,
    #[error("t={t} is not supported (largest built t is {max})")]
    UnsupportedT { t: usize, max: usize },
    #[error("query ranges overlap")]
    OverlappingRanges,
    #[error("build verification failed: {0}")]
    VerificationFailed(&'static str),
}
