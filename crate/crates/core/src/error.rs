use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Grassmannian G({d},{n}): need 1 <= d < n")]
    InvalidContext { d: usize, n: usize },

    #[error("invalid index {entries:?} for G({d},{n}): {reason}")]
    InvalidIndex {
        entries: Vec<usize>,
        d: usize,
        n: usize,
        reason: &'static str,
    },

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("indices belong to different Grassmannians")]
    ContextMismatch,

    #[error("empty Richardson variety: w = {w} is not >= v = {v}")]
    EmptyVariety { w: String, v: String },

    #[error("{tau} does not lie in the interval [{v}, {w}]")]
    NotInInterval { tau: String, w: String, v: String },

    #[error("boundary is inapplicable: {0}")]
    BoundaryInapplicable(&'static str),

    #[error("root pair ({removed}, {added}) is not an exchange for {tau}")]
    InvalidRootPair {
        removed: usize,
        added: usize,
        tau: String,
    },

    #[error("{a} and {b} are comparable; no exchange relation applies")]
    ComparablePair { a: String, b: String },

    #[error("patch assignment mismatch: {0}")]
    PatchAssignment(String),

    #[error("matrix has shape {rows}x{cols}, expected {n}x{d}")]
    MatrixShape {
        rows: usize,
        cols: usize,
        n: usize,
        d: usize,
    },

    #[error("could not find a non-vanishing point after {0} attempts")]
    DegreeMeasurement(usize),

    #[error("inexact division {numerator} / {denominator} in multiplicity recursion")]
    InexactDivision {
        numerator: String,
        denominator: String,
    },

    #[error("interpolation check failed: {0}")]
    Interpolation(String),

    #[error("multiplicity check failed: {0}")]
    Multiplicity(String),

    #[error("straightening certification failed: {0}")]
    Certification(String),

    #[error("empty list of components")]
    EmptyUnion,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
