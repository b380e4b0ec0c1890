use thiserror::Error;

/// Errors produced by grading-function construction, divergence evaluation,
/// the MRDP solvers, and problem-document parsing.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("event space must contain at least one element")]
    EmptySpace,

    #[error("duplicate element label {label:?}")]
    DuplicateLabel { label: String },

    #[error("chain needs at least two grades, got {len}")]
    ChainTooShort { len: usize },

    #[error("chain length mismatch: {left} grades vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("non-monotone chain: increment {value} at step {index} is not strictly positive")]
    NonMonotoneChain { index: usize, value: f64 },

    #[error("grading table is not strictly monotone: adding element {element} to subset mask {mask:#b} does not increase the grade")]
    NonMonotoneGrading { mask: u32, element: usize },

    #[error("grading function is not monotone along the chain at step {step}")]
    NonMonotoneAlongChain { step: usize },

    #[error("probability vector sums to {sum}, expected 1")]
    NotNormalized { sum: f64 },

    #[error("negative probability mass {value} at index {index}")]
    NegativeMass { index: usize, value: f64 },

    #[error("measure is not normalized: expected grades 0 at the empty set and 1 at the full set, got span {span}")]
    NotNormalizedMeasure { span: f64 },

    #[error("grading function has zero span")]
    ZeroSpan,

    #[error("non-finite value {value} in {context}")]
    NonFinite { context: &'static str, value: f64 },

    #[error("event space of {n} elements exceeds the chain-enumeration cap of {cap}")]
    SpaceTooLarge { n: usize, cap: usize },

    #[error("sequence {0:?} is not a permutation of the element indices")]
    InvalidPermutation(Vec<usize>),

    #[error("dimension mismatch in {what}: expected {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("invalid anchors: {0}")]
    InvalidAnchors(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("non-positive increment {value} at index {index}")]
    NonPositiveIncrement { index: usize, value: f64 },

    #[error("block {block} is infeasible: required cost rate {r0} lies outside the span of the element rates")]
    Infeasible { block: usize, r0: f64 },

    #[error("deviation vector has no sign mix, E(alpha) = 0 has no unique root")]
    NoSignMix,

    #[error("failed to bracket the root of E(alpha)")]
    RootBracketFailure,

    #[error("constraint matrix is rank deficient: smallest singular value {smin} vs largest {smax}")]
    RankDeficient { smin: f64, smax: f64 },

    #[error("dual iteration diverged after {iterations} steps; the constraints admit no strictly positive solution")]
    DualDivergence { iterations: usize },

    #[error("no strictly positive feasible point found for the constraint system")]
    NoFeasiblePoint,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("unknown element label {label:?}")]
    UnknownElement { label: String },
}

pub type Result<T> = std::result::Result<T, Error>;
