use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not square: row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("empty table: a group has at least one element")]
    EmptyTable,

    #[error("entry table[{row}][{col}] = {value} is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },

    #[error("index 0 is not a two-sided identity: fails at element {element}")]
    NoIdentityAtZero { element: usize },

    #[error("not a Latin square: {line} {index} repeats value {value}")]
    NotLatinSquare { line: &'static str, index: usize, value: usize },

    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: usize, b: usize, c: usize },

    #[error("size limit exceeded for {what}: {size} > {bound}")]
    SizeLimitExceeded { what: &'static str, size: u128, bound: u128 },

    #[error("group is not abelian: {a}*{b} != {b}*{a}")]
    NotAbelian { a: usize, b: usize },

    #[error("coefficient group must be abelian")]
    NotAbelianCoefficients,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("map is not normalized: identity is sent to {image}")]
    NotNormalized { image: usize },

    #[error("groups do not match: {0}")]
    GroupMismatch(&'static str),

    #[error("table is not a normalized 2-cocycle: {0}")]
    NotACocycle(String),

    #[error("non-abelian quotient of order {order} is beyond the exhaustive checker")]
    NonAbelianUnsupported { order: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("the (~)-trivial hypothesis could not be verified and was not assumed")]
    HypothesisNotVerified,

    #[error("map is not a lower isomorphism: {0}")]
    NotLowerIso(String),

    #[error("map is not a (G1)-isomorphism: {0}")]
    NotG1Iso(String),

    #[error("map is not a (G2)-isomorphism: {0}")]
    NotG2Iso(String),

    #[error("certificate conditions failed: {0}")]
    ConditionsFailed(String),

    #[error("theorem assertion failed: {0}")]
    TheoremViolated(String),

    #[error("integer overflow in matrix arithmetic")]
    Overflow,

    #[error("unknown group name {0:?}")]
    UnknownGroup(String),
}

impl Error {
    /// True for errors caused by malformed group or cocycle data.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NotSquare { .. }
                | Error::EmptyTable
                | Error::EntryOutOfRange { .. }
                | Error::NoIdentityAtZero { .. }
                | Error::NotLatinSquare { .. }
                | Error::NonAssociative { .. }
                | Error::NotACocycle(_)
                | Error::DimensionMismatch { .. }
                | Error::NotNormalized { .. }
                | Error::UnknownGroup(_)
        )
    }
}
