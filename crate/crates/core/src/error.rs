use thiserror::Error;

/// Failures raised while building or querying a single factor group.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("factor group must have at least two elements")]
    Trivial,
    #[error("finite group order {0} exceeds the supported maximum {1}")]
    TooLarge(u64, u64),
    #[error("free group rank must be positive")]
    ZeroRank,
    #[error("multiplication table is not {n}x{n}")]
    TableShape { n: usize },
    #[error("table entry ({row}, {col}) = {value} is out of range")]
    TableEntry { row: usize, col: usize, value: u32 },
    #[error("element 0 is not a two-sided identity (row/column {0})")]
    IdentityLaw(usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("associativity fails on ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("generating set is empty")]
    NoGenerators,
    #[error("generator {0} is the identity")]
    IdentityGenerator(usize),
    #[error("generators reach only {reached} of {order} elements")]
    NotGenerating { reached: usize, order: usize },
    #[error("element {0} is out of range for this factor")]
    OutOfRange(String),
    #[error("element kind does not match the factor kind")]
    KindMismatch,
    #[error("free word is not freely reduced")]
    NotReduced,
}

/// Failures raised by free-product level operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("letter {index}: {source}")]
    Letter {
        index: usize,
        #[source]
        source: FactorError,
    },
    #[error("letter {0} is the identity of its factor")]
    IdentityLetter(usize),
    #[error("letters {0} and {1} lie in the same factor")]
    NotAlternating(usize, usize),
}

/// Failures raised while parsing a generator word.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown generator `{name}` at byte {position}")]
    UnknownGenerator { name: String, position: usize },
    #[error("malformed token `{token}` at byte {position}: {reason}")]
    Malformed {
        token: String,
        position: usize,
        reason: &'static str,
    },
}
