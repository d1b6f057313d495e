use thiserror::Error;

/// Errors raised by group construction, parsing and classification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed cycle notation at offset {offset}: {msg}")]
    CycleSyntax { offset: usize, msg: String },
    #[error("point {0} appears more than once")]
    RepeatedPoint(usize),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("images do not form a permutation of 0..{0}")]
    NotBijection(usize),
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("group is not transitive")]
    NotTransitive,
    #[error("partition is not invariant under the group")]
    NotInvariant,
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("not a regular normal subgroup: {0}")]
    NotRegularNormal(String),
    #[error("{what} budget exceeded (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: u64 },
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("malformed partition text: {0}")]
    PartitionSyntax(String),
    #[error("line {line}: {msg}")]
    Catalog { line: usize, msg: String },
    #[error("{msg} at offset {offset}")]
    Expr { offset: usize, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("catalog for degree {0} is not marked complete")]
    IncompleteCatalog(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn budget(what: &'static str, limit: u64) -> Error {
    Error::BudgetExceeded { what, limit }
}
