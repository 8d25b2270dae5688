use thiserror::Error;

/// Errors raised anywhere in the toolkit.
///
/// Variants mirror the failure modes of the individual operations; the
/// scenario layer turns them into `fail` or `inconclusive` report rows.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial {poly} is reducible: {witness}")]
    Reducible { poly: String, witness: String },
    #[error("irreducibility of {0} cannot be certified and assertions are disallowed")]
    UncertifiedIrreducibility(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields: {0} vs {1}")]
    ParentMismatch(String, String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("{0} is not irreducible")]
    NotIrreducible(String),
    #[error("unsupported base field: {0}")]
    UnsupportedBase(String),
    #[error("substitution hits a pole: {0}")]
    PoleAtSubstitution(String),
    #[error("wrong characteristic: {0}")]
    WrongCharacteristic(String),
    #[error("base field {field} does not contain a primitive {p}-th root of unity")]
    MissingRootOfUnity { field: String, p: u64 },
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("class system is not certified independent")]
    NotCertified,
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("group order {order} exceeds the bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("singular linear system")]
    SingularSystem,
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("semantic error: {0}")]
    Semantic(String),
    #[error("unknown scenario: {0}")]
    UnknownScenario(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
