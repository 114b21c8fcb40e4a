use thiserror::Error;

/// Errors raised while reading a presentation file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undeclared generator `{name}` at line {line}, column {column}")]
    UndeclaredGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("presentation declares no generators")]
    EmptyGenerators,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("attempted to invert zero")]
    ZeroInverse,
    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: u64, b: u64 },
    #[error("characteristic {q} divides the group order {order}")]
    CharacteristicDivides { q: u64, order: u64 },
    #[error("field has no primitive root of unity of order {0}")]
    NoRootOfUnity(u64),
    #[error("field of order {0} is too large for table arithmetic")]
    FieldTooLarge(u128),
    #[error("map to the quotient is not surjective")]
    NotSurjective,
    #[error("map does not respect relator {0}")]
    NotHomomorphism(usize),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("search budget of {budget} partial assignments exceeded")]
    Infeasible { budget: u64 },
    #[error("bound violated: {0}")]
    BoundViolation(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("permutation action is not transitive")]
    NotTransitive,
    #[error("automorphisms act on free groups of different ranks")]
    RankMismatch,
    #[error("integer overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
