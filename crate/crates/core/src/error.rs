use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("modulus has degree {found}, expected monic of degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("squarefree part of {0} not determinable by trial division")]
    SquarefreeUnresolved(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("characteristic {char} not admissible for {kind}")]
    BadCharacteristic { kind: String, char: u64 },
    #[error("symbol {sym} is not a generator of {kind}")]
    InvalidSymbolForKind { kind: String, sym: String },
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("orthogonal torus words need a square root witness")]
    NotASquareWitness,
    #[error("matrix does not preserve the form of {0}")]
    NotAMember(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("operation requires {expected}, got {found}")]
    WrongKind { expected: String, found: String },
    #[error("shape violation: {0}")]
    ShapeViolation(String),
    #[error("group order {0} exceeds the enumeration limit")]
    GroupTooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
