use thiserror::Error;

use crate::field::Elem;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("polynomial {0} is reducible")]
    ReduciblePolynomial(String),

    #[error("cannot certify irreducibility of a degree-{0} polynomial over Q (pass the trusted flag to accept it)")]
    UnverifiedIrreducibility(usize),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("operands live in different fields")]
    FieldMismatch,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("characteristic polynomial does not split; remaining factor {display}")]
    NonSplitCharPoly { factor: Vec<Elem>, display: String },

    #[error("root finding unsupported: {0}")]
    RootFindingUnsupported(String),

    #[error("validation failed: {}", .0.join("; "))]
    ValidationFailed(Vec<String>),

    #[error("wrong rank: expected {expected}, got {got}")]
    WrongRank { expected: usize, got: usize },

    #[error("unsupported rank {0}")]
    UnsupportedRank(usize),

    #[error("unsupported base: unramified degree f = {0} (only f = 1 is supported)")]
    UnsupportedBase(usize),

    #[error("no valuation data supplied for the coefficient field")]
    NoValuationData,

    #[error("inconsistent valuation data: {0}")]
    InconsistentValuation(String),

    #[error("not a monodromy module: {0}")]
    NotMonodromyModule(String),

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("mixed parameters: {0}")]
    MixedParameters(String),

    #[error("Frobenius is not semisimple")]
    NotFrobeniusSemisimple,

    #[error("group exceeds enumeration cap {0}")]
    GroupTooLarge(usize),

    #[error("splitting extension of degree {0} exceeds the cap")]
    SplittingFieldTooLarge(usize),

    #[error("decomposed-generic prime p equals l = {0}")]
    EqualCharacteristic(u64),

    #[error("zero eigenvalue")]
    ZeroEigenvalue,

    #[error("zero parameter")]
    ZeroParameter,

    #[error("unsupported local type: {0}")]
    UnsupportedLocalType(String),

    #[error("unsupported field tower: {0}")]
    UnsupportedTower(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
