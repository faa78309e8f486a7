use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("modulus is not monic")]
    NotMonic,
    #[error("modulus is not irreducible over F_{p}")]
    NotIrreducible { p: u32 },
    #[error("modulus is irreducible but x is not primitive (order {order} < {group})")]
    NotPrimitive { order: u64, group: u64 },
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field too large: {0}")]
    FieldTooLarge(String),
    #[error("no Conway polynomial for F_{p}^{degree} in the table")]
    NoConway { p: u32, degree: usize },
    #[error("conway table line {line}: {msg}")]
    ConwayTable { line: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("F_{{q^{s}}} is not a subfield of F_{{q^{n}}}")]
    InvalidSubfield { s: usize, n: usize },
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("element or subspace belongs to a different field tower")]
    TowerMismatch,
    #[error("zero generator in a line sum")]
    ZeroGenerator,
    #[error("cannot shift by zero")]
    ZeroShift,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("orbit has {required} members, above the enumeration budget {budget}")]
    BudgetExceeded { required: u64, budget: u64 },
    #[error("alpha lies in the base field F_q")]
    AlphaInBaseField,
    #[error("subspace does not generate a full-length orbit (stabilizer exponent {t})")]
    NotFullLength { t: usize },
    #[error("subspace has dimension zero")]
    EmptySubspace,
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("brute-force oracle limited to {limit} elements, input has {size}")]
    OracleScaleExceeded { size: u64, limit: u64 },
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
