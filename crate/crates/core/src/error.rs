use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("tower depth must be at least 1")]
    ZeroDepth,
    #[error("generator B_{index} = {value} is not a positive integer")]
    InvalidGenerator { index: usize, value: i128 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("explicit generator list is empty")]
    EmptyGenerators,
    #[error("explicit generator list has {available} entries, depth {depth} requested")]
    DepthExceedsGenerators { depth: usize, available: usize },
    #[error("malformed tower spec `{spec}`: {reason}")]
    TowerSpec { spec: String, reason: String },
    #[error("operand {0} exceeds the 64-bit range supported for factorization")]
    OperandTooLarge(String),
    #[error("expected {expected} residues, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("residue chain is incompatible at level {level}: r_{next} is not congruent to r_{level} mod M_{level}", next = .level + 1)]
    CompatibilityViolation { level: usize },
    #[error("operands live on different towers")]
    TowerMismatch,
    #[error("sequence has not converged at level {level}")]
    NotConverged { level: usize },
    #[error("sequence is empty")]
    EmptySequence,
    #[error("stability window must be at least 1")]
    ZeroWindow,
    #[error("not a unit at level {level}: prime {prime} divides the residue and the modulus")]
    NotUnit { level: usize, prime: u64 },
    #[error("{0} is not an element of the generator set A of this tower")]
    NotInA(u64),
    #[error("ideal generator list is empty")]
    EmptyIdealList,
    #[error("coarse level {level} has no multiple among the fine moduli")]
    NotRefinable { level: usize },
    #[error("cap of prime {prime} in the coarse tower is only known to depth {known}")]
    InexactCaps { prime: u64, known: u32 },
    #[error("syntax error at position {position}: {message}")]
    SetSyntax { position: usize, message: String },
    #[error("arithmetic progression with difference 0")]
    ZeroPeriod,
    #[error("period {0} exceeds the supported limit")]
    PeriodTooLarge(String),
    #[error("progression AP({start},{step}) has too many leading exceptions")]
    TooManyExceptions { start: u64, step: u64 },
    #[error("residue {residue} is not in [0, {modulus})")]
    ResidueOutOfRange { residue: u64, modulus: u64 },
}
