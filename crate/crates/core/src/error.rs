use thiserror::Error;

use crate::report::VerificationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(VerificationReport),
    #[error("table of order {0} exceeds the supported maximum of {max}", max = crate::group::MAX_ORDER)]
    OrderTooLarge(usize),
    #[error("subgroup is not normal: {g} * {s} * {g}^-1 leaves the subgroup")]
    NotNormal { g: usize, s: usize },
    #[error("search exceeded its budget of {0} nodes")]
    BudgetExceeded(u64),

    #[error("the two tables have different orders ({dot} vs {circ})")]
    OrderMismatch { dot: usize, circ: usize },
    #[error("the two operations have different identities ({dot} vs {circ})")]
    IdentityMismatch { dot: usize, circ: usize },
    #[error("left brace relation fails at a={0}, b={1}, c={2}")]
    LeftBraceViolation(usize, usize, usize),
    #[error("not an ideal: {0}")]
    NotAnIdeal(VerificationReport),
    #[error("identity violated: {0}")]
    IdentityViolation(VerificationReport),
    #[error("equivalence violated: {0}")]
    EquivalenceViolation(VerificationReport),
    #[error("theorem violated: {0}")]
    TheoremViolation(VerificationReport),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("{0} is not a prime modulus (supported primes are at most 251)")]
    NonPrimeModulus(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("generator {0} is singular")]
    SingularGenerator(usize),
    #[error("matrix group closure exceeded {0} elements")]
    ClosureBudgetExceeded(usize),

    #[error("action is invalid at c={c}: {reason}")]
    InvalidAction { c: usize, reason: String },
    #[error("construction of size {0} exceeds the limit of {1}")]
    SizeExceeded(usize, usize),
    #[error("construction produced an invalid brace: {0}")]
    ConstructionInvalid(String),
    #[error("no surjective homomorphism onto the target group")]
    NoSurjection,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("syntax error on line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("validation failed: {0}")]
    Validation(Box<Error>),
}
