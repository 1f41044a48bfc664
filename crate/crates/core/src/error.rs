use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported argument: {0}")]
    UnsupportedArgument(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function has a pole at the origin")]
    PoleAtOrigin,
    #[error("rational function has a pole at z = {0}")]
    PoleAtPoint(String),
    #[error("coefficient sequence is not eventually polynomial: {0}")]
    NotEventuallyPolynomial(String),
    #[error("horizon too short: {0}")]
    HorizonTooShort(String),
    #[error("invalid Hilbert function: {0}")]
    InvalidSpec(String),
    #[error("inconsistent counting plan: {0}")]
    InconsistentPlan(String),
    #[error("unknown symbol profile `{0}`")]
    UnknownSymbol(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("parameters out of validity range for `{id}`: {reason}")]
    OutOfValidity { id: String, reason: String },
    #[error("catalog entry `{0}` has no Hilbert function data")]
    NoHilbertData(String),
    #[error("rational function is not of the form R(z)/(1-z)^d")]
    NotPrForm,
    #[error("jet order exceeded: {0}")]
    OrderExceeded(String),
    #[error("bad jet point: {0}")]
    BadPoint(String),
    #[error("genericity failure: {0}")]
    GenericityFailure(String),
    #[error("could not sample a valid point: {0}")]
    BadSample(String),
    #[error("parameter cutoff too small: {0}")]
    CutoffTooSmall(String),
    #[error("stratum is not invariant: {0}")]
    NonInvariantStratum(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("scenario error: {0}")]
    Scenario(String),
    #[error("catalog data error: {0}")]
    CatalogData(String),
}
