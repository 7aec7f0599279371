use thiserror::Error;

/// Errors across the whole library. Each variant carries a stable
/// machine-readable code (see [`Error::code`]) used by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vector length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("not a subgroup: a generator lies outside the target lattice")]
    NotSubgroup,
    #[error("empty semigroup")]
    EmptySemigroup,
    #[error("level {0} out of sampled range (truncation {1})")]
    OutOfRange(u64, u64),
    #[error("need at least 3 nonempty slices to estimate growth, found {0}")]
    InsufficientSamples(usize),
    #[error("empty point set")]
    EmptySet,
    #[error("affine hull of the polytope does not match the span of the lattice")]
    DimensionMismatch,
    #[error("affine dimension {0} exceeds the supported bound 4")]
    UnsupportedDimension(usize),
    #[error("zero polynomial has no value")]
    ZeroPoly,
    #[error("degree piece L_{0} is zero")]
    ZeroPiece(u64),
    #[error("all degree pieces vanish up to the truncation")]
    AllZero,
    #[error("kappa is undefined: every positive piece vanishes")]
    KappaUndefined,
    #[error("multiplicity routes disagree: exact {exact} vs finite-difference {finite_difference}")]
    Inconsistent {
        exact: String,
        finite_difference: String,
    },
    #[error("finite differences did not stabilize over the computed range")]
    Unstable,
    #[error("slice at level {0} is empty")]
    EmptySlice(u64),
    #[error("component index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("series does not inject into the component sum (M^s is nonzero at degree {0})")]
    NotInjective(u64),
    #[error("schema error at {pointer}: {message}")]
    SchemaError { pointer: String, message: String },
    #[error("bad rational at {pointer}: expected an integer string or \"p/q\"")]
    BadRational { pointer: String },
    #[error("bad exponent key at {pointer}: expected {expected} comma-separated nonnegative integers")]
    BadExponent { pointer: String, expected: usize },
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::LengthMismatch(..) => "LENGTH_MISMATCH",
            Error::NotSubgroup => "NOT_SUBGROUP",
            Error::EmptySemigroup => "EMPTY_SEMIGROUP",
            Error::OutOfRange(..) => "OUT_OF_RANGE",
            Error::InsufficientSamples(..) => "INSUFFICIENT_SAMPLES",
            Error::EmptySet => "EMPTY_SET",
            Error::DimensionMismatch => "DIMENSION_MISMATCH",
            Error::UnsupportedDimension(..) => "UNSUPPORTED_DIMENSION",
            Error::ZeroPoly => "ZERO_POLY",
            Error::ZeroPiece(..) => "ZERO_PIECE",
            Error::AllZero => "ALL_ZERO",
            Error::KappaUndefined => "KAPPA_UNDEFINED",
            Error::Inconsistent { .. } => "INCONSISTENT",
            Error::Unstable => "UNSTABLE",
            Error::EmptySlice(..) => "EMPTY_SLICE",
            Error::IndexOutOfRange(..) => "INDEX_OUT_OF_RANGE",
            Error::NotInjective(..) => "NOT_INJECTIVE",
            Error::SchemaError { .. } => "SCHEMA_ERROR",
            Error::BadRational { .. } => "BAD_RATIONAL",
            Error::BadExponent { .. } => "BAD_EXPONENT",
        }
    }

    /// CLI process exit code: 2 for input validation failures, 3 for
    /// computation refusals.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SchemaError { .. }
            | Error::BadRational { .. }
            | Error::BadExponent { .. }
            | Error::LengthMismatch(..) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
