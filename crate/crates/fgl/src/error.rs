use thiserror::Error;

/// Everything that can go wrong in the library surfaces as one of these.
///
/// Contract violations that indicate a programming error (mixing polynomials
/// over different generator tables in operator arithmetic, out-of-range
/// coefficient access) panic instead; the `Error` variants cover conditions
/// that can arise from perfectly well-formed inputs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("generator tables do not match")]
    TableMismatch,
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{0}` must have weight at least 1")]
    ZeroWeight(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("image of `{name}` must be weight-homogeneous of weight {expected}")]
    InhomogeneousImage { name: String, expected: u32 },
    #[error("{0} requires a series with zero constant term")]
    ConstantTermNotZero(&'static str),
    #[error("{0} requires a series with constant term 1")]
    ConstantTermNotOne(&'static str),
    #[error("{0} requires linear coefficient exactly 1")]
    NotStrict(&'static str),
    #[error("constant term is not an invertible rational")]
    NonUnitConstant,
    #[error("leading coefficient is not an invertible rational")]
    NonUnitLeading,
    #[error("series is zero to truncation; negative powers are undefined")]
    ZeroLeading,
    #[error("residue window [{lo}, {hi}) does not determine the coefficient at exponent -1")]
    ResidueWindow { lo: i64, hi: i64 },
    #[error("operation produced an empty precision window")]
    EmptyWindow,
    #[error("not a formal group law: {0}")]
    AxiomViolation(String),
    #[error("two computation routes disagree: {0}")]
    RouteMismatch(&'static str),
    #[error("Newton step derivative is not a unit at the initial point")]
    NonUnitDerivative,
    #[error("Newton iteration did not reach a root within the truncation order")]
    NoConvergence,
    #[error("series is not an involution under composition")]
    NotInvolutive,
    #[error("series is not even")]
    NotEven,
    #[error("formal group law is not odd")]
    NotOdd,
    #[error("need {needed} generators but the table provides {available}")]
    InsufficientGenerators { needed: usize, available: usize },
    #[error("sequence lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("sequence role mismatch: expected {expected}, found {found}")]
    RoleMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("sequence must lead with entry 1")]
    LeadingEntryNotOne,
    #[error("sequences are attached to different formal group laws")]
    LawMismatch,
    #[error("truncation order too small: need at least {needed}, have {have}")]
    PrecisionTooSmall { needed: usize, have: usize },
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
    #[error("invalid payload: {0}")]
    BadJson(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
