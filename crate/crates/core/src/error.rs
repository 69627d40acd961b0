use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FloerError {
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("differential entry {from} -> {to} conflicts with an existing entry of a different U-power")]
    ConflictingEntry { from: String, to: String },
    #[error("no unit differential entry from `{from}` to `{to}`")]
    NoUnitEntry { from: String, to: String },
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("unsupported model: {0}")]
    UnsupportedModel(String),
    #[error("bad surgery coefficients p={p}, q={q}")]
    BadCoefficients { p: i64, q: i64 },
    #[error("framing must be nonzero")]
    BadFraming,
    #[error("cone is not truncatable: {0}")]
    NotTruncatable(String),
    #[error("no cone vertex (t={t}, B)")]
    NoSuchVertex { t: i64 },
    #[error("normal form mismatch: {0}")]
    NormalFormMismatch(String),
    #[error("tb - rot = {0} is even; Alexander grading is not integral")]
    NonIntegral(i64),
    #[error("chain is not a cycle in the selected slice: {0}")]
    NotCycles(String),
    #[error("contact surgery coefficient must be nonzero")]
    ZeroCoefficient,
    #[error("2t = {0} is odd")]
    ParityError(i64),
    #[error("excluded coefficient: {0}")]
    ExcludedCoefficient(String),
    #[error("bad coefficient: {0}")]
    BadCoefficient(String),
    #[error("json: {0}")]
    Json(String),
}

impl FloerError {
    /// Domain errors map to exit code 1, malformed input to 2.
    pub fn is_input_error(&self) -> bool {
        matches!(self, FloerError::Json(_))
    }
}

pub type Result<T> = std::result::Result<T, FloerError>;
