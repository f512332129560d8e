use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("subtraction underflow: {subtrahend} exceeds {minuend}")]
    Underflow { minuend: String, subtrahend: String },

    #[error("operation `{0}` is only defined on finite values")]
    SymbolicUnsupported(&'static str),

    #[error("exponent {exponent} exceeds the materialization bound {bound}")]
    ExponentTooLarge { exponent: String, bound: u64 },

    #[error("scale mismatch: {left} vs {right}")]
    ScaleMismatch { left: String, right: String },

    #[error("limit scale 0+ admits no arithmetic")]
    LimitScaleUnsupported,

    #[error("scalar action is excluded on a pair with count 1")]
    UnitCountExcluded,

    #[error("{base}^{exponent} is not a non-negative integer")]
    NonIntegerPower { base: String, exponent: String },

    #[error("dimension is undefined for count {0}")]
    DegenerateCount(String),

    #[error("dimension needs a scale below 1, got {0}")]
    ScaleNotSubUnit(String),

    #[error("invalid scale: {0}")]
    InvalidScale(String),

    #[error("invalid graduation: {0}")]
    InvalidGraduation(String),

    #[error("unsupported set model for {op}: {model}")]
    UnsupportedModel { op: &'static str, model: String },

    #[error("invalid set model: {0}")]
    InvalidModel(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("sets are not disjoint")]
    NotDisjoint,

    #[error("first set is not a subset of the second")]
    NotASubset,

    #[error("need at least two points")]
    TooFewPoints,

    #[error("scale {scale} is not a power of the contraction ratio 1/{ratio}")]
    ScaleNotAligned { scale: String, ratio: u32 },

    #[error("projection maps distinct points onto the same image")]
    ProjectionCollision,

    #[error("cover has {0} cells, too many to enumerate")]
    CoverTooLarge(String),

    #[error("need at least 2 usable scales, got {0}")]
    InsufficientSamples(usize),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("at position {pos}: {source}")]
    Algebra {
        pos: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{0}")]
    Config(String),

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn at(self, pos: usize) -> Self {
        match self {
            e @ Error::Algebra { .. } => e,
            e => Error::Algebra {
                pos,
                source: Box::new(e),
            },
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
