use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow in 128-bit integer computation")]
    Overflow,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {found} exceeds the supported maximum of {max}")]
    DimensionTooLarge { max: usize, found: usize },

    #[error("linear form `{0}` has no nonzero coefficient")]
    ZeroForm(&'static str),

    #[error("modulus must be positive")]
    NonPositiveModulus,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("cannot parse `{0}` as an integer or a fraction p/q")]
    Parse(String),

    #[error("invalid JSON input: {0}")]
    Json(String),

    #[error("ray direction must be nonzero")]
    ZeroDirection,

    #[error("slope c must be positive, got {0}")]
    NonPositiveSlope(i128),

    #[error("sign condition violated: {0}")]
    SignCondition(String),

    #[error("no coordinate axis carries a positive coefficient of g")]
    NoPositiveAxis,

    #[error("region is unbounded or empty of vertices")]
    UnboundedRegion,

    #[error("{stage}: intermediate set of size {size} exceeds the cap of {cap}")]
    CapExceeded {
        stage: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("generators span a lattice of rank below 2")]
    RankDeficient,

    #[error("outside the supported hypothesis: {0}")]
    OutOfHypothesis(String),

    #[error("window of {0} points is too large for an exhaustive scan")]
    WindowTooLarge(u128),

    #[error("window margin too small: {0}")]
    InsufficientMargin(String),

    #[error("minimal Frobenius vector is not unique: {0}")]
    UniquenessViolated(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}
