use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("coefficient domains do not agree: {0}")]
    DomainMismatch(String),

    #[error("constant term is not a unit of the coefficient ring")]
    NonUnitConstant,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("truncation order {available} is too small, order {requested} was requested")]
    InsufficientOrder { requested: usize, available: usize },

    #[error("cohomology classes live on P^{left} and P^{right}")]
    DimensionMismatch { left: usize, right: usize },

    /// The class being integrated does not have the degree of the space.
    #[error("class of rank {rank} cannot be integrated over a space of dimension {dim}")]
    RankMismatch { rank: i64, dim: i64 },

    #[error("no generic weight vector found after {attempts} attempts")]
    DegenerateWeights { attempts: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("hbar window starts at {window} but exponents down to {needed} are required")]
    HbarWindow { needed: i32, window: i32 },

    #[error("invariant table is missing degree {0}")]
    MissingDegree(u32),

    #[error("unsupported geometry: {0}")]
    Unsupported(String),

    #[error("graph cache: {0}")]
    Cache(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
