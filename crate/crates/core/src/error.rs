use thiserror::Error;

/// Errors raised by the calculus operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("unknown generator id {0}")]
    UnknownGenerator(usize),
    #[error("identification lists differ in length ({left} vs {right})")]
    InconsistentIdentification { left: usize, right: usize },
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("non-integral genus: 2g-2 = {0}")]
    NonIntegralGenus(i64),
    #[error("non-integral value: {0}")]
    NonIntegral(String),
    #[error("unknown surface `{0}`")]
    UnknownSurface(String),
    #[error("surfaces {0:?} do not form a connected configuration")]
    DisconnectedConfiguration(Vec<String>),
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(u32, u32),
    #[error("normal bundles do not cancel: {0} + {1} != 0")]
    NormalBundleMismatch(i64, i64),
    #[error("surface `{0}` is not a square-zero torus")]
    NotATorus(String),
    #[error("no declared fact that the complement of `{0}` is simply connected")]
    MissingComplementFact(String),
    #[error("unknown catalog block `{0}`")]
    UnknownBlock(String),
    #[error("unknown pipeline `{0}`")]
    UnknownPipeline(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
