use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("functional is not convolution-invertible (condition estimate {0:.3e})")]
    NotConvolutionInvertible(f64),
    #[error("invariance system has a {0}-dimensional solution space, expected 1")]
    NotErgodic(usize),
    #[error("block decomposition failed: {0}")]
    Decomposition(String),
    #[error("Gram matrix of the Haar state is not positive definite (min eigenvalue {0:.3e})")]
    NotFaithful(f64),
    #[error("cocycle inverse inconsistent: residual {0:.3e}")]
    InvalidInverse(f64),
    #[error("not a bicharacter: {0}")]
    InvalidBicharacter(String),
    #[error("not a Hopf *-algebra quotient morphism: {0}")]
    InvalidMorphism(String),
    #[error("irreducible blocks could not be matched: {0}")]
    BlockMismatch(String),
    #[error("operator does not commute with the corepresentation (residual {0:.3e})")]
    NotEquivariant(f64),
    #[error("block-form reconstruction failed although preservation holds (residual {0:.3e})")]
    TheoremViolation(f64),
    #[error("corepresentation does not commute with the Dirac operator (residual {0:.3e})")]
    NotInCategory(f64),
    #[error("invalid group data: {0}")]
    InvalidGroup(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogName(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Input errors (malformed files, unknown names) as opposed to mathematical failures.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Dimension(_)
                | Error::Parse(_)
                | Error::Io(_)
                | Error::Json(_)
                | Error::UnknownCatalogName(_)
                | Error::InvalidGroup(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
