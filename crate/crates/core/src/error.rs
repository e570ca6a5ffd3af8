use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("invalid simple game: {0}")]
    Game(String),
    #[error("preference is not asymmetric: {0}")]
    Asymmetry(String),
    #[error("invalid winning family: {0}")]
    Family(String),
    #[error("instance exceeds enumeration guard: {0}")]
    Scale(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable machine-readable code for reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Partition(_) => "partition",
            Error::Game(_) => "game",
            Error::Asymmetry(_) => "asymmetry",
            Error::Family(_) => "family",
            Error::Scale(_) => "scale",
            Error::Precondition(_) => "precondition",
            Error::Invalid(_) => "invalid",
        }
    }
}
