use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("profile error: {0}")]
    Profile(String),

    #[error("non-invertible series: {0}")]
    NonInvertible(String),

    #[error("transcendental residue: net power of 2πi is {pi_exp} in {context}")]
    TranscendentalResidue { pi_exp: i64, context: String },

    #[error("theta pole at factor {factor}")]
    ThetaPole { factor: String },

    #[error("character bookkeeping error: {0}")]
    CharacterBookkeeping(String),

    #[error("incomplete ring description: monomial {0} is not reducible")]
    IncompleteRing(String),

    #[error("degenerate root function: constant term is not invertible")]
    DegenerateRootFunction,

    #[error("not Kawamata log-terminal: divisor {name} has delta = {delta} <= -1")]
    NotKlt { name: String, delta: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),

    #[error("schema error: {0}")]
    Schema(#[from] serde_json::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn profile(msg: impl Into<String>) -> Self {
        Error::Profile(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
