use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("dimension out of range: {0}")]
    Dimension(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no intertwiner: {0}")]
    EmptyKernel(String),
    #[error("intertwiner not unique: kernel dimension {0}")]
    DegenerateKernel(usize),
    #[error("normalization needs an irrational scale: {0}")]
    IrrationalScale(String),
    #[error("quaternionic structure (epsilon = -1): {0}")]
    Quaternionic(String),
    #[error("unknown identity: {0}")]
    UnknownIdentity(String),
    #[error("identity {id} not applicable at D={dim}")]
    Inapplicable { id: String, dim: usize },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("index error: {0}")]
    Index(String),
}

pub type Result<T> = std::result::Result<T, Error>;
