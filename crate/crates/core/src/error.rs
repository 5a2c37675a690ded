use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular matrix")]
    Singular,
    #[error("invalid algebra spec: {0}")]
    Spec(String),
    #[error("element is not regular: root {0} vanishes on it")]
    NotRegular(String),
    #[error("isotropic root {0} has no coroot")]
    Isotropic(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("depth exceeded: {0}")]
    Depth(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Spec(_) | Error::NotRegular(_) => 2,
            Error::Domain(_) | Error::Isotropic(_) | Error::Dimension(_) | Error::Singular => 3,
            Error::Depth(_) | Error::Resource(_) => 4,
            Error::Sampling(_) => 6,
            Error::Consistency(_) => 5,
        }
    }
}
