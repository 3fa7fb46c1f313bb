use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("ill-defined morphism: {0}")]
    IllDefined(String),
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("invalid homotopy: {0}")]
    InvalidHomotopy(String),
    #[error("not a quasi-isomorphism: {0}")]
    NotQuasiIso(String),
    #[error("mismatched complexes: {0}")]
    Mismatch(String),
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(format!($($arg)*)))
    };
}
pub(crate) use bail;
