use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the algebraic constructions.
///
/// Variants split into two families: domain errors (the input is not the
/// object it claims to be) and resource errors (the input is valid but the
/// computation would exceed a configured size cap). Callers such as the CLI
/// map these families onto different exit statuses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),

    #[error("not a cocycle: coboundary is nonzero at {witness:?}")]
    NotCocycle { witness: Vec<usize> },

    #[error("invalid cochain: {0}")]
    InvalidCochain(String),

    #[error("invalid extension: {0}")]
    InvalidExtension(String),

    #[error("invalid short exact sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("invalid Lie algebra: {0}")]
    InvalidLie(String),

    #[error("degree {degree} out of range (max {max})")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("size limit exceeded: {what} = {size} > {limit}")]
    SizeLimit { what: String, size: u128, limit: u128 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for refusals caused by a size cap rather than a malformed input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::SizeLimit { .. })
    }
}

pub(crate) fn check_size(what: impl Into<String>, size: u128, limit: u128) -> Result<()> {
    if size > limit {
        Err(Error::SizeLimit {
            what: what.into(),
            size,
            limit,
        })
    } else {
        Ok(())
    }
}
