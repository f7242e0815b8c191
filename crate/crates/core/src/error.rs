use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NotPrime(u32),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid algebra: {}", .0.join("; "))]
    InvalidAlgebra(Vec<String>),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("spec error at {location}: {message}")]
    Spec { location: String, message: String },

    #[error("duplicate iso-class in seed list: seeds {0} and {1}")]
    DuplicateSeed(usize, usize),

    #[error("seed {0} is decomposable")]
    DecomposableSeed(usize),

    #[error("undecidable at this cap: {0}")]
    Undecidable(String),

    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    #[error("out of universe: needs multiplicities {0:?}")]
    OutOfUniverse(Vec<usize>),

    #[error("module has a summand outside the seed list: {0}")]
    ForeignSummand(String),

    #[error("subcategory is not extension-closed: {0}")]
    NotExtensionClosed(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures that mean "could not decide", as opposed to a wrong input.
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            Error::Undecidable(_) | Error::CapExceeded(_) | Error::OutOfUniverse(_) | Error::ForeignSummand(_)
        )
    }
}
