use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cos(pi/{m}) is not representable in the cyclotomic field of conductor {conductor}")]
    Conductor { m: u32, conductor: u32 },

    #[error("group is not finite: {0}")]
    NotFinite(String),

    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown Coxeter type `{0}`")]
    UnknownType(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Consistency(_) => 1,
            Error::Inconclusive(_) | Error::BoundExceeded(_) => 3,
            _ => 2,
        }
    }
}
