use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{what} exceeds cap ({value} > {limit})")]
    CapExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    /// Input outside the domain of an operation (e.g. `tsmu1` on a clause-set
    /// that is not saturated minimally unsatisfiable of deficiency one).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("clauses are not resolvable: they clash in {clashes} literals")]
    NotResolvable { clashes: usize },

    #[error("literal 0 is not a literal")]
    ZeroLiteral,

    #[error("clause contains both {0} and -{0}")]
    Tautology(u32),

    /// A property that must hold by construction was observed to fail.
    #[error("integrity violation: {0}")]
    Integrity(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Process exit status for the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::ZeroLiteral | Error::Tautology(_) => 2,
            Error::CapExceeded { .. } => 3,
            Error::Integrity(_) => 4,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn cap(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        Err(Error::CapExceeded {
            what,
            value: value as u64,
            limit: limit as u64,
        })
    } else {
        Ok(())
    }
}
