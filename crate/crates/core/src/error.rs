use thiserror::Error;

/// Broad failure category, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or out-of-contract input.
    Usage,
    /// Well-formed input for which the mathematical object does not exist.
    Domain,
    /// A configured size or search budget was exceeded.
    Resource,
    /// An internal cross-check failed.
    Internal,
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{0} is not square-free")]
    NotSquarefree(i64),
    #[error("equation g^2 - ({base})h^2 = n^2*({target}) has no solution with h, n != 0")]
    Unsolvable { base: i64, target: i64 },
    #[error("search budget exceeded: {0}")]
    SearchBudget(String),
    #[error("the family attached to ({a}, {b}) is empty: no norm criterion holds")]
    EmptyFamily { a: i64, b: i64 },
    #[error("x^4 - 2({g})x^2 + ({g})^2 - ({h})^2*({base}) is reducible over Q")]
    Reducible { base: i64, g: String, h: String },
    #[error("fields over different quadratic bases cannot be compared")]
    Incomparable,
    #[error("prime {p} is not admissible for this field")]
    Inadmissible { p: u64 },
    #[error("Frobenius cross-check failed at p = {p}: {detail}")]
    Inconsistent { p: u64, detail: String },
    #[error("resource budget exceeded: requested {requested}, limit {limit}")]
    ResourceBudget { requested: u64, limit: u64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("schema violation at record {record}: {detail}")]
    Schema { record: usize, detail: String },
    #[error("record {record} does not match any enumerated field (a={a}, b={b}, g={g}, h={h})")]
    UnmatchedField {
        record: usize,
        a: i64,
        b: i64,
        g: String,
        h: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidInput(_)
            | Error::NotSquarefree(_)
            | Error::Incomparable
            | Error::Inadmissible { .. }
            | Error::InvalidConfig(_)
            | Error::Schema { .. }
            | Error::UnmatchedField { .. } => ErrorKind::Usage,
            Error::Unsolvable { .. } | Error::EmptyFamily { .. } | Error::Reducible { .. } => {
                ErrorKind::Domain
            }
            Error::SearchBudget(_) | Error::ResourceBudget { .. } => ErrorKind::Resource,
            Error::Inconsistent { .. } => ErrorKind::Internal,
            Error::Io(_) | Error::Csv(_) | Error::Json(_) => ErrorKind::Io,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
