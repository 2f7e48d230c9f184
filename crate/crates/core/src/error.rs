use thiserror::Error;

/// Errors produced by dataset ingestion and the query operators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("row {row}: {message}")]
    Ingest { row: usize, message: String },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty dataset")]
    EmptyDataset,

    #[error("weight vector is not on the simplex: {0:?}")]
    OffSimplex(Vec<f64>),

    #[error("empty region")]
    EmptyRegion,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("m unreachable: requested {requested}, at most {achievable} achievable")]
    Unreachable { requested: usize, achievable: usize },

    #[error("dataset must be normalized to [0,1]")]
    NotNormalized,

    #[error("exact solver budget exceeded: {subsets} subsets > {budget}")]
    BudgetExceeded { subsets: f64, budget: f64 },

    #[error("uninformative preference: tuples have identical attributes")]
    UninformativePreference,

    #[error("region line {line}: {message}")]
    RegionParse { line: usize, message: String },

    #[error("tuple {0} is not in the skyline")]
    NotInSkyline(String),

    #[error("unknown tuple id {0}")]
    UnknownId(String),
}

pub type Result<T> = std::result::Result<T, Error>;
