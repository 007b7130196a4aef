use thiserror::Error;

/// Errors raised by every layer of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("no primitive {m}-th root of unity in GF({q})")]
    NoSuchRoot { m: u64, q: u64 },
    #[error("element is not in the cyclic group generated by the chosen root of unity")]
    NotARoot,
    #[error("matrix is not diagonalizable over the splitting field: eigenspaces sum to {found}, expected {expected}")]
    NotSemisimple { found: usize, expected: usize },
    #[error("rational function has a pole at t = 1 (order {0})")]
    PoleAtOne(i64),
    #[error("series does not determine a rational function with the given budget: {0}")]
    InsufficientData(String),
    #[error("group closure exceeds the bound of {0} elements")]
    TooLarge(usize),
    #[error("{q} is not a power of the characteristic {p}")]
    BadCharacteristic { p: u64, q: u64 },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup order {0} is not a power of p")]
    NotPGroup(usize),
    #[error("orbit map is not a bijection: {0}")]
    BijectionFailure(String),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("elements do not form a subgroup")]
    NotSubgroup,
    #[error("degree {degree} lies outside the window ending at {top}")]
    WindowTooSmall { degree: i64, top: i64 },
    #[error("Koszul homology did not stabilize inside the window: {0}; enlarge the cutoff")]
    NotStabilized(String),
    #[error("module dimension {dim} exceeds the filtration index {i}")]
    DimensionTooLarge { dim: i64, i: i64 },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
