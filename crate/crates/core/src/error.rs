use thiserror::Error;

/// Errors raised by the library. Messages carry the owning module as a prefix.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("arith: argument must be a positive integer, got {0}")]
    NonPositive(u64),

    #[error("arith: tabulation bounds differ ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("arith: value {index} is outside the tabulation 1..={limit}")]
    OutOfRange { index: u64, limit: u64 },

    #[error("arith: {0}")]
    Table(String),

    #[error("sets: cannot parse set spec `{0}`")]
    SetSpec(String),

    #[error("sets: enumeration cap {cap} is below the requested bound {requested}")]
    CapExceeded { cap: u64, requested: u64 },

    #[error("dfactor: {0}")]
    DirectFactor(String),

    #[error("means: {0}")]
    Means(String),

    #[error("means: f is not multiplicatively monotone: f({k}) vs f({n}) with {k} | {n}")]
    NotMonotone { k: u64, n: u64 },

    #[error("toeplitz: cannot parse kernel spec `{0}`")]
    KernelSpec(String),

    #[error("toeplitz: kernel is not hermitian at {num}/{den}")]
    NotHermitian { num: u64, den: u64 },

    #[error("toeplitz: sigma table does not cover p={p}, k={k}")]
    SigmaRange { p: u64, k: u32 },

    #[error("toeplitz: matrix not numerically positive-definite at n={n} (precision {bits} bits)")]
    NotPositiveDefinite { n: usize, bits: u32 },

    #[error("toeplitz: kernel not positive-definite at prime p={p}, level k={k}")]
    PrimeNotPositive { p: u64, k: usize },

    #[error("toeplitz: kernel has support outside A/A at {num}/{den}")]
    SupportLeak { num: u64, den: u64 },

    #[error("toeplitz: {0}")]
    Toeplitz(String),

    #[error("szego: symbol is negative near t={t} (value {value})")]
    NegativeSymbol { t: f64, value: f64 },

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
