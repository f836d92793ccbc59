use thiserror::Error;

/// Errors shared across the spectral laboratory.
#[derive(Debug, Error)]
pub enum Error {
    #[error("mode index must be >= 1, got {0}")]
    NonpositiveModeIndex(u64),

    #[error("mode index {index} out of range for explicit spectrum of length {len}")]
    ModeIndexOutOfRange { index: u64, len: usize },

    #[error("eigenvalue must be positive, got {0}")]
    NonpositiveEigenvalue(f64),

    #[error("eigenvalue sequence must be nondecreasing: entry {index} is {value} < {previous}")]
    NonmonotoneSpectrum {
        index: usize,
        value: f64,
        previous: f64,
    },

    #[error("empty eigenvalue sequence")]
    EmptySpectrum,

    #[error("invalid power-law parameters: scale {scale}, exponent {exponent} (both must be positive)")]
    InvalidPowerLaw { scale: f64, exponent: f64 },

    #[error("{path}:{line}: {message}")]
    SpectrumFile {
        path: String,
        line: usize,
        message: String,
    },

    #[error("omega must be nonnegative, got {0}")]
    NegativeOmega(f64),

    #[error("empty mode search range")]
    EmptySearchRange,

    #[error("singular 3x3 system at lambda = {lambda} (pivot {pivot:e})")]
    SingularSystem { lambda: f64, pivot: f64 },

    #[error("Jacobi eigensolver failed to converge within {sweeps} sweeps")]
    JacobiNonConvergence { sweeps: usize },

    #[error("dissipation identity residual {residual:e} exceeds tolerance {tolerance:e} at lambda = {lambda}")]
    IdentityResidual {
        lambda: f64,
        residual: f64,
        tolerance: f64,
    },

    #[error("dense oracle truncation must satisfy 1 <= N <= {max}, got {n}")]
    OracleTruncation { n: u64, max: u64 },

    #[error("need at least {need} samples, got {got}")]
    TooFewSamples { need: usize, got: usize },

    #[error("nonpositive value in log-scale fit: {0}")]
    NonpositiveFitValue(f64),

    #[error("sigma = {0} outside the classified range [0, 3/2]")]
    SigmaUnclassified(f64),

    #[error("interpolation exponents must satisfy alpha < beta < gamma, got ({0}, {1}, {2})")]
    ExponentOrdering(f64, f64, f64),

    #[error("unknown lemma item {0:?}")]
    UnknownLemmaItem(String),

    #[error("item {item} requires {requirement}, got sigma = {sigma}, omega = {omega}")]
    ItemRange {
        item: String,
        requirement: String,
        sigma: f64,
        omega: f64,
    },

    #[error("time grid must be increasing and start at 0")]
    BadTimeGrid,

    #[error("decay fit requires times spanning at least {need_decades} decades, got {got_decades:.2}")]
    InsufficientTimeSpan {
        need_decades: f64,
        got_decades: f64,
    },

    #[error("empty modal state")]
    EmptyState,

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
}

pub type Result<T> = std::result::Result<T, Error>;
