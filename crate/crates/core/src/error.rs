use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("Fock index ({n_s}, {n_i}) outside cutoffs ({cutoff_s}, {cutoff_i})")]
    IndexOutOfCutoff {
        n_s: usize,
        n_i: usize,
        cutoff_s: usize,
        cutoff_i: usize,
    },

    #[error("cannot normalize a state with zero norm")]
    ZeroNorm,

    #[error("state is not normalized: norm^2 = {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error(
        "negative radicand {value} in deformed generator at lambda = {lambda}, M = {photons}, m = {m}"
    )]
    NegativeRadicand {
        lambda: f64,
        photons: usize,
        m: usize,
        value: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error(
        "pair-number cap {max_pairs} reached at r = {r} with neglected probability {tail:e}; \
         raise max_pairs or lower r"
    )]
    PairCapExceeded { max_pairs: usize, r: f64, tail: f64 },

    #[error(
        "truncation leakage {leakage:e} exceeds bound {bound:e} at cutoff {cutoff}; use a larger cutoff"
    )]
    LeakageExceeded {
        leakage: f64,
        bound: f64,
        cutoff: usize,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown figure id `{0}` (expected fig1..fig7)")]
    UnknownFigure(String),

    #[error("sweep point {point} failed: {source}")]
    SweepPoint {
        point: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 invalid config, 3 truncation failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::PairCapExceeded { .. } | Error::LeakageExceeded { .. } => 3,
            Error::SweepPoint { source, .. } => source.exit_code(),
            _ => 2,
        }
    }
}
