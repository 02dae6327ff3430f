use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    DimensionMismatch { op: &'static str, left: (usize, usize), right: (usize, usize) },

    #[error("expected {expected} matrix entries, found {found}")]
    EntryCount { expected: usize, found: usize },

    #[error("unsupported dimension {0} (supported: 2, 4, 8, 16)")]
    UnsupportedDimension(usize),

    #[error("state vector is not normalized: squared norm {0}")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian: max deviation {0:e}")]
    NotHermitian(f64),

    #[error("trace is {0}, expected 1")]
    TraceNotOne(f64),

    #[error("matrix is not positive semidefinite: minimum eigenvalue {0:e}")]
    NotPositive(f64),

    #[error("{name} = {value} is not a probability in [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },

    #[error("weights must be nonnegative and sum to 1 (sum = {0})")]
    InvalidWeights(f64),

    #[error("subsystem dimensions {dims:?} do not factor a {total}-dimensional space")]
    InvalidFactorization { dims: Vec<usize>, total: usize },

    #[error("invalid subsystem selection {0:?}")]
    InvalidSubsystem(Vec<usize>),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("noise schedule has no positive duration")]
    EmptySchedule,

    #[error("noise schedule duration {0} is negative or not finite")]
    InvalidDuration(f64),

    #[error("recurrence round has zero success probability")]
    DegenerateRecurrence,

    #[error("isotropic fidelity {0} <= 1/4 cannot be purified by two-copy recurrence")]
    NonPurifiable(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True when the error signals a broken numerical invariant rather than
    /// bad caller input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch { .. }
                | Error::EntryCount { .. }
                | Error::NotNormalized(_)
                | Error::NotHermitian(_)
                | Error::TraceNotOne(_)
                | Error::NotPositive(_)
                | Error::InvalidFactorization { .. }
                | Error::DegenerateRecurrence
        )
    }
}
