use thiserror::Error;

/// Errors raised by the topology and dynamics pipelines.
///
/// Messages are stable: the CLI prints them verbatim and tests match on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid resolution {0}: must be a power of two and at least 8")]
    InvalidResolution(usize),

    #[error("empty set has no Hausdorff distance")]
    EmptyHausdorff,

    #[error("non-primitive holonomy basis")]
    NonPrimitiveHolonomy,

    #[error("window exhausted")]
    WindowExhausted,

    #[error("lift window exceeded kMax ({k_max}): {detail}")]
    WindowLimit { k_max: usize, detail: String },

    #[error("homotopy vector must be primitive")]
    NonPrimitiveVector,

    #[error("strip height exhausted")]
    StripExhausted,

    #[error("input not essential in strip")]
    NotEssential,

    #[error("sequence not ≺-monotone")]
    NotMonotone,

    #[error("unbounded orbit: rotation number likely nonzero")]
    UnboundedOrbit,

    #[error("limit not reached")]
    LimitNotReached,

    #[error("rotation set defined only in the identity class")]
    NotIdentityClass,

    #[error("homotopy class not preserved")]
    ClassNotPreserved,

    #[error("component tracking ambiguous: refine grid")]
    AmbiguousTracking,

    #[error("gap budget infeasible")]
    GapBudgetInfeasible,

    #[error("census contradiction: {0}")]
    CensusContradiction(String),

    #[error("theorem violation: inputs are not a minimal set at this resolution ({0})")]
    TheoremViolation(String),

    #[error("decomposition not disjoint")]
    DecompositionNotDisjoint,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("raster: {0}")]
    Raster(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
