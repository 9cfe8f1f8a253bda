use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("group too large: closure exceeds {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("not a subgroup")]
    NotASubgroup,

    #[error("invalid parameter function: {0}")]
    InvalidParameter(String),

    #[error("parameter not permissible under subgroup")]
    NotPermissible,

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("measure is not invariant under the action")]
    NonInvariantMeasure,

    #[error("invalid statistical model: {0}")]
    InvalidModel(String),

    #[error("incomplete statistic: no unitary connection")]
    IncompleteStatistic,

    #[error("λ not compatible with transitive structure")]
    UnequalLevelSets,

    #[error("degenerate coding")]
    DegenerateCoding,

    #[error("matrix is not unitary (residual {residual:e})")]
    NonUnitary { residual: f64 },

    #[error("matrix is not Hermitian (residual {residual:e})")]
    NonHermitian { residual: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vectors are not orthonormal (residual {residual:e})")]
    NotOrthonormal { residual: f64 },

    #[error("incomplete basis: {found} vectors for dimension {dim}")]
    IncompleteBasis { dim: usize, found: usize },

    #[error("not a unit vector (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("invalid effect: {0}")]
    InvalidEffect(String),

    #[error("powerless test: beta < alpha")]
    PowerlessTest,

    #[error("direction unrecoverable (uninformative effect)")]
    DirectionUnrecoverable,

    #[error("invalid probability: {0}")]
    InvalidProbability(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid operator-valued measure: {0}")]
    InvalidMeasureOperators(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
}
