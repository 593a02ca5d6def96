use thiserror::Error;

/// Everything that can go wrong inside `torsion-core`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field size q = {0} is not a prime power")]
    InvalidFieldSize(u64),
    #[error("field size q = {0} is a proper prime power; only prime q is supported")]
    PrimePowerUnsupported(u64),
    #[error("norm cap must be at least 1")]
    ZeroNorm,
    #[error("ideals live in different rings")]
    RingMismatch,
    #[error("{0} is not a valid nonzero element of the ring")]
    InvalidGenerator(String),
    #[error("{0} is not prime in the ring")]
    NotPrime(String),
    #[error("enumeration needs {required} candidates but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("residue ring of size {size} exceeds the table limit {limit}")]
    ResidueRingTooLarge { size: String, limit: u64 },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("rank r = {r} is not allowed here (need r >= {min})")]
    RankTooSmall { r: usize, min: usize },
    #[error("the unit ideal is not allowed here")]
    UnitIdeal,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("matrix is not invertible over the residue ring")]
    NotInvertible,
    #[error("vector has {got} coordinates but the rank is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subgroup containment violated: {0}")]
    Containment(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
