//! Error types for the presentation kernel, the analysis layer, the catalog
//! and the Beauville toolkit.

use thiserror::Error;

/// Errors raised while constructing presentations or collecting words.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PcError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("rank must be at least 1")]
    EmptyPresentation,
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error(
        "weight violation in {rule}: tail letter `{offender}` must come strictly after `{limit}`"
    )]
    WeightViolation {
        rule: String,
        offender: String,
        limit: String,
    },
    #[error("inconsistent presentation: closure reached {reached} of {expected} normal forms")]
    InconsistentPresentation { reached: usize, expected: usize },
    #[error("inconsistent presentation: associativity fails at overlap {overlap}")]
    OverlapViolation { overlap: String },
    #[error("collection exceeded its step budget of {0}")]
    CollectionBudget(u64),
    #[error("group order {order} exceeds the build limit {limit}")]
    GroupTooLarge { order: u128, limit: u64 },
}

/// Errors raised by the structural-analysis operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("the identity element has no socle generator")]
    IdentityInput,
    #[error("quotient generator `{0}` is not central")]
    NonCentralGenerator(String),
    #[error("Frattini quotient has rank {rank}, not 2")]
    NotTwoGeneratedGroup { rank: usize },
    #[error("operation requires a group of prime-power order, got order {0}")]
    MixedPrimeGroup(u64),
    #[error("2 is not an odd prime")]
    EvenPrime,
    #[error(transparent)]
    Pc(#[from] PcError),
}

/// Errors raised while building catalog families.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("bad parameters for family {family}: {reason}")]
    BadParameters { family: String, reason: String },
    #[error("family {family} has no built-in parameter for p = {p}; pass r explicitly")]
    UnsupportedPrimeForFamily { family: String, p: u64 },
    #[error(transparent)]
    Pc(#[from] PcError),
}

/// Errors raised by Σ-set oracles and structure operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BeauvilleError {
    #[error("group order {order} exceeds the brute-force oracle bound {bound}")]
    GroupTooLargeForOracle { order: u64, bound: u64 },
    #[error("group order {order} exceeds the complete-search bound {bound}")]
    BoundExceeded { order: u64, bound: u64 },
    #[error("component orders {0} and {1} are not coprime")]
    CoprimalityViolation(u64, u64),
    #[error("structure contains an identity component")]
    DegenerateStructure,
    #[error("cyclic subgroup of `{0}` meets the kernel; no faithfully represented triple")]
    NotFaithful(String),
    #[error("lift verified on the quotient but direct verification failed: {0}")]
    LiftContradiction(String),
    #[error("product structure failed verification: {0}")]
    ProductVerificationFailed(String),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Pc(#[from] PcError),
}
