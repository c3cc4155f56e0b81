use thiserror::Error;

/// Failure modes shared by every module.
///
/// Variants that name a degeneracy (`CorankJump`, `InadmissiblePencil`, ...)
/// are recoverable: the caller is expected to resample its random input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("linear system has no solution")]
    InconsistentSystem,

    #[error("unsupported genus {0}; only 4 and 5 are supported")]
    UnsupportedGenus(usize),
    #[error("prime {0} is not supported")]
    UnsupportedPrime(u64),
    #[error("curve generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },
    #[error("found only {found} of {wanted} curve points within the slice budget")]
    InsufficientPoints { found: usize, wanted: usize },
    #[error("Jacobian rank {rank} below {expected} at point")]
    SingularPoint { rank: usize, expected: usize },

    #[error("point panel does not separate degree {degree}: rank {rank}, expected {expected}")]
    RankDeficiency {
        degree: usize,
        rank: usize,
        expected: usize,
    },
    #[error("degree {0} is outside the supported range")]
    UnsupportedDegree(usize),

    #[error("pencil is inadmissible: V.R2 has codimension {codim} in R3")]
    InadmissiblePencil { codim: usize },
    #[error("vector w lies in the pencil")]
    LiftInPencil,

    #[error("net has rank {0}, expected 3")]
    RankDeficientW(usize),
    #[error("plane-curve fit kernel has dimension {0}")]
    AmbiguousFit(usize),
    #[error("net has a base point on the curve")]
    NetHasBasePoint,
    #[error("point lies in the vertex of the net")]
    InVertex,
    #[error("point projects onto the plane curve")]
    OnGammaFiber,
    #[error("cup-product Gram has corank {0}, expected 2")]
    CorankJump(usize),
    #[error("vertex vector must be nonzero and annihilated by the net")]
    NotVertexVector,
    #[error("net lies in the degeneracy divisor")]
    NetInD,

    #[error("reconstruction left a {0}-dimensional solution space")]
    UnderdeterminedReconstruction(usize),
    #[error("reconstruction system has only the trivial solution")]
    InconsistentReconstruction,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("res-map kernel has dimension {0}, expected 1")]
    NonGenericD(usize),

    #[error("tangent line meets the vertex at this point")]
    SigmaPoint,
    #[error("restricted quartic has a monomial of degree {0} in the vertex-normal coordinate")]
    SplittingViolation(usize),
    #[error("fiber lies over a singular point of the plane curve")]
    NodeFiber,
    #[error("coordinates are not generic for node counting")]
    NonGenericCoordinates,

    #[error("degeneracy budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
