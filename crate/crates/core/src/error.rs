use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero polynomial has no well-defined root set")]
    ZeroPolynomial,
    #[error("cannot take a root of the negative number {0}")]
    NegativeRadicand(BigInt),
    #[error("root index must be at least 1")]
    ZeroRootIndex,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("dimension mismatch: expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("all coordinates are zero")]
    ZeroPoint,
    #[error("form is not homogeneous: term of degree {found} in a form of degree {expected}")]
    NotHomogeneous { expected: u32, found: u32 },
    #[error("not a morphism: resultant vanishes")]
    NotAMorphism,
    #[error("degree hypothesis violated: degree {0} < 2")]
    DegreeTooSmall(usize),
    #[error("point {0} lies in the base locus")]
    BaseLocus(String),
    #[error("operation requires a map of the projective line")]
    NotP1,
    #[error("target radius must be positive, got {0}")]
    InvalidRadius(f64),
    #[error("iteration budget exceeded: coordinates reached {bits} bits (limit {limit})")]
    IterationBudget { bits: u64, limit: u64 },
    #[error("composition budget exceeded: coefficients reached {bits} bits (limit {limit})")]
    CompositionBudget { bits: u64, limit: u64 },
    #[error("candidate set too large: about {projected} points (limit {limit})")]
    CandidateSetTooLarge { projected: u128, limit: u128 },
    #[error("height bound must be at least 1")]
    InvalidBound,
    #[error("malformed chain at index {index}: f(x_{{n+1}}) != x_n")]
    MalformedChain { index: usize },
    #[error("horizon {horizon} is below the required minimum {required}")]
    HorizonTooShort { horizon: usize, required: usize },
    #[error("chain lemma violated: {0}")]
    LemmaViolation(String),
    #[error("singular curve: discriminant is zero")]
    SingularCurve,
    #[error("point is not on the curve")]
    OffCurve,
    #[error("translation point is torsion; the backward chain would collapse")]
    TorsionTranslation,
    #[error("unsupported system: {0}")]
    UnsupportedSystem(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}
