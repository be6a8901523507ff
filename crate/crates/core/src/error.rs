use alloc::string::String;
use num_bigint::BigInt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("rows do not span a full-rank lattice")]
    RankDeficient,

    #[error("polynomial must be monic of degree at least 1")]
    NotMonic,
    #[error("polynomial is not squarefree over Q (gcd(f, f') is nonconstant)")]
    NotSquarefree,
    #[error("malformed multiplication table: {0}")]
    MalformedTable(String),
    #[error("table is not commutative: e_{i}*e_{j} != e_{j}*e_{i}")]
    NotCommutative { i: usize, j: usize },
    #[error("table is not associative: (e_{i}*e_{j})*e_{k} != e_{i}*(e_{j}*e_{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("designated unit is not an identity (fails on basis element e_{j})")]
    NoUnit { j: usize },
    #[error("trace form is degenerate (discriminant 0), algebra is not etale")]
    DegenerateTrace,

    #[error("lattice is not contained in the claimed superlattice")]
    NotContained,
    #[error("ring generation escaped the trace dual (non-integral generator)")]
    NotBoundedByDual,

    #[error("submodule is not isotropic (L is not contained in its orthogonal complement)")]
    NotIsotropicInput,
    #[error("enumeration too large: {0}")]
    TooLarge(String),

    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("order has no defining polynomial, per-ideal splitting unavailable")]
    NotMonogenic,
    #[error("idempotent lifting precision {0} exceeds the configured bound")]
    PrecisionOverflow(u32),
    #[error("radical-idealizer iteration exceeded its bound at p = {0}")]
    IterationBound(BigInt),

    #[error("{0} comes from an incomplete factorization")]
    UnresolvedFactor(BigInt),
    #[error("no report covers the prime {0} although p^2 divides the discriminant")]
    IncompleteCover(BigInt),
    #[error("certified closure at p = {0} disagrees with the idealizer oracle")]
    CertificationMismatch(BigInt),
}
