use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("Q(sqrt(-{q})) has class number {h}; only class number one is supported without the override")]
    ClassNumberUnsupported { q: u64, h: u64 },
    #[error("{l} does not split in {field}")]
    NotSplit { l: u64, field: String },
    #[error("no principal prime of norm {p} in {field}")]
    NonPrincipal { p: u64, field: String },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("p = {p} divides the discriminant {disc} of {field}")]
    PRamified { p: u64, disc: i64, field: String },
    #[error("local verdict undecided for d = {d} at {place} (depth cap {depth})")]
    UndecidedLocalVerdict { d: String, place: String, depth: u32 },
    #[error("torsion bound inconclusive: gcd of reduction counts is {gcd}")]
    InconclusiveBound { gcd: u64 },
    #[error("point has order two, doubling formula undefined")]
    TwoTorsion,
    #[error("point does not lie on the curve it is used with")]
    DomainMismatch,
    #[error("outside the scope of the classification: {0}")]
    OutOfTheoremScope(String),
}
