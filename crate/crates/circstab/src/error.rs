use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("modulus {0} out of range (1..=64)")]
    Modulus(usize),
    #[error("{0} is not a unit modulo {1}")]
    NotAUnit(usize, usize),
    #[error("{l1} and {l2} are not coprime; the CRT splitting needs gcd(l1, l2) = 1")]
    NotCoprime { l1: usize, l2: usize },
    #[error("search exceeded node budget of {0}")]
    Budget(u64),
    #[error("permutation does not preserve the partition")]
    NotInvariant,
    #[error("partition is already a single block")]
    NoThickerSystem,
    #[error("group is not transitive")]
    Intransitive,
    #[error("permutation has no two-fold partner")]
    NoPartner,
    #[error("graph is not reduced")]
    NotReduced,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("closure exceeded {0} states")]
    ClosureCap(usize),
    #[error("invalid subgroup data: {0}")]
    Subgroup(String),
    #[error("counterexample: {0}")]
    Falsified(String),
}

pub type Result<T> = std::result::Result<T, Error>;
