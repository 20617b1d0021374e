use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be an odd prime (got {0}, which is not prime)")]
    NonPrimeP(u64),
    #[error("p must be an odd prime (got {0})")]
    EvenP(u64),
    #[error("field order {p}^{e} exceeds the configured cap of {cap} elements")]
    CapExceeded { p: u64, e: u32, cap: u64 },
    #[error("{r} does not divide {e}")]
    NotADivisor { r: u32, e: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("field order {order} is not congruent to 1 modulo 2d = {}", 2 * .d)]
    DegenerateModulus { order: u64, d: u64 },
    #[error("connection-set residue classes must be nonempty and lie in [0, d)")]
    EmptyJ,
    #[error("adjacency query with u = v = {0}")]
    SelfLoopQuery(u32),
    #[error("the given vertex set is not a clique")]
    NotAClique,
    #[error("exact clique search needs {size} vertices but the budget is {budget}")]
    ExactBudgetExceeded { size: usize, budget: usize },
    #[error("multiplicative characters are not defined at 0")]
    ZeroArgument,
    #[error("theta + a vanished for a = {0}")]
    ZeroEncountered(u32),
    #[error("character of order {0} is trivial")]
    TrivialCharacter(u64),
    #[error("character order {d} does not divide {order} - 1")]
    InvalidCharacterOrder { d: u64, order: u64 },
    #[error("no theta generates the full field over the base subfield")]
    NoValidTheta,
    #[error("degree {m} does not define a subfield of GF(p^{e})")]
    NotASubfield { m: u32, e: u32 },
    #[error("d must be even and at least 4 (got {0})")]
    OddD(u64),
    #[error("invalid case: {0}")]
    InvalidCase(String),
    #[error("no r satisfies d | (q-1)/(p^r-1) for q = {q}, d = {d}")]
    NoQualifyingR { q: u64, d: u64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
