use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero undefined")]
    ValuationOfZero,
    #[error("invalid prime {0}")]
    InvalidPrime(u64),
    #[error("parts must sum to m")]
    PartsSum,
    #[error("expected a positive integer, got {0}")]
    NonPositive(i64),
    #[error("bricks do not fill row")]
    BricksDoNotFillRow,
    #[error("sizes differ: {0} vs {1}")]
    SizesDiffer(u32, u32),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid exponent vector: {0}")]
    InvalidExponentVector(String),
    #[error("method limited to small n (n = {n}, limit {limit})")]
    MethodLimit { n: usize, limit: usize },
    #[error("oracle bound exceeded (n = {n}, limit {limit})")]
    OracleBound { n: usize, limit: usize },
    #[error("no contribution: q = {q} is not a multiple of n = {n}")]
    NoContribution { q: u32, n: usize },
    #[error("partition {0} has a part not divisible by n")]
    IneligiblePartition(String),
    #[error("ratio undefined for the base class")]
    BaseClassRatio,
    #[error("dominance argument applies to prime powers only (n = {0})")]
    NotPrimePower(usize),
    #[error("hypothesis violated: m = {m} is not below p^s = {bound}")]
    LemmaHypothesis { m: u64, bound: u64 },
    #[error("at least two parts are required")]
    TooFewParts,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
}
