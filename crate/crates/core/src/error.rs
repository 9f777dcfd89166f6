use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator divisible by {prime}")]
    DenominatorDivisibleByP { prime: u64 },
    #[error("series factor (0,0) is not invertible as a geometric series")]
    ConstantFactor,
    #[error("empty word")]
    EmptyWord,
    #[error("invalid partition ({0},{1})")]
    InvalidPartition(u32, u32),
    #[error("polynomial is not symmetric in t,u")]
    NotSymmetric,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error(
        "not a non-negative Schur combination: coefficient {coefficient} at t^{t_exp}*u^{u_exp}"
    )]
    NotSchurPositive {
        t_exp: u32,
        u_exp: u32,
        coefficient: String,
    },
    #[error("shape ({0},{1}) is not catalogued")]
    ShapeNotCatalogued(u32, u32),
    #[error("trace polynomials of mixed bidegree")]
    MixedBidegree,
    #[error("syntax error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("corpus record {id}: {msg}")]
    Corpus { id: String, msg: String },
    #[error("ranks disagree across primes: {rank1} vs {rank2}")]
    ModularDisagreement { rank1: usize, rank2: usize },
    #[error("{0}")]
    Invalid(String),
}
