use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero polynomial has no root data")]
    ZeroPolynomial,
    #[error("factorization degree bound exceeded (degree {0} > {1})")]
    DegreeBound(usize, usize),
    #[error("polynomial must be monic of positive degree")]
    NotMonic,
    #[error("algebra mismatch: d = {0} vs d = {1}")]
    AlgebraMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("degree {q} out of range for a subalgebra of dimension {dim}")]
    DegreeOutOfRange { q: usize, dim: usize },
    #[error("invalid representation: {0}")]
    InvalidRep(String),
    #[error("not supported on Z·0: {0}")]
    NotUnipotent(String),
    #[error("outside exp domain: valuation {got} < {need}")]
    OutsideExpDomain { got: u32, need: u32 },
    #[error("outside log domain: {0}")]
    OutsideLogDomain(String),
    #[error("p-adic mismatch: {0}")]
    PadicMismatch(String),
    #[error("not p-integral: {0}")]
    NotIntegral(String),
    #[error("spectrum not contained in Z")]
    NonIntegerSpectrum,
    #[error("series does not converge: {0}")]
    Divergent(String),
    #[error("invalid p-adic configuration: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
