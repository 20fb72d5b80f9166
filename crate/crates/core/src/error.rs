use thiserror::Error;

/// Failures raised by the exact engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{value} is not representable with delta0 = {delta0}")]
    NonRepresentable { value: String, delta0: i64 },
    #[error("pole at q = 1 for {0}")]
    Pole(String),
    #[error("vector {0} is not in the positive cone")]
    NotPositive(String),
    #[error("only rank {expected} is supported here, got rank {got}")]
    RankUnsupported { expected: usize, got: usize },
    #[error("cutoff mismatch: {0} vs {1}")]
    CutoffMismatch(u32, u32),
    #[error("series must have base 0 and constant term 1")]
    NotUnital,
    #[error("series must have base 0 and constant term 0")]
    NotNilpotent,
    #[error("interval {a} does not match the required value {expected}")]
    BadInterval { a: String, expected: String },
    #[error("rewrite not applicable: {0}")]
    NotApplicable(String),
    #[error("wall {n0} level {level} is not an integral combination of dilogarithms")]
    NonIntegral { n0: String, level: u32 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("invalid fixed data: {0}")]
    InvalidFixedData(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("residue {0} is outside the covered range")]
    BadResidue(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown name: {0}")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;
