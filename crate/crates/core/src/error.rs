use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("continued fraction [{0}] hits a zero denominator")]
    ZeroDenominator(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0} is not a positive 2-bridge knot")]
    NotPositiveKnot(String),

    #[error("expected an integer result, got {0}")]
    NonIntegerResult(String),

    #[error("v3 vanishes for [{0}]")]
    VanishingV3(String),

    #[error("division by zero: right-hand side of the obstruction formula is 0")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("checkpoint rejected: {0}")]
    CheckpointCorrupt(String),

    #[error("sweep interrupted after the {0}-crossing band")]
    Interrupted(u32),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
