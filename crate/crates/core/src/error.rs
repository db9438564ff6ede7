use thiserror::Error;

use crate::fp_algebra::Ideal;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("exponent overflow: {0}")]
    Overflow(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("zero ideal is not allowed here")]
    ZeroIdeal,

    #[error("generator `{0}` is not a monomial")]
    NotMonomial(String),

    #[error("ideal is not contained in the maximal ideal at the chosen point")]
    NotInMaximalIdeal,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("chain not ascending between e={e} and e={next}")]
    ChainNotAscending { e: u32, next: u32 },

    #[error("chain did not stabilize by e_max={e_max} at t={t}")]
    Unstabilized {
        t: String,
        e_max: u32,
        partial_chain: Vec<Ideal>,
    },

    #[error("chain result {computed} disagrees with the monomial oracle {oracle} at t={t}")]
    OracleMismatch {
        t: String,
        computed: String,
        oracle: String,
    },

    #[error("inconsistent result: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn is_unstabilized(&self) -> bool {
        matches!(self, Error::Unstabilized { .. })
    }
}
