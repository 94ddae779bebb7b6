use thiserror::Error;

/// Parse failure with a byte position into the source text, reported as
/// line/column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            line: 1,
            column: position + 1,
            message: message.into(),
        }
    }

    /// Recompute line/column from the byte offset into `text`.
    pub fn located_in(mut self, text: &str) -> Self {
        let upto = &text[..self.position.min(text.len())];
        self.line = upto.matches('\n').count() + 1;
        self.column = upto.rsplit('\n').next().map_or(0, |l| l.len()) + 1;
        self
    }
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("characteristic {0} does not fit the supported range 2 <= p < 2^31")]
    CharacteristicOutOfRange(u64),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("p^e does not fit a monomial exponent (p={p}, e={e})")]
    LevelOverflow { p: u64, e: u32 },

    #[error("f does not lie in the radical of J (Rabinowitsch witness ideal is proper), so nu is unbounded")]
    NotInRadical,

    #[error("f must be nonzero and vanish at the origin")]
    NotLocalAtOrigin,

    #[error("f must be nonzero")]
    ZeroPolynomial,

    #[error("parameter {0} must be non-negative")]
    NegativeParameter(String),

    #[error("J is not contained in I")]
    ContainmentViolated,

    #[error(
        "term budget exceeded: an intermediate polynomial reached {terms} terms (budget {budget})"
    )]
    BudgetExceeded { terms: u64, budget: u64 },

    #[error("test-ideal chain did not stabilize by e={max_e}; partial chain: {chain}")]
    NonStabilization { max_e: u32, chain: String },

    #[error("exponent overflow: {0}")]
    ExponentOverflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
