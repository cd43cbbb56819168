use thiserror::Error;

/// Errors surfaced by encoding, decoding, and enumeration routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("symbol {symbol} out of range for alphabet size {q}")]
    SymbolOutOfRange { symbol: u8, q: u8 },

    #[error("operation out of bounds: {0}")]
    OutOfBounds(String),

    #[error("substitution must change the symbol (position {pos}, symbol {symbol})")]
    IdentitySubstitution { pos: usize, symbol: u8 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("message of {got} bits exceeds capacity of {capacity} bits")]
    CapacityExceeded { got: usize, capacity: usize },

    #[error("work limit exceeded: {0}")]
    WorkLimit(String),

    #[error("modulus search exceeded 2^64 ({0})")]
    ModulusOverflow(String),

    #[error("decode failed: {0}")]
    DecodeFailure(String),

    #[error("no survivor among candidates (channel promise violated?)")]
    NoSurvivor,

    #[error("multiple survivors among candidates: {0}")]
    MultipleSurvivors(usize),

    #[error("Reed-Solomon decode failed: {0}")]
    RsDecodeFailure(String),

    #[error("root length cap exceeded during fixpoint (automaton transcription bug?)")]
    RootCapExceeded,

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
