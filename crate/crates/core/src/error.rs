use thiserror::Error;

use crate::divisor_algebra::{BoundaryIndex, ModuliSig};

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid moduli signature (g={g}, n={n}): {reason}")]
    InvalidSignature { g: i64, n: i64, reason: &'static str },

    #[error("invalid boundary index i={i}, S={set:?} for (g={g}, n={n})")]
    InvalidIndex {
        g: u32,
        n: u32,
        i: i64,
        set: Vec<u32>,
    },

    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: ModuliSig, right: ModuliSig },

    #[error("curve class has no recorded value for {0} and does not assume unlisted boundary values vanish")]
    UnknownBoundaryValue(BoundaryIndex),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parity error: {what} = {value} is odd")]
    ParityError { what: &'static str, value: i64 },

    #[error("pencil does not declare condition (**)")]
    StarStarRequired,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("lattice mismatch: {left} vs {right}")]
    LatticeMismatch { left: String, right: String },

    #[error("line enumeration is only supported for r <= 8 (got r={0})")]
    UnsupportedRank(usize),

    #[error("edge ({0}, {1}) not found")]
    EdgeNotFound(u32, u32),

    #[error("dual graph is disconnected")]
    Disconnected,

    #[error("dual graph too large for smoothing closure ({edges} edges, limit {limit})")]
    TooLarge { edges: usize, limit: usize },

    #[error("invalid stratum: {0}")]
    InvalidStratum(String),

    #[error("malformed scenario: {0}")]
    MalformedScenario(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
