use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be a positive integer (got {0})")]
    InvalidModulus(i64),
    #[error("connection-set entry {0} reduces to 0 mod {1}, which would be a loop")]
    LoopElement(i64, u64),
    #[error("operation requires a connected graph")]
    Disconnected,
    #[error("expected valency {expected}, got {got}")]
    WrongValency { expected: u32, got: u32 },
    #[error("element {0} is not in the connection set")]
    NotInSet(u64),
    #[error("element {element} has even order {order}; an odd order is required")]
    EvenOrder { element: u64, order: u64 },
    #[error("permutation does not fix the identity vertex")]
    MovesIdentity,
    #[error("seed vertices lie in different orbits of the group")]
    SeedNotInOneOrbit,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("family parameters collapse the connection set: {0}")]
    DegenerateFamily(String),
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("automorphism search exceeded the per-graph time cap")]
    Timeout,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
