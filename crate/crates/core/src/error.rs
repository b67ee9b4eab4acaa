use thiserror::Error;

/// Errors raised by the algebra layer and the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("modulus {0} exceeds 2^31 - 1")]
    ModulusTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableCount { expected: usize, found: usize },
    #[error("exponent overflow in term product")]
    ExponentOverflow,
    #[error("term does not divide")]
    NotDivisible,
    #[error("empty input system")]
    EmptyInput,
    #[error("input polynomial {0} is zero")]
    ZeroInput(usize),
    #[error("S-pair of a zero polynomial")]
    ZeroSPair,
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("instance with seed {seed} failed: {reason}")]
    Instance { seed: u64, reason: String },
    #[error("instance with seed {seed}: {first} and {second} disagree on the reduced basis")]
    Disagreement { seed: u64, first: String, second: String },
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
