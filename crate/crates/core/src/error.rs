use thiserror::Error;

/// Everything that can go wrong when building or manipulating maps, objects and words.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("index {index} out of range for {what}")]
    IndexOutOfRange { what: &'static str, index: usize },

    #[error("image {image} at position {position} exceeds codomain size {cod_size}")]
    ImageOutOfRange {
        position: usize,
        image: usize,
        cod_size: isize,
    },

    #[error("images are not weakly increasing at position {0}")]
    NotMonotone(usize),

    #[error("map {0} is not an epimorphism")]
    NotEpi(String),

    #[error("map {0} is not a monomorphism")]
    NotMono(String),

    #[error("map {0} is not active")]
    NotActive(String),

    #[error("the empty ordinal is not allowed here")]
    Augmented,

    #[error("square does not commute: {0}")]
    NotCommuting(String),

    #[error("objects do not match: {0}")]
    ObjectMismatch(String),

    #[error("invalid face: {0}")]
    InvalidFace(String),

    #[error("letter {letter} cannot be applied at position {position}: {reason}")]
    InvalidStep {
        position: usize,
        letter: String,
        reason: String,
    },

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("not an instance of the rule: {0}")]
    NotAnInstance(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("rewriting failed: {0}")]
    Rewrite(String),

    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
