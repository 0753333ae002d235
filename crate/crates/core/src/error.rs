use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size {0} is not supported (expected 2 or 3)")]
    UnsupportedAlphabet(u8),
    #[error("letter {letter} is outside the alphabet of size {sigma}")]
    LetterOutOfRange { letter: u8, sigma: u8 },
    #[error("operation requires a binary word, got alphabet size {0}")]
    NotBinary(u8),
    #[error("cannot parse word {0:?}")]
    WordParse(String),
    #[error("cannot parse pattern {input:?}: {reason}")]
    PatternParse { input: String, reason: String },
    #[error("pattern {0} is not supported here: {1}")]
    UnsupportedPattern(String, String),
    #[error("invalid morphism: {0}")]
    Morphism(String),
    #[error("unknown catalog morphism {0:?}")]
    UnknownMorphism(String),
    #[error("morphism is not prolongable on letter {0}")]
    NotProlongable(u8),
    #[error("morphism is not uniform")]
    NotUniform,
    #[error("morphism {0} is not cube-free")]
    NotCubeFree(String),
    #[error("morphism {name} is not {k}-synchronizing")]
    NotSynchronizing { name: String, k: usize },
    #[error("pattern {0} contains neither xxyxyy nor xyyxyx; the bounded reduction does not apply")]
    ReductionNotApplicable(String),
    #[error("factor set did not stabilize within {0} iterations")]
    NoStabilization(usize),
    #[error("invalid site selection: {0}")]
    InvalidSelection(String),
    #[error("{sites} insertion sites exceed the exhaustive limit of {limit}")]
    TooManySites { sites: usize, limit: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),
    #[error("power iteration did not converge after {0} iterations")]
    NotConverged(usize),
    #[error("catalog version mismatch: manifest has {found}, this build has {expected}")]
    CatalogMismatch { expected: String, found: String },
}

pub type Result<T> = std::result::Result<T, Error>;
