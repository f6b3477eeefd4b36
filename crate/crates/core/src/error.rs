use alloc::string::String;

/// Errors raised by the word, morphism and solver layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("alphabet symbols must be nonempty and match [A-Za-z][A-Za-z0-9_]*, got `{0}`")]
    InvalidSymbol(String),
    #[error("duplicate alphabet symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("letter index {index} is outside an alphabet of size {size}")]
    LetterOutOfRange { index: u32, size: usize },
    #[error("free reduction is only defined in group mode")]
    MonoidReduction,
    #[error("inverse letters are not allowed in monoid mode")]
    InverseInMonoid,
    #[error("word is not freely reduced at position {position}")]
    NotReduced { position: usize },
    #[error("mode mismatch: expected {expected}, found {found}")]
    ModeMismatch { expected: &'static str, found: &'static str },
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(&'static str),
    #[error("morphism has {found} images but its domain has {expected} generators")]
    ImageCount { expected: usize, found: usize },
    #[error("image of generator `{0}` is empty")]
    EmptyImage(String),
    #[error("morphism is not marked: images of `{0}` and `{1}` start with the same letter")]
    NotMarked(String, String),
    #[error("morphism is not an immersion: images of `{0}` and `{1}` start with the same letter")]
    NotImmersion(String, String),
    #[error("the three immersion characterizations disagree ({marked}, {folded}, {length})")]
    CharacterizationDisagreement { marked: bool, folded: bool, length: bool },
    #[error("graph is not folded in both directions")]
    NotFolded,
    #[error("core graph is not a bouquet at its central vertex")]
    NotBouquet,
    #[error("petal does not project onto a closed petal path")]
    PetalProjection,
    #[error("a set instance needs at least two morphisms, got {0}")]
    TooFewMorphisms(usize),
    #[error("reduction trail exceeded the iteration bound {0}")]
    BoundExceeded(u128),
    #[error("{0}")]
    Invalid(&'static str),
}
