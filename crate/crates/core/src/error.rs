use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty facet")]
    EmptyFacet,
    #[error("duplicate vertex `{0}` inside one face")]
    DuplicateVertex(String),
    #[error("malformed vertex label `{0}`")]
    BadLabel(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("face {0} is not in the complex")]
    UnknownFace(String),
    #[error("complex is empty")]
    EmptyComplex,
    #[error("invalid dimension {0}")]
    BadDimension(i64),
    #[error("not a subcomplex: face {0} is missing from the ambient complex")]
    NotSubcomplex(String),
    #[error("{0} is not a chain of strictly nested faces")]
    NotAChain(String),
    #[error("empty chain")]
    EmptyChain,
    #[error("{0} is not a top-dimensional facet")]
    NotAFacet(String),
    #[error("face {0} is still present; expected only its proper faces")]
    FacePresent(String),
    #[error("proper face {0} of the removed facet is missing")]
    MissingBoundary(String),
    #[error("fresh label `{0}` collides with an existing vertex")]
    LabelCollision(String),
    #[error("predicted size {predicted} facets exceeds the cap of {cap}")]
    SizeCap { predicted: u128, cap: u128 },
    #[error("complex is disconnected")]
    Disconnected,
    #[error("complex needs at least two vertices")]
    TooFewVertices,
    #[error("cover member `{0}` is empty")]
    EmptyMember(String),
    #[error("unknown cover index `{0}`")]
    UnknownIndex(String),
    #[error("invalid carrier map: {0}")]
    BadCarrier(String),
    #[error("modulus {0} is not a prime")]
    NotPrime(u64),
    #[error("invalid input: {0}")]
    Input(String),
}
