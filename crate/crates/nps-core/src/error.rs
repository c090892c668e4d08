use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("universe width {width} exceeds enumeration cap {cap}")]
    CapExceeded { width: usize, cap: usize },
    #[error("mask width {got} does not match universe width {expected}")]
    WidthMismatch { expected: usize, got: usize },
    #[error("subset is not nested: S must be contained in T")]
    NotNested,
    #[error("embedding is not injective: source ids {a} and {b} both map to target id {image}")]
    EmbeddingNotInjective { a: usize, b: usize, image: usize },
    #[error("embedding maps to target id {id}, outside universe of width {width}")]
    EmbeddingOutOfRange { id: usize, width: usize },
    #[error("reductions do not compose: first targets `{left}`, second starts from `{right}`")]
    SpecMismatch { left: String, right: String },
    #[error("payload has unexpected type for problem `{problem}`")]
    PayloadType { problem: String },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid universe: {0}")]
    InvalidUniverse(String),
    #[error("model transform precondition violated: {0}")]
    ModelPrecondition(String),
}
