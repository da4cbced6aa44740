use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input: no crossing or unknot tokens")]
    EmptyInput,
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("inconsistent arcs: {0}")]
    InconsistentArcs(String),
    #[error("orientation conflict: {0}")]
    OrientationConflict(String),
    #[error("braid generator {generator} out of range for {strands} strand(s)")]
    GeneratorOutOfRange { generator: i32, strands: u32 },
    #[error("empty braid word needs exactly one strand, got {0}")]
    EmptyWord(u32),
    #[error("diagram is disconnected")]
    DisconnectedDiagram,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("complexity budget exceeded: {0}")]
    ComplexityBudgetExceeded(String),
    #[error("table is already normalized")]
    DoubleNormalization,
    #[error("graded Euler characteristic {0} is not divisible by q + q^-1")]
    NondivisibleEulerCharacteristic(String),
}
