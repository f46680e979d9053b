use thiserror::Error;

/// Every failure the toolkit can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("modulus has degree {got}, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("modulus is not monic")]
    NotMonic,
    #[error("coefficient {0} is out of range")]
    InvalidCoefficient(u64),
    #[error("field of size {0} exceeds the supported range (< 2^20)")]
    FieldTooLarge(u64),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("no element of order {0}")]
    NoSuchOrder(u64),
    #[error("conjugation needs an even extension degree (k = {0})")]
    ConjUndefined(u32),
    #[error("malformed input: {0}")]
    Parse(String),

    #[error("not a partition: {0}")]
    InvalidPartition(String),
    #[error("{0} and {1} share a row or a column")]
    NotExchangeable(usize, usize),
    #[error("parameter is degenerate for this shape: {0}")]
    DegenerateParameter(String),

    #[error("generator index {index} outside 1..{max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("shape is self-conjugate")]
    SelfConjugateShape,
    #[error("quotient is not scalar on generator {0}")]
    NotScalar(usize),
    #[error("representations disagree on commutator word {0}")]
    NotAgreeingOnCommutators(String),

    #[error("at least {needed} strands required, got {got}")]
    TooFewStrands { needed: usize, got: usize },
    #[error("word length {0} is odd")]
    OddLength(usize),

    #[error("inadmissible parameter: {0}")]
    InadmissibleParameter(String),
    #[error("hook {0} is not [n-1,1]")]
    HookNotLambdaZero(String),
    #[error("unsupported group parameters: {0}")]
    UnsupportedFamily(String),
    #[error("orthogonal geometry in characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("form is degenerate")]
    Degenerate,
    #[error("generators are not absolutely irreducible (span {span} < {full})")]
    NotIrreducible { span: usize, full: usize },
    #[error("norm equation has no solution for {0}")]
    NormEquationFailure(String),
    #[error("no invertible matrix found after {0} attempts")]
    MaxRandomRetriesExceeded(usize),
    #[error("{0}")]
    Descent(String),

    #[error("matrix is singular")]
    Singular,
    #[error("generator {0} is singular")]
    SingularGenerator(usize),
    #[error("closure exceeded the cap of {0} elements")]
    CapExceeded(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
